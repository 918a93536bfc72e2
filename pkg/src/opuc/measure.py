"""Probability measures on the unit circle, their moments, and the
Carathéodory / Schur function correspondences."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AliasingError, NotPositiveDefinite
from .poly import PowerSeries, as_poly

DEFAULT_GRID = 1024
NORMALIZATION_TOL = 1e-10
PSD_SLACK = 1e-9


def grid_angles(grid_size: int) -> np.ndarray:
    return 2 * np.pi * np.arange(grid_size) / grid_size


@dataclass(frozen=True)
class CircleMeasure:
    """AC weight sampled on a uniform angular grid plus explicit atoms.

    ``ac_weight[k]`` is the density ``w(2 pi k / M)`` against ``d theta / 2 pi``;
    ``point_masses`` is a tuple of ``(angle, mass)`` pairs.
    """

    grid_size: int
    ac_weight: np.ndarray
    point_masses: tuple = field(default=())

    def __post_init__(self):
        if self.grid_size <= 0:
            raise ValueError("grid_size must be positive")
        w = np.asarray(self.ac_weight, dtype=float)
        if w.shape != (self.grid_size,):
            raise ValueError(f"ac_weight must have length {self.grid_size}")
        if np.any(w < 0):
            raise ValueError("ac_weight must be nonnegative")
        w = w.copy()
        w.setflags(write=False)
        atoms = tuple((float(t) % (2 * np.pi), float(m)) for t, m in self.point_masses)
        if any(m <= 0 for _, m in atoms):
            raise ValueError("point masses must be strictly positive")
        angles = sorted(t for t, _ in atoms)
        if any(b - a < 1e-14 for a, b in zip(angles, angles[1:])):
            raise ValueError("point-mass angles must be pairwise distinct")
        object.__setattr__(self, "ac_weight", w)
        object.__setattr__(self, "point_masses", atoms)

    @classmethod
    def uniform(cls, grid_size: int = DEFAULT_GRID) -> "CircleMeasure":
        return cls(grid_size, np.ones(grid_size))

    @classmethod
    def point_mass(cls, theta: float, grid_size: int = DEFAULT_GRID) -> "CircleMeasure":
        return cls(grid_size, np.zeros(grid_size), ((theta, 1.0),))

    @classmethod
    def from_weight(cls, w, grid_size: int = DEFAULT_GRID, atoms=(), normalize=True):
        """Sample a callable weight ``w(theta)`` on the grid."""
        mu = cls(grid_size, np.asarray(w(grid_angles(grid_size)), dtype=float), atoms)
        return mu.normalized() if normalize else mu

    @property
    def angles(self) -> np.ndarray:
        return grid_angles(self.grid_size)

    @property
    def ac_mass(self) -> float:
        return float(np.mean(self.ac_weight))

    @property
    def singular_mass(self) -> float:
        return float(sum(m for _, m in self.point_masses))

    @property
    def total_mass(self) -> float:
        return self.ac_mass + self.singular_mass

    def normalized(self) -> "CircleMeasure":
        s = self.total_mass
        if s <= 0:
            raise ValueError("measure has zero mass")
        return CircleMeasure(
            self.grid_size, self.ac_weight / s, tuple((t, m / s) for t, m in self.point_masses)
        )

    def integrate(self, values_on_grid, atom_values=None) -> complex:
        """``int g d mu`` given ``g`` on the grid and at the atoms."""
        total = np.mean(self.ac_weight * values_on_grid)
        if self.point_masses:
            total = total + np.dot([m for _, m in self.point_masses], atom_values)
        return complex(total)

    def integrate_function(self, g) -> complex:
        atom_values = [g(t) for t, _ in self.point_masses]
        return self.integrate(g(self.angles), atom_values)

    def to_json(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "ac_weight": [float(x) for x in self.ac_weight],
            "point_masses": [{"theta": t, "mass": m} for t, m in self.point_masses],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CircleMeasure":
        atoms = tuple((a["theta"], a["mass"]) for a in data.get("point_masses", []))
        return cls(int(data["grid_size"]), np.asarray(data["ac_weight"], dtype=float), atoms)


@dataclass(frozen=True)
class MomentSeq:
    """Moments ``c_0 .. c_N`` with ``c_0 = 1``; ``c_{-n} = conj(c_n)``."""

    c: np.ndarray

    def __post_init__(self):
        c = as_poly(self.c)
        if abs(c[0] - 1) > NORMALIZATION_TOL:
            raise ValueError(f"c_0 must be 1, got {c[0]}")
        c[0] = 1.0
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def N(self) -> int:
        return len(self.c) - 1

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.N:
            raise IndexError(f"moment index {n} outside available range +-{self.N}")
        return self.c[n] if n >= 0 else np.conj(self.c[-n])

    def toeplitz(self, n: int) -> np.ndarray:
        """The ``(n+1) x (n+1)`` matrix ``{c_{k-l}}``."""
        if n > self.N:
            raise IndexError(f"need moments through {n}, have {self.N}")
        k = np.arange(n + 1)
        d = k[:, None] - k[None, :]
        full = np.concatenate([np.conj(self.c[n:0:-1]), self.c[: n + 1]])
        return full[d + n]

    def is_positive_semidefinite(self, n: int | None = None, slack: float = PSD_SLACK) -> bool:
        n = self.N if n is None else n
        return bool(np.linalg.eigvalsh(self.toeplitz(n)).min() >= -slack)

    def to_json(self) -> dict:
        return {"c": [[float(x.real), float(x.imag)] for x in self.c]}

    @classmethod
    def from_json(cls, data: dict) -> "MomentSeq":
        return cls(np.array([complex(*x) for x in data["c"]]))


def moments(mu: CircleMeasure, N: int) -> MomentSeq:
    """``c_n = int exp(-i n theta) d mu`` for ``n = 0..N`` by the trapezoid rule."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if 2 * N >= mu.grid_size:
        raise AliasingError(f"moment index {N} needs a grid larger than {mu.grid_size}")
    c = np.fft.fft(mu.ac_weight)[: N + 1] / mu.grid_size
    n = np.arange(N + 1)
    for t, m in mu.point_masses:
        c = c + m * np.exp(-1j * n * t)
    return MomentSeq(c / c[0].real)


def caratheodory(c: MomentSeq, z: complex) -> complex:
    """``F(z) = 1 + 2 sum c_n z^n`` from the available moments."""
    if abs(z) >= 1:
        raise ValueError("Caratheodory function is only defined for |z| < 1")
    n = np.arange(1, c.N + 1)
    return complex(1 + 2 * np.sum(c.c[1:] * z**n))


def caratheodory_integral(mu: CircleMeasure, z: complex) -> complex:
    """Direct quadrature of the Herglotz integral; usable close to the circle."""
    if abs(z) >= 1:
        raise ValueError("Caratheodory function is only defined for |z| < 1")
    return mu.integrate_function(lambda t: (np.exp(1j * t) + z) / (np.exp(1j * t) - z))


def caratheodory_series(c: MomentSeq, order: int | None = None) -> PowerSeries:
    order = c.N if order is None else order
    if order > c.N:
        raise IndexError(f"need moments through {order}, have {c.N}")
    a = 2 * np.array(c.c[: order + 1])
    a[0] = 1.0
    return PowerSeries(a)


def schur_from_caratheodory(F: PowerSeries) -> PowerSeries:
    """``f`` with ``z f = (F - 1)/(F + 1)``; result has order ``K - 1``."""
    assert abs(F.coeffs[0] - 1) < 1e-10, "Caratheodory series must have F(0) = 1"
    zf = (F - 1) / (F + 1)
    return zf.divide_by_z()


def caratheodory_from_schur(f: PowerSeries) -> PowerSeries:
    """Inverse of :func:`schur_from_caratheodory`; result has order ``K + 1``."""
    zf = PowerSeries(np.concatenate([[0.0], f.coeffs]))
    return (1 + zf) / (1 - zf)


def measure_from_caratheodory(
    F: PowerSeries, grid_size: int = DEFAULT_GRID, r: float | None = None, tol: float = 1e-8
) -> CircleMeasure:
    """AC measure with weight ``Re F(r e^{i theta})``.

    Point masses are smeared into Poisson bumps of width ~ ``1 - r``; they
    are not recovered as atoms.
    """
    r = 1 - 10 / grid_size if r is None else r
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    w = F(r * np.exp(1j * grid_angles(grid_size))).real
    if w.min() < -tol:
        raise ValueError(f"Re F takes value {w.min():.3g} < 0: not a Caratheodory series")
    return CircleMeasure(grid_size, np.clip(w, 0, None)).normalized()


def inner_product(P, Q, c: MomentSeq) -> complex:
    """``<P, Q> = sum conj(p_j) q_k c_{j-k}``, antilinear in ``P``."""
    P, Q = as_poly(P), as_poly(Q)
    n = max(len(P), len(Q)) - 1
    if n > c.N:
        raise IndexError(f"inner product needs moments through {n}, have {c.N}")
    T = c.toeplitz(n)
    p = np.zeros(n + 1, dtype=complex)
    q = np.zeros(n + 1, dtype=complex)
    p[: len(P)] = P
    q[: len(Q)] = Q
    return complex(np.conj(p) @ T @ q)


def check_positive_definite(c: MomentSeq, n: int, slack: float = PSD_SLACK) -> None:
    try:
        np.linalg.cholesky(c.toeplitz(n) + slack * np.eye(n + 1))
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Toeplitz matrix of order {n} is not positive") from exc
