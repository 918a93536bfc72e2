"""The Szego map between measures on [-2, 2] and even measures on the
circle, the Geronimus relations in both directions, and monic OPRL."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SupportOutsideInterval
from .measure import DEFAULT_GRID, CircleMeasure
from .recursion import VerblunskySeq, as_alpha, szego_forward

REAL_TOL = 1e-12
ALPHA_M1 = -1.0  # boundary value alpha_{-1}


@dataclass(frozen=True)
class JacobiParams:
    """``a_1..a_n > 0`` and ``b_1..b_n``."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float).copy()
        b = np.asarray(self.b, dtype=float).copy()
        if a.shape != b.shape or a.ndim != 1:
            raise ValueError("a and b must be 1-d arrays of the same length")
        if np.any(a <= 0) or not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("need finite b and a_k > 0")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __len__(self):
        return len(self.a)

    def matrix(self, n: int | None = None) -> np.ndarray:
        """``n x n`` tridiagonal Jacobi matrix (``b`` on the diagonal, ``a`` off it)."""
        n = len(self) if n is None else n
        return np.diag(self.b[:n]) + np.diag(self.a[: n - 1], 1) + np.diag(self.a[: n - 1], -1)

    def to_json(self) -> dict:
        return {"a": [float(x) for x in self.a], "b": [float(x) for x in self.b]}

    @classmethod
    def from_json(cls, data: dict) -> "JacobiParams":
        return cls(np.asarray(data["a"], dtype=float), np.asarray(data["b"], dtype=float))


@dataclass(frozen=True)
class LineMeasure:
    """Probability measure on [-2, 2].

    ``weight[k] = g(2 cos(2 pi k / M))`` for ``k = 0..M/2`` where the a.c. part
    is ``g(x) dx / (pi sqrt(4 - x^2))``; ``atoms`` are ``(x, mass)`` pairs.
    """

    grid_size: int
    weight: np.ndarray
    atoms: tuple = field(default=())

    def __post_init__(self):
        if self.grid_size <= 0 or self.grid_size % 2:
            raise ValueError("grid_size must be positive and even")
        w = np.asarray(self.weight, dtype=float).copy()
        if w.shape != (self.grid_size // 2 + 1,):
            raise ValueError(f"weight must have length {self.grid_size // 2 + 1}")
        if np.any(w < 0):
            raise ValueError("weight must be nonnegative")
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        if any(abs(x) > 2 or m <= 0 for x, m in atoms):
            raise ValueError("atoms need |x| <= 2 and positive mass")
        w.setflags(write=False)
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "atoms", atoms)

    @property
    def nodes(self) -> np.ndarray:
        return 2 * np.cos(2 * np.pi * np.arange(self.grid_size // 2 + 1) / self.grid_size)

    @classmethod
    def chebyshev(cls, grid_size: int = DEFAULT_GRID) -> "LineMeasure":
        """``dx / (pi sqrt(4 - x^2))``."""
        return cls(grid_size, np.ones(grid_size // 2 + 1))

    @classmethod
    def point_mass(cls, x: float, grid_size: int = DEFAULT_GRID) -> "LineMeasure":
        return cls(grid_size, np.zeros(grid_size // 2 + 1), ((x, 1.0),))

    @classmethod
    def from_density(cls, h, grid_size: int = DEFAULT_GRID, atoms=()) -> "LineMeasure":
        """From a density ``h(x)`` against ``dx``; normalized to mass one."""
        x = 2 * np.cos(2 * np.pi * np.arange(grid_size // 2 + 1) / grid_size)
        g = np.pi * np.sqrt(np.clip(4 - x**2, 0, None)) * h(x)
        lm = cls(grid_size, g, atoms)
        s = lm.total_mass
        return cls(grid_size, g / s, tuple((a, m / s) for a, m in atoms))

    def circle_weight(self) -> np.ndarray:
        M = self.grid_size
        return np.concatenate([self.weight, self.weight[1 : M // 2][::-1]])

    @property
    def total_mass(self) -> float:
        return float(np.mean(self.circle_weight()) + sum(m for _, m in self.atoms))

    def integrate_function(self, f) -> float:
        th = 2 * np.pi * np.arange(self.grid_size) / self.grid_size
        ac = np.mean(self.circle_weight() * f(2 * np.cos(th)))
        return float(ac + sum(m * f(x) for x, m in self.atoms))


def szego_map(rho: LineMeasure) -> CircleMeasure:
    """Even circle measure with ``int f(x) d rho = int f(2 cos theta) d mu``."""
    atoms = []
    for x, m in rho.atoms:
        t = float(np.arccos(np.clip(x / 2, -1, 1)))
        if t < 1e-14 or np.pi - t < 1e-14:
            atoms.append((t, m))
        else:
            atoms += [(t, m / 2), (2 * np.pi - t, m / 2)]
    return CircleMeasure(rho.grid_size, rho.circle_weight(), tuple(atoms))


def _real_alphas(alpha) -> np.ndarray:
    a = as_alpha(alpha).alphas
    if np.any(np.abs(a.imag) > REAL_TOL):
        raise ValueError("Verblunsky coefficients must be real")
    return a.real.copy()


def _chebyshev_from_laurent(s: np.ndarray) -> np.ndarray:
    """Polynomial in ``x = z + 1/z`` equal to the symmetric Laurent polynomial with
    coefficients ``s_k z^{k-n}``, ``k = 0..2n``."""
    n = (len(s) - 1) // 2
    out = np.zeros(n + 1)
    out[0] = s[n]
    # C_j = z^j + z^{-j}: C_0 = 2, C_1 = x, C_{j+1} = x C_j - C_{j-1}
    prev, cur = np.array([2.0]), np.array([0.0, 1.0])
    for j in range(1, n + 1):
        out[: len(cur)] += s[n + j] * cur
        prev, cur = cur, np.append(0, cur) - np.append(prev, [0, 0])
    return out


def oprl_from_opuc(alpha, n: int) -> np.ndarray:
    """Monic ``P_n`` (low-to-high coefficients in ``x``) from ``Phi_{2n}`` of real ``alpha``."""
    a = _real_alphas(alpha)
    if 2 * n > len(a):
        raise IndexError(f"need alpha_0..alpha_{2 * n - 1}")
    if n == 0:
        return np.ones(1)
    fam = szego_forward(a[: 2 * n])
    s = (fam.Phi[2 * n] + fam.PhiStar[2 * n]).real
    return _chebyshev_from_laurent(s) / (1 - a[2 * n - 1])


def geronimus_forward(alpha) -> JacobiParams:
    """Jacobi parameters ``a_1..a_n, b_1..b_n`` from ``alpha_0..alpha_{2n-1}``."""
    a = _real_alphas(alpha)
    n = len(a) // 2

    def al(k):
        return ALPHA_M1 if k == -1 else (0.0 if k < -1 else a[k])

    A = np.empty(n)
    B = np.empty(n)
    for m in range(n):
        A[m] = np.sqrt((1 - al(2 * m - 1)) * (1 - al(2 * m) ** 2) * (1 + al(2 * m + 1)))
        B[m] = (1 - al(2 * m - 1)) * al(2 * m) - (1 + al(2 * m - 1)) * al(2 * m - 2)
    return JacobiParams(A, B)


def jacobi_opr(j: JacobiParams, n: int, x):
    """Monic ``P_n(x)`` from ``P_{k+1} = (x - b_{k+1}) P_k - a_k^2 P_{k-1}``."""
    if n > len(j):
        raise IndexError(f"n = {n} exceeds the {len(j)} available parameters")
    x = np.asarray(x, dtype=float)
    prev, cur = np.zeros_like(x), np.ones_like(x)
    for k in range(n):
        a2 = j.a[k - 1] ** 2 if k >= 1 else 0.0
        prev, cur = cur, (x - j.b[k]) * cur - a2 * prev
    return float(cur) if cur.ndim == 0 else cur


def _boundary_values(j: JacobiParams, x: float) -> np.ndarray:
    """``P_0(x) .. P_n(x)``, with ``P_n`` using ``b_n`` and ``a_{n-1}``."""
    n = len(j)
    P = np.empty(n + 1)
    P[0] = 1.0
    prev = 0.0
    for k in range(n):
        a2 = j.a[k - 1] ** 2 if k >= 1 else 0.0
        P[k + 1] = (x - j.b[k]) * P[k] - a2 * prev
        prev = P[k]
    return P


def geronimus_inverse(j: JacobiParams) -> VerblunskySeq:
    """``alpha_0 .. alpha_{2n-1}`` from ``(a_1..a_n, b_1..b_n)``.

    Uses ``u_k = P_{k+1}(2)/P_k(2)`` and ``v_k = -P_{k+1}(-2)/P_k(-2)``; the last
    odd coefficient only needs ``a_n`` because ``b_{n+1}`` cancels in ``u + v``.
    """
    n = len(j)
    Pp = _boundary_values(j, 2.0)
    Pm = _boundary_values(j, -2.0)
    for k in range(n + 1):
        if not (Pp[k] > 0 and (-1) ** k * Pm[k] > 0):
            raise SupportOutsideInterval(k)
    alphas = np.empty(2 * n)
    for k in range(n):
        u = Pp[k + 1] / Pp[k]
        v = -Pm[k + 1] / Pm[k]
        alphas[2 * k] = (v - u) / (v + u)
        if k >= 1:
            alphas[2 * k - 1] = 1 - (u + v) / 2
    # u_n + v_n with b_{n+1} dropped
    an2 = j.a[n - 1] ** 2
    s = 4 - an2 * (Pp[n - 1] / Pp[n] - Pm[n - 1] / Pm[n])
    if not 0 < s < 4:
        # no b_{n+1} keeps both P_{n+1}(2) > 0 and (-1)^{n+1} P_{n+1}(-2) > 0
        raise SupportOutsideInterval(n + 1, f"a_{n} admits no sign-preserving extension")
    alphas[2 * n - 1] = 1 - s / 2
    return VerblunskySeq(alphas)
