"""Szegő recursion: monic/orthonormal OPUC, the inverse step, Verblunsky
extraction from moments (Levinson order), and the Christoffel–Darboux kernel."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite, NotStrictlyInside
from .measure import MomentSeq
from .poly import as_poly, degree, polyval, reversed_poly, shift

MAX_N = 64
UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class VerblunskySeq:
    """Verblunsky coefficients ``alpha_0 .. alpha_{N-1}``.

    With ``terminal_unimodular`` set the last entry lies on the unit circle
    (the measure is supported on ``N`` points).
    """

    alphas: np.ndarray
    terminal_unimodular: bool = False

    def __post_init__(self):
        a = as_poly(self.alphas)
        mod = np.abs(a)
        if self.terminal_unimodular:
            if not len(a):
                raise ValueError("terminal flag needs at least one coefficient")
            if abs(mod[-1] - 1) > UNIMODULAR_TOL:
                raise ValueError(f"terminal coefficient has modulus {mod[-1]}, expected 1")
            a[-1] /= mod[-1]
            inner = mod[:-1]
        else:
            inner = mod
        if np.any(inner >= 1):
            j = int(np.argmax(inner >= 1))
            raise NotStrictlyInside(f"|alpha_{j}| = {inner[j]} is not < 1")
        a.setflags(write=False)
        object.__setattr__(self, "alphas", a)

    def __len__(self):
        return len(self.alphas)

    def __getitem__(self, j):
        return self.alphas[j]

    @property
    def rhos(self) -> np.ndarray:
        return np.sqrt(np.clip(1 - np.abs(self.alphas) ** 2, 0.0, None))

    def padded(self, n: int) -> "VerblunskySeq":
        """Extend with zeros (the Bernstein–Szegő continuation) to length ``n``."""
        if n <= len(self):
            return self
        if self.terminal_unimodular:
            raise ValueError("cannot extend a sequence that ends in a unimodular coefficient")
        return VerblunskySeq(np.concatenate([self.alphas, np.zeros(n - len(self))]))

    def rotated(self, lam: complex) -> "VerblunskySeq":
        return VerblunskySeq(lam * self.alphas, self.terminal_unimodular)

    def shifted(self, n: int) -> "VerblunskySeq":
        return VerblunskySeq(self.alphas[n:], self.terminal_unimodular)

    def to_json(self) -> dict:
        return {
            "alphas": [[float(a.real), float(a.imag)] for a in self.alphas],
            "terminal_unimodular": bool(self.terminal_unimodular),
        }

    @classmethod
    def from_json(cls, data: dict) -> "VerblunskySeq":
        a = [complex(*x) if isinstance(x, (list, tuple)) else complex(x) for x in data["alphas"]]
        return cls(np.array(a, dtype=complex), bool(data.get("terminal_unimodular", False)))


def as_alpha(alpha) -> VerblunskySeq:
    return alpha if isinstance(alpha, VerblunskySeq) else VerblunskySeq(alpha)


@dataclass(frozen=True)
class OpucFamily:
    """``Phi_0 .. Phi_N``, their reversals, and the norms ``||Phi_n||``."""

    Phi: tuple
    PhiStar: tuple
    norms: np.ndarray

    @property
    def N(self) -> int:
        return len(self.Phi) - 1

    def phi(self, n: int) -> np.ndarray:
        return self.Phi[n] / self.norms[n]

    def phi_star(self, n: int) -> np.ndarray:
        return self.PhiStar[n] / self.norms[n]


def szego_forward(alpha) -> OpucFamily:
    """Run ``Phi_{n+1} = z Phi_n - conj(alpha_n) Phi_n^*`` over the whole sequence."""
    alpha = as_alpha(alpha)
    Phi = [np.ones(1, dtype=complex)]
    PhiStar = [np.ones(1, dtype=complex)]
    norms = np.ones(len(alpha) + 1)
    for n, a in enumerate(alpha.alphas):
        P, Ps = Phi[-1], PhiStar[-1]
        # Phi*_{n+1} = Phi*_n - alpha_n z Phi_n
        nxt = shift(P) - np.conj(a) * np.append(Ps, 0)
        nxt_star = np.append(Ps, 0) - a * shift(P)
        Phi.append(nxt)
        PhiStar.append(nxt_star)
        norms[n + 1] = norms[n] * np.sqrt(max(1 - abs(a) ** 2, 0.0))
    return OpucFamily(tuple(Phi), tuple(PhiStar), norms)


def monic(alpha, n: int | None = None) -> np.ndarray:
    fam = szego_forward(alpha)
    return fam.Phi[fam.N if n is None else n]


def orthonormal(alpha, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(phi_n, phi_n^*)`` coefficient vectors."""
    fam = szego_forward(as_alpha(alpha).alphas[:n])
    return fam.phi(n), fam.phi_star(n)


def inverse_szego_step(Phi_n, n: int | None = None) -> tuple[complex, np.ndarray]:
    """Recover ``(alpha_{n-1}, Phi_{n-1})`` from a monic ``Phi_n``."""
    P = as_poly(Phi_n)
    n = degree(P) if n is None else n
    if n < 1 or len(P) != n + 1 or abs(P[n] - 1) > 1e-12:
        raise ValueError("Phi_n must be monic of exact degree n >= 1")
    a = -np.conj(P[0])
    if abs(a) >= 1:
        raise NotStrictlyInside(f"|Phi_{n}(0)| = {abs(a)} >= 1: measure is trivial")
    bracket = P + np.conj(a) * reversed_poly(P, n)
    bracket[0] = 0.0  # vanishes exactly in exact arithmetic
    prev = bracket[1:] / (1 - abs(a) ** 2)
    prev[-1] = 1.0
    return complex(a), prev


def verblunsky_from_phi(Phi_N) -> VerblunskySeq:
    """Peel off every coefficient of ``Phi_N`` with the inverse recursion."""
    P = as_poly(Phi_N)
    out = []
    for n in range(len(P) - 1, 0, -1):
        a, P = inverse_szego_step(P, n)
        out.append(a)
    return VerblunskySeq(np.array(out[::-1], dtype=complex))


def verblunsky_from_moments(c: MomentSeq, N: int | None = None, tol: float = 1e-12) -> VerblunskySeq:
    """``alpha_n = <z Phi_n, 1> / ||Phi_n||^2``, with ``Phi`` built alongside."""
    N = c.N if N is None else N
    if N > c.N:
        raise IndexError(f"need moments through {N}, have {c.N}")
    if N > MAX_N:
        raise ValueError(f"N = {N} exceeds the supported cap {MAX_N}")
    P = np.ones(1, dtype=complex)
    norm2 = 1.0
    alphas = np.zeros(N, dtype=complex)
    for n in range(N):
        # <z Phi_n, 1> = sum_j conj(p_j) c_{j+1}
        a = np.dot(np.conj(P), c.c[1 : n + 2]) / norm2
        if abs(a) >= 1 - tol:
            raise NotPositiveDefinite(
                f"|alpha_{n}| = {abs(a):.3g}: moments are (numerically) not positive definite"
            )
        alphas[n] = a
        P = shift(P) - np.conj(a) * np.append(reversed_poly(P, n), 0)
        norm2 *= 1 - abs(a) ** 2
    return VerblunskySeq(alphas)


def cd_kernel(alpha, n: int, z: complex, zeta: complex, direct: bool = False) -> complex:
    """``sum_{j<=n} conj(phi_j(zeta)) phi_j(z)``.

    Uses the closed Christoffel–Darboux form unless ``z conj(zeta)`` is 1 (or
    ``direct`` is requested), in which case the sum is evaluated term by term.
    """
    alpha = as_alpha(alpha)
    if n >= len(alpha):
        raise IndexError("closed form needs alpha_n; require n < len(alpha)")
    fam = szego_forward(alpha.alphas[: n + 1])
    denom = 1 - z * np.conj(zeta)
    if direct or abs(denom) < 1e-13:
        return complex(sum(np.conj(polyval(fam.phi(j), zeta)) * polyval(fam.phi(j), z) for j in range(n + 1)))
    ps, p = fam.phi_star(n + 1), fam.phi(n + 1)
    num = np.conj(polyval(ps, zeta)) * polyval(ps, z) - np.conj(polyval(p, zeta)) * polyval(p, z)
    return complex(num / denom)
