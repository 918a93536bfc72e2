"""Toeplitz determinants, Szego's theorem and its strong form, the Szego
function, Baxter diagnostics and exponential decay of coefficients."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite
from .measure import CircleMeasure, MomentSeq, moments
from .poly import polyval
from .recursion import as_alpha, orthonormal, szego_forward, verblunsky_from_moments
from .synthesis import bernstein_szego, boundary_values

WEIGHT_FLOOR = 1e-300
G_INFINITE = 1e12


def toeplitz_det(c: MomentSeq, n: int, alpha=None) -> tuple[float, float]:
    """``D_n`` two ways: Cholesky of the ``(n+1) x (n+1)`` Toeplitz matrix and
    ``prod_{j<n} (1 - |alpha_j|^2)^{n-j}``."""
    T = c.toeplitz(n)
    try:
        Lc = np.linalg.cholesky(T)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(f"Toeplitz matrix of order {n} is not positive definite") from exc
    gram = float(np.prod(np.abs(np.diag(Lc)) ** 2))
    a = verblunsky_from_moments(c, n).alphas if alpha is None else as_alpha(alpha).alphas[:n]
    j = np.arange(n)
    prod = float(np.prod((1 - np.abs(a) ** 2) ** (n - j)))
    return gram, prod


def szego_limits(alpha) -> tuple[float, float]:
    """``F = prod (1-|a_j|^2)`` and ``G = prod (1-|a_j|^2)^{-j-1}`` (``inf`` past 1e12)."""
    a = as_alpha(alpha).alphas
    r2 = 1 - np.abs(a) ** 2
    F = float(np.prod(r2))
    logG = -np.sum((np.arange(len(a)) + 1) * np.log(r2))
    G = float(np.exp(logG)) if logG < np.log(G_INFINITE) else np.inf
    return F, G


def entropy(mu: CircleMeasure) -> float:
    """``int log w d theta / 2 pi``; ``-inf`` if the weight vanishes on the grid."""
    w = mu.ac_weight
    if np.any(w < WEIGHT_FLOOR):
        return -np.inf
    return float(np.mean(np.log(w)))


def szego_theorem_check(mu: CircleMeasure, N: int) -> tuple[float, float]:
    """``(prod_{j<N} (1 - |alpha_j|^2), exp int log w)``."""
    a = verblunsky_from_moments(moments(mu, N), N).alphas
    lhs = float(np.prod(1 - np.abs(a) ** 2))
    ent = entropy(mu)
    return lhs, float(np.exp(ent)) if np.isfinite(ent) else 0.0


def log_weight_fourier(mu: CircleMeasure) -> np.ndarray:
    """``L_hat_n``, ``n = 0 .. M/2``, by FFT of ``log w``."""
    if np.any(mu.ac_weight < WEIGHT_FLOOR):
        raise ValueError("weight vanishes on the grid: log w is not integrable numerically")
    L = np.fft.fft(np.log(mu.ac_weight)) / mu.grid_size
    return L[: mu.grid_size // 2 + 1]


def szego_function(mu: CircleMeasure, z) -> np.ndarray | complex:
    """``D(z) = exp(L_0/2 + sum_{n>=1} L_n z^n)``; valid for ``|z| <= 1``."""
    Lh = log_weight_fourier(mu)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + 1e-12):
        raise ValueError("Szego function is evaluated on the closed disk only")
    coeffs = Lh.copy()
    coeffs[0] = Lh[0] / 2
    val = np.exp(polyval(coeffs, z))
    return complex(val) if val.ndim == 0 else val


def szego_function_quadrature(mu: CircleMeasure, z: complex) -> complex:
    """Herglotz-integral form of ``D(z)`` by direct quadrature (interior points)."""
    if abs(z) >= 1:
        raise ValueError("need |z| < 1")
    e = np.exp(1j * mu.angles)
    return complex(np.exp(np.mean((e + z) / (e - z) * np.log(mu.ac_weight)) / 2))


def szego_asymptotics_report(mu: CircleMeasure, N: int, z_samples) -> list[dict]:
    """Per ``n``: ``int |phi_n^* - 1/D|^2 w``, ``int |phi_n|^2 d mu_s`` and ``sup_z |phi_n^*(z) - 1/D(z)|``."""
    a = verblunsky_from_moments(moments(mu, N), N)
    M = mu.grid_size
    Db = szego_function(mu, np.exp(1j * mu.angles))
    zs = np.asarray(z_samples, dtype=complex)
    Dz = szego_function(mu, zs)
    rows = []
    for n in range(N + 1):
        phi, phis = orthonormal(a.alphas[:n], n)
        l2 = float(np.mean(np.abs(boundary_values(phis, M) - 1 / Db) ** 2 * mu.ac_weight))
        sing = float(sum(m * abs(polyval(phi, np.exp(1j * t))) ** 2 for t, m in mu.point_masses))
        sup = float(np.max(np.abs(polyval(phis, zs) - 1 / Dz))) if len(zs) else 0.0
        rows.append({"n": n, "l2_ac": l2, "singular": sing, "sup_interior": sup})
    return rows


def strong_szego_check(mu: CircleMeasure, N: int, M: int | None = None) -> tuple[float, float]:
    """``(prod_{j<N} (1-|alpha_j|^2)^{-j-1}, exp sum_{1<=n<=M} n |L_hat_n|^2)``; ``M`` defaults to grid/4."""
    if mu.point_masses:
        raise ValueError("strong Szego theorem needs a purely a.c. measure")
    a = verblunsky_from_moments(moments(mu, N), N).alphas
    lhs = float(np.exp(-np.sum((np.arange(N) + 1) * np.log(1 - np.abs(a) ** 2))))
    M = mu.grid_size // 4 if M is None else M
    Lh = log_weight_fourier(mu)[1 : M + 1]
    n = np.arange(1, len(Lh) + 1)
    return lhs, float(np.exp(np.sum(n * np.abs(Lh) ** 2)))


def _decay_rate(values) -> float:
    v = np.abs(np.asarray(values))
    idx = np.nonzero(v > 0)[0]
    if len(idx) == 0 or idx[-1] < len(v) // 2:
        return 0.0
    idx = idx[len(idx) // 2 :]
    if len(idx) < 2:
        return 0.0
    slope = np.polyfit(idx.astype(float), np.log(v[idx]), 1)[0]
    return float(np.exp(slope))


def nevai_totik_rate(alpha) -> float:
    """Least-squares estimate of ``limsup |alpha_n|^{1/n}`` from the tail half of nonzero entries."""
    a = as_alpha(alpha).alphas
    if len(a) < 8:
        raise ValueError("need at least 8 coefficients")
    return _decay_rate(a)


def nevai_totik_report(alpha) -> dict:
    """Decay rate of ``alpha`` alongside ``1/R`` for the series of ``lim phi_n^* = 1/D``.

    The coefficients of ``phi_N^*`` stand in for those of ``1/D``; their
    geometric decay gives the reciprocal radius of analyticity.
    """
    a = as_alpha(alpha)
    fam = szego_forward(a)
    return {"rate": nevai_totik_rate(a), "inverse_radius": _decay_rate(fam.phi_star(len(a)))}


def baxter_diagnostics(alpha, c: MomentSeq, ell: int, grid_size: int = 1024) -> tuple[float, float, float]:
    """``(sum_n n^ell |alpha_n|, sum_{n>=1} n^ell |c_n|, min w)``; ``w`` is the
    Bernstein-Szego weight of ``alpha``."""
    a = as_alpha(alpha)
    n = np.arange(len(a), dtype=float)
    sum_alpha = float(np.sum(n**ell * np.abs(a.alphas)))
    m = np.arange(1, c.N + 1, dtype=float)
    sum_c = float(np.sum(m**ell * np.abs(c.c[1:])))
    w = bernstein_szego(a, len(a), max(grid_size, 64 * len(a))).ac_weight
    return sum_alpha, sum_c, float(w.min())


@dataclass(frozen=True)
class SzegoReport:
    D_n: np.ndarray
    F_limit: float
    G_limit: float
    entropy: float
    strong_sum: float

    def to_json(self) -> dict:
        return {
            "D_n": [float(x) for x in self.D_n],
            "F_limit": self.F_limit,
            "G_limit": self.G_limit if np.isfinite(self.G_limit) else "inf",
            "entropy": self.entropy,
            "strong_sum": self.strong_sum,
        }


def szego_report(alpha, grid_size: int = 1024) -> SzegoReport:
    """Report for the Bernstein-Szego measure of ``alpha``."""
    a = as_alpha(alpha)
    N = len(a)
    F, G = szego_limits(a)
    mu = bernstein_szego(a, N, max(grid_size, 64 * N))
    D = np.array([np.prod((1 - np.abs(a.alphas[:n]) ** 2) ** (n - np.arange(n))) for n in range(N + 1)])
    Lh = log_weight_fourier(mu)[1 : mu.grid_size // 4 + 1]
    strong = float(np.sum(np.arange(1, len(Lh) + 1) * np.abs(Lh) ** 2))
    return SzegoReport(D, F, G, entropy(mu), strong)
