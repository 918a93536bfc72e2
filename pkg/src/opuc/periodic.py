"""Discriminant, band structure, density of zeros and capacity for
periodic Verblunsky coefficients."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import warnings

import numpy as np
from scipy import integrate, optimize

from .errors import ConvergenceError
from .recursion import as_alpha
from .transfer import step_matrix

EDGE_XTOL = 1e-14
TOUCH_TOL = 1e-8
TWO_PI = 2 * np.pi


@dataclass(frozen=True)
class PeriodicSpec:
    """One period ``alpha_0 .. alpha_{p-1}`` (``p`` even)."""

    alphas: np.ndarray

    def __post_init__(self):
        a = as_alpha(self.alphas).alphas
        if len(a) == 0 or len(a) % 2:
            raise ValueError(f"period must be even and positive, got {len(a)} (double the period instead)")
        object.__setattr__(self, "alphas", a)

    @property
    def p(self) -> int:
        return len(self.alphas)

    @classmethod
    def geronimus(cls, a: complex, p: int = 2) -> "PeriodicSpec":
        return cls(np.full(p, a, dtype=complex))

    def sequence(self, n: int) -> np.ndarray:
        return np.resize(self.alphas, n)

    @cached_property
    def fourier(self) -> np.ndarray:
        return discriminant_fourier(self)


def _period_matrix(spec: PeriodicSpec, z: np.ndarray) -> np.ndarray:
    """``T_p(z)`` for an array of ``z`` (shape ``z.shape + (2, 2)``)."""
    z = np.asarray(z, dtype=complex)
    T = np.broadcast_to(np.eye(2, dtype=complex), z.shape + (2, 2)).copy()
    for a in spec.alphas:
        rho = np.sqrt(1 - abs(a) ** 2)
        A = np.empty(z.shape + (2, 2), dtype=complex)
        A[..., 0, 0] = z / rho
        A[..., 0, 1] = -np.conj(a) / rho
        A[..., 1, 0] = -a * z / rho
        A[..., 1, 1] = 1 / rho
        T = A @ T
    return T


def discriminant(spec: PeriodicSpec, z):
    """``Delta(z) = Tr(z^{-p/2} T_p(z))``."""
    z = np.asarray(z, dtype=complex)
    if np.any(z == 0):
        raise ValueError("discriminant is undefined at z = 0")
    T = _period_matrix(spec, z)
    val = (T[..., 0, 0] + T[..., 1, 1]) * z ** (-(spec.p // 2))
    return complex(val) if val.ndim == 0 else val


def discriminant_fourier(spec: PeriodicSpec) -> np.ndarray:
    """``d_k``, ``k = -p/2 .. p/2``, with ``Delta(e^{i theta}) = sum d_k e^{i k theta}``."""
    p = spec.p
    m = 2 * p + 2
    th = TWO_PI * np.arange(m) / m
    d = np.fft.fft(discriminant(spec, np.exp(1j * th))) / m
    k = np.arange(-(p // 2), p // 2 + 1)
    return d[k % m]


def delta_theta(spec: PeriodicSpec, theta, deriv: int = 0) -> np.ndarray:
    """Real trigonometric polynomial ``Delta(e^{i theta})`` or its ``deriv``-th derivative."""
    d = spec.fourier
    k = np.arange(-(spec.p // 2), spec.p // 2 + 1)
    th = np.asarray(theta, dtype=float)
    vals = np.exp(1j * np.multiply.outer(th, k)) @ (d * (1j * k) ** deriv)
    return vals.real


def critical_angles(spec: PeriodicSpec) -> np.ndarray:
    """The ``p`` zeros of ``d Delta / d theta`` on the circle, sorted in ``[0, 2 pi)``."""
    p = spec.p
    d = spec.fourier
    k = np.arange(-(p // 2), p // 2 + 1)
    # e^{i p theta / 2} Delta'(theta) is a degree-p polynomial in w = e^{i theta}
    coeffs = (1j * k * d)[::-1]
    roots = np.roots(coeffs)
    roots = roots[np.abs(np.abs(roots) - 1) < 1e-4]
    th = np.sort(np.angle(roots) % TWO_PI)
    if len(th) != p:
        raise ConvergenceError(f"found {len(th)} critical points, expected {p}")
    refined = []
    for t in th:
        # Newton polish on Delta'
        for _ in range(5):
            dd = delta_theta(spec, t, 2)
            if dd == 0:
                break
            t = t - delta_theta(spec, t, 1) / dd
        refined.append(t % TWO_PI)
    return np.sort(np.array(refined))


@dataclass(frozen=True)
class BandStructure:
    bands: list
    gaps: list
    band_masses: list
    p: int = field(default=0)

    def merged(self, tol: float = TOUCH_TOL) -> list:
        """Band arcs with touching neighbours (closed gaps) joined."""
        out = [list(self.bands[0])]
        for x, y in self.bands[1:]:
            if abs(x - out[-1][1]) < tol:
                out[-1][1] = y
            else:
                out.append([x, y])
        if len(out) > 1 and abs((out[0][0] + TWO_PI) - out[-1][1]) < tol:
            out[0][0] = out[-1][0] - TWO_PI
            out.pop()
        return [tuple(b) for b in out]

    def to_json(self) -> dict:
        return {
            "bands": [{"x": float(x), "y": float(y), "mass": float(m)} for (x, y), m in zip(self.bands, self.band_masses)],
            "gaps": [{"x": float(x), "y": float(y), "closed": bool(abs(y - x) < TOUCH_TOL)} for x, y in self.gaps],
        }


def _band_on_arc(spec, lo, hi):
    f_lo, f_hi = delta_theta(spec, lo), delta_theta(spec, hi)

    def edge(level, start, f_start):
        if abs(f_start - level) < TOUCH_TOL:
            return start
        return optimize.brentq(lambda t: delta_theta(spec, t) - level, lo, hi, xtol=EDGE_XTOL, rtol=4 * np.finfo(float).eps)

    # Delta is monotone on the arc and sweeps across [-2, 2]
    if f_lo > f_hi:
        x = lo if f_lo <= 2 + TOUCH_TOL else edge(2.0, lo, f_lo)
        y = hi if f_hi >= -2 - TOUCH_TOL else edge(-2.0, hi, f_hi)
    else:
        x = lo if f_lo >= -2 - TOUCH_TOL else edge(-2.0, lo, f_lo)
        y = hi if f_hi <= 2 + TOUCH_TOL else edge(2.0, hi, f_hi)
    return x, y


def band_mass(spec: PeriodicSpec, x: float, y: float) -> float:
    """``int_x^y rho'(theta) d theta / 2 pi`` with ``theta = x + (y-x)(1 - cos t)/2``.

    The substitution cancels the inverse square roots at the edges; adaptive
    quadrature handles the thin layer left next to a nearly closed gap.
    """
    def f(t):
        th = x + (y - x) * (1 - np.cos(t)) / 2
        return dos_density(spec, th, strict=False) * (y - x) * np.sin(t) / 2

    val, _ = integrate.quad(f, 0, np.pi, limit=200, epsabs=1e-13, epsrel=1e-12)
    return float(val / TWO_PI)


def band_structure(spec: PeriodicSpec, grid: int = 512) -> BandStructure:
    """Bands ``{theta : |Delta| <= 2}`` as ``p`` arcs with their masses."""
    if grid < 512:
        raise ValueError("grid must be >= 512")
    crit = critical_angles(spec)
    # sanity: critical values lie outside (-2, 2) up to touching
    if np.any(np.abs(delta_theta(spec, crit)) < 2 - 1e-6):
        raise ConvergenceError("critical value inside (-2, 2): band edges not separated")
    ext = np.append(crit, crit[0] + TWO_PI)
    bands = [_band_on_arc(spec, ext[j], ext[j + 1]) for j in range(spec.p)]
    bands = sorted((float(x), float(y)) for x, y in bands)
    gaps = [(bands[j][1], bands[j + 1][0]) for j in range(spec.p - 1)]
    gaps.append((bands[-1][1], bands[0][0] + TWO_PI))
    masses = [band_mass(spec, x, y) for x, y in bands]
    return BandStructure(bands, gaps, masses, spec.p)


def dos_density(spec: PeriodicSpec, theta, strict: bool = True):
    """Density of ``d rho`` against ``d theta / 2 pi``: ``(2/p) |Delta'| / sqrt(4 - Delta^2)``."""
    th = np.asarray(theta, dtype=float)
    D = delta_theta(spec, th)
    if strict and np.any(D**2 >= 4):
        raise ValueError("theta must lie strictly inside a band")
    dD = delta_theta(spec, th, 1)
    gap2 = 4 - D**2
    ratio = np.abs(dD) / np.sqrt(np.clip(gap2, 1e-300, None))
    # at a closed gap Delta = +-2 - c (theta - theta_0)^2 and the ratio tends to sqrt(c)
    touch = (gap2 < 1e-9) & (np.abs(dD) < 1e-4)
    if np.any(touch):
        ratio = np.where(touch, np.sqrt(np.abs(delta_theta(spec, th, 2)) / 2), ratio)
    val = (2 / spec.p) * ratio
    return float(val) if val.ndim == 0 else val


def capacity_product(spec: PeriodicSpec) -> float:
    """``prod (1 - |alpha_j|^2)^{1/(2p)}``."""
    return float(np.prod(1 - np.abs(spec.alphas) ** 2) ** (1 / (2 * spec.p)))


def log_potential(spec: PeriodicSpec, z: complex, bs: BandStructure | None = None) -> float:
    """``int log |z - e^{i phi}| d rho(phi)``."""
    bs = band_structure(spec) if bs is None else bs
    total = 0.0
    for x, y in bs.bands:
        pts = [t for t in [np.angle(z) % TWO_PI, np.angle(z) % TWO_PI + TWO_PI] if x < t < y]

        def f(s):
            th = x + (y - x) * (1 - np.cos(s)) / 2
            jac = (y - x) * np.sin(s) / 2
            return np.log(abs(z - np.exp(1j * th))) * dos_density(spec, th, strict=False) * jac / TWO_PI

        brk = [np.arccos(1 - 2 * (t - x) / (y - x)) for t in pts]
        with warnings.catch_warnings():
            # the log singularity trips quad's extrapolation heuristics; the value is still accurate
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(f, 0, np.pi, points=brk or None, limit=400, epsabs=1e-13, epsrel=1e-12)
        total += val
    return float(total)


def capacity_numeric(spec: PeriodicSpec, samples: int = 4) -> float:
    """``exp`` of the equilibrium potential of ``d rho``, averaged over points of the bands."""
    bs = band_structure(spec)
    vals = []
    for x, y in bs.bands:
        for s in (np.arange(samples) + 0.5) / samples:
            th = x + (y - x) * s
            vals.append(log_potential(spec, np.exp(1j * th), bs))
    return float(np.exp(np.mean(vals)))


def transfer_growth(spec: PeriodicSpec, theta: float, m_max: int = 50) -> np.ndarray:
    """``||T_{mp}(e^{i theta})||`` for ``m = 1..m_max``."""
    z = np.exp(1j * theta)
    Tp = _period_matrix(spec, z)
    out = np.empty(m_max)
    T = np.eye(2, dtype=complex)
    for m in range(m_max):
        T = Tp @ T
        out[m] = np.linalg.norm(T, 2)
    return out


def dos_grid(spec: PeriodicSpec, grid: int = 1024) -> tuple[np.ndarray, np.ndarray]:
    """``(theta, density)`` samples at midpoints inside the bands; gaps give 0."""
    th = (np.arange(grid) + 0.5) * TWO_PI / grid
    D = delta_theta(spec, th)
    dens = np.where(D**2 < 4, dos_density(spec, th, strict=False), 0.0)
    return th, dens


def step_period(spec: PeriodicSpec, z: complex) -> np.ndarray:
    T = np.eye(2, dtype=complex)
    for a in spec.alphas:
        T = step_matrix(z, a) @ T
    return T
