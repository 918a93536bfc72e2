"""Measures built from Verblunsky data: Bernstein-Szego approximations,
their Caratheodory functions, and Aleksandrov families."""
from __future__ import annotations

import mpmath as mp
import numpy as np

from .errors import AliasingError, ConvergenceError
from .measure import DEFAULT_GRID, CircleMeasure, MomentSeq, grid_angles, moments
from .poly import polyval, reversed_poly
from .recursion import as_alpha, orthonormal, szego_forward, verblunsky_from_moments
from .transfer import second_kind

GRID_PER_DEGREE = 64
MAX_AUTO_GRID = 2**20


def boundary_values(p, grid_size: int) -> np.ndarray:
    """``p(e^{i theta_k})`` on the uniform grid via one inverse FFT."""
    p = np.asarray(p, dtype=complex)
    if len(p) > grid_size:
        raise AliasingError(f"degree {len(p) - 1} polynomial needs a grid larger than {grid_size}")
    buf = np.zeros(grid_size, dtype=complex)
    buf[: len(p)] = p
    return np.fft.ifft(buf) * grid_size


def auto_grid(alpha, n: int, eps: float = 1e-15) -> int:
    """Power-of-two grid on which the trapezoid rule resolves ``1/|phi_n|^2`` to ``eps``.

    The Fourier coefficients of the weight decay like ``r^k`` with ``r`` the
    largest zero modulus of ``Phi_n``, so aliasing error is about ``r^M``.
    """
    base = max(GRID_PER_DEGREE * max(n, 1), 64)
    if n == 0:
        return int(2 ** np.ceil(np.log2(base)))
    roots = np.roots(szego_forward(as_alpha(alpha).alphas[:n]).Phi[n][::-1])
    r = np.abs(roots).max() if len(roots) else 0.0
    need = base if r < 1e-3 else np.log(eps) / np.log(r) + 4 * n
    M = int(2 ** np.ceil(np.log2(max(base, need))))
    return min(M, MAX_AUTO_GRID)


def bernstein_szego(alpha, n: int | None = None, grid_size: int | None = DEFAULT_GRID) -> CircleMeasure:
    """``d theta / (2 pi |phi_n(e^{i theta})|^2)`` sampled on the grid.

    ``grid_size=None`` picks a grid with :func:`auto_grid`.
    """
    alpha = as_alpha(alpha)
    n = len(alpha) if n is None else n
    if n > len(alpha):
        raise IndexError(f"n = {n} exceeds the {len(alpha)} available coefficients")
    if grid_size is None:
        grid_size = auto_grid(alpha, n)
    if grid_size < GRID_PER_DEGREE * n:
        raise AliasingError(f"grid {grid_size} too coarse for degree {n} (need >= {GRID_PER_DEGREE * n})")
    phi, _ = orthonormal(alpha.alphas[:n], n)
    w = 1.0 / np.abs(boundary_values(phi, grid_size)) ** 2
    return CircleMeasure(grid_size, w).normalized()


def bs_caratheodory(alpha, n: int, z: complex) -> complex:
    """``F(z, d mu_n) = psi_n^*(z) / phi_n^*(z)``."""
    if abs(z) >= 1:
        raise ValueError("need |z| < 1")
    _, phis = orthonormal(as_alpha(alpha).alphas[:n], n)
    _, psis = second_kind(alpha, n)
    return complex(polyval(psis, z) / polyval(phis, z))


def moments_from_verblunsky(alpha, N: int | None = None) -> MomentSeq:
    """Moments ``c_0..c_N`` of the measure with coefficients ``alpha`` (then zeros).

    Runs the Levinson relation ``alpha_n ||Phi_n||^2 = sum_j conj(p_j) c_{j+1}``
    backwards for ``c_{n+1}``; no quadrature is involved.
    """
    alpha = as_alpha(alpha)
    N = len(alpha) if N is None else N
    a = np.zeros(N, dtype=complex)
    k = min(N, len(alpha))
    a[:k] = alpha.alphas[:k]
    c = np.zeros(N + 1, dtype=complex)
    c[0] = 1.0
    P = np.ones(1, dtype=complex)
    norm2 = 1.0
    for n in range(N):
        # the leading coefficient of Phi_n is 1, so c_{n+1} enters with weight 1
        c[n + 1] = a[n] * norm2 - np.dot(np.conj(P[:-1]), c[1 : n + 1])
        P = np.append(0, P) - np.conj(a[n]) * np.append(reversed_poly(P, n), 0)
        norm2 *= 1 - abs(a[n]) ** 2
    return MomentSeq(c)


def bs_moments_exact(alpha, N: int | None = None, dps: int = 60) -> MomentSeq:
    """Moments of ``d theta / 2 pi |phi_n|^2`` by residue calculus, no grid.

    On the circle the weight equals ``z^n / (phi_n(z) phi_n^*(z))``, so
    ``c_m`` is a contour integral whose value is minus the sum of residues
    at the zeros of ``phi_n^*`` (all outside the disk). Zeros and residues
    are computed with ``dps`` digits; the result is rounded to double.
    Unlike the trapezoid rule this stays exact when zeros of ``Phi_n`` sit
    next to the circle.
    """
    a = as_alpha(alpha).alphas
    N = len(a) if N is None else N
    # trailing coefficients below 1e-15 move the moments by less than rounding
    nz = np.nonzero(np.abs(a) > 1e-15)[0]
    a = a[: nz[-1] + 1] if len(nz) else a[:0]
    n = len(a)
    if n == 0:
        return MomentSeq(np.r_[1.0, np.zeros(N)].astype(complex))
    with mp.workdps(dps):
        P = [mp.mpc(1)]
        norm2 = mp.mpf(1)
        for x in a:
            x = mp.mpc(complex(x))
            rev = [mp.conj(c) for c in P[::-1]] + [mp.mpc(0)]
            P = [p - mp.conj(x) * q for p, q in zip([mp.mpc(0)] + P, rev)]
            norm2 *= 1 - abs(x) ** 2
        Ps = [mp.conj(c) for c in P[::-1]]
        dPs = [k * Ps[k] for k in range(1, n + 1)]
        try:
            roots = mp.polyroots(Ps[::-1], maxsteps=400, extraprec=4 * dps)
        except (mp.libmp.NoConvergence, ZeroDivisionError) as exc:
            raise ConvergenceError("root finding for phi_n^* did not converge") from exc
        denom = [mp.polyval(P[::-1], z) * mp.polyval(dPs[::-1], z) for z in roots]
        if any(abs(d) < mp.mpf(10) ** (-dps // 2) for d in denom):
            raise ConvergenceError("phi_n^* has a (numerically) repeated zero")
        c = [complex(-norm2 * sum(z ** (n - m - 1) / d for z, d in zip(roots, denom))) for m in range(N + 1)]
    return MomentSeq(np.array(c))


def aleksandrov(alpha, lam: complex):
    """The Aleksandrov family member ``alpha_j -> lam alpha_j``."""
    if abs(abs(lam) - 1) > 1e-12:
        raise ValueError("lambda must be unimodular")
    return as_alpha(alpha).rotated(lam)


def aleksandrov_caratheodory(F: complex, lam: complex) -> complex:
    """Mobius relation ``F_lam = ((1-lam) + (1+lam) F) / ((1+lam) + (1-lam) F)``."""
    return ((1 - lam) + (1 + lam) * F) / ((1 + lam) + (1 - lam) * F)


def aleksandrov_average(alpha, n_moment: int, L: int = 64) -> complex:
    """Average of ``c_{n_moment}(mu_lam)`` over ``L`` equally spaced ``lam`` on the circle."""
    if L < 8:
        raise ValueError("need at least 8 lambda nodes")
    if n_moment < 0:
        raise ValueError("n_moment must be nonnegative")
    alpha = as_alpha(alpha)
    lams = np.exp(2j * np.pi * np.arange(L) / L)
    vals = [moments_from_verblunsky(alpha.rotated(l), max(n_moment, 1))[n_moment] for l in lams]
    return complex(np.mean(vals))


def mobius_mean(a: complex, grid_size: int | None = None) -> complex:
    """``int ((1-e^{it}) + (1+e^{it}) a) / ((1+e^{it}) + (1-e^{it}) a) dt/2pi`` for ``Re a > 0``.

    The integrand's only pole sits at ``|e^{it}| = |1+a|/|a-1| > 1`` so the
    periodic trapezoid rule converges geometrically; the grid is chosen from
    that radius when not given.
    """
    if np.real(a) <= 0:
        raise ValueError("need Re a > 0")
    if grid_size is None:
        R = abs(1 + a) / abs(a - 1) if a != 1 else np.inf
        need = 64 if not np.isfinite(R) else np.log(1e-17) / -np.log(R)
        grid_size = int(min(2 ** np.ceil(np.log2(max(need, 64))), MAX_AUTO_GRID))
    w = np.exp(1j * grid_angles(grid_size))
    return complex(np.mean(((1 - w) + (1 + w) * a) / ((1 + w) + (1 - w) * a)))


def weak_convergence_diagnostic(mu: CircleMeasure, n: int, grid_size: int | None = None) -> float:
    """``max_{k<=n} |c_k(mu_n) - c_k(mu)|`` for the Bernstein-Szego approximation ``mu_n``."""
    c = moments(mu, n)
    alpha = verblunsky_from_moments(c, n)
    mu_n = bernstein_szego(alpha, n, grid_size if grid_size is not None else max(mu.grid_size, GRID_PER_DEGREE * n))
    return float(np.abs(moments(mu_n, n).c - c.c).max())
