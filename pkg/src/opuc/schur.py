"""Schur algorithm on truncated series, Schur approximants via Wall
polynomials, and Khrushchev's formula."""
from __future__ import annotations

import numpy as np

from .errors import TerminalParameter
from .measure import grid_angles
from .poly import PowerSeries, as_poly, padd, pmul, polyval, reversed_poly
from .recursion import VerblunskySeq, as_alpha, szego_forward

TERMINAL_TOL = 1e-10
WALL_DEPTH = 20


def schur_step(f: PowerSeries) -> tuple[complex, PowerSeries]:
    """One step ``f -> (gamma, f1)`` with ``f1 = (f - gamma) / (z (1 - conj(gamma) f))``."""
    gamma = complex(f.coeffs[0])
    if abs(gamma) > 1 - TERMINAL_TOL:
        raise TerminalParameter(0, [gamma])
    if f.order < 1:
        raise ValueError("need truncation order >= 1 to take a Schur step")
    num = (f - gamma).divide_by_z()
    return gamma, num / (1 - np.conj(gamma) * f)


def schur_parameters(f: PowerSeries, N: int, strict: bool = True) -> VerblunskySeq:
    """``gamma_0 .. gamma_{N-1}`` of ``f``.

    On a unimodular parameter the algorithm stops: with ``strict`` a
    :class:`TerminalParameter` is raised, otherwise the (shorter) sequence is
    returned with its terminal flag set.
    """
    if f.order < N - 1:
        raise ValueError(f"series order {f.order} is too short for {N} parameters")
    gammas = []
    for j in range(N):
        g0 = complex(f.coeffs[0])
        if abs(g0) > 1 - TERMINAL_TOL:
            gammas.append(g0 / abs(g0))
            if strict:
                raise TerminalParameter(j, gammas)
            return VerblunskySeq(np.array(gammas), terminal_unimodular=True)
        if j == N - 1:
            gammas.append(g0)
            break
        g, f = schur_step(f)
        gammas.append(g)
    return VerblunskySeq(np.array(gammas, dtype=complex))


def transfer_polynomials(alphas) -> list[list[np.ndarray]]:
    """Polynomial entries of ``prod_j [[z, -conj(a_j)], [-z a_j, 1]]`` (latest on the left)."""
    T = [[np.ones(1, complex), np.zeros(1, complex)], [np.zeros(1, complex), np.ones(1, complex)]]
    for a in np.atleast_1d(np.asarray(alphas, dtype=complex)):
        A = [[np.array([0, 1], complex), np.array([-np.conj(a)])],
             [np.array([0, -a]), np.ones(1, complex)]]
        T = [[padd(pmul(A[i][0], T[0][k]), pmul(A[i][1], T[1][k])) for k in range(2)] for i in range(2)]
    return T


def wall_polynomials(gammas) -> tuple[np.ndarray, np.ndarray]:
    """Wall polynomials ``(A_n, B_n)`` for ``gamma_0 .. gamma_n``."""
    g = as_poly(gammas)
    n = len(g) - 1
    T = transfer_polynomials(g)
    A = -T[1][0][1:]
    B = T[1][1]
    out_a = np.zeros(n + 1, complex)
    out_b = np.zeros(n + 1, complex)
    out_a[: min(len(A), n + 1)] = A[: n + 1]
    out_b[: min(len(B), n + 1)] = B[: n + 1]
    return out_a, out_b


def schur_approximant(gammas) -> tuple[np.ndarray, np.ndarray]:
    """``(A, B)`` with ``f^[n] = A/B``; ``gamma_j(A/B) = gamma_j`` for ``j <= n`` and 0 beyond."""
    g = gammas.alphas if isinstance(gammas, VerblunskySeq) else gammas
    if len(np.atleast_1d(g)) == 0:
        return np.zeros(1, complex), np.ones(1, complex)
    return wall_polynomials(g)


def wall_identity_residual(gammas, z: complex) -> float:
    """``|B* B - A* A - z^n prod rho_j^2|`` at ``z``; zero by ``det T = z^{n+1}``."""
    g = as_poly(gammas)
    n = len(g) - 1
    A, B = wall_polynomials(g)
    lhs = polyval(reversed_poly(B, n), z) * polyval(B, z) - polyval(reversed_poly(A, n), z) * polyval(A, z)
    rhs = z**n * np.prod(1 - np.abs(g) ** 2)
    return float(abs(lhs - rhs))


def schur_function_series(alpha, order: int) -> PowerSeries:
    """Taylor series of the Schur function whose parameters are ``alpha`` then zeros."""
    A, B = schur_approximant(as_alpha(alpha))
    return PowerSeries.from_rational(A, B, order)


def khrushchev_product(alpha, n: int, K: int) -> PowerSeries:
    """Series of ``b_n f_n`` with ``b_n = phi_n / phi_n^*`` and ``f_n`` the ``n``-th Schur iterate.

    The measure is the one with Verblunsky coefficients ``alpha`` followed by zeros.
    """
    alpha = as_alpha(alpha)
    if n >= len(alpha):
        raise IndexError("need n < len(alpha)")
    fam = szego_forward(alpha.alphas[:n])
    Phi, PhiStar = fam.Phi[n], fam.PhiStar[n]
    assert abs(PhiStar[0] - 1) < 1e-12
    b = PowerSeries.from_rational(Phi, PhiStar, K)
    return b * schur_function_series(alpha.alphas[n:], K)


def schur_iterate_boundary(alpha, n: int, grid_size: int = 1024, depth: int = WALL_DEPTH) -> np.ndarray:
    """Boundary values of ``f_n`` from the Wall rational of the tail ``alpha_n, alpha_{n+1}, ...``."""
    alpha = as_alpha(alpha)
    tail = alpha.alphas[n : n + min(len(alpha) - n, depth)]
    z = np.exp(1j * grid_angles(grid_size))
    if len(tail) == 0:
        return np.zeros(grid_size, complex)
    A, B = wall_polynomials(tail)
    return polyval(A, z) / polyval(B, z)


def schur_l2_diagnostics(alpha, n: int, grid_size: int = 1024) -> float:
    """``int |f_n(e^{i theta})|^2 d theta / 2 pi`` for the ``n``-th Schur iterate."""
    alpha = as_alpha(alpha)
    if n > len(alpha):
        raise IndexError("need n <= len(alpha)")
    vals = schur_iterate_boundary(alpha, n, grid_size)
    return float(np.mean(np.abs(vals) ** 2))


def blaschke_boundary(alpha, n: int, grid_size: int = 1024) -> np.ndarray:
    """``b_n = phi_n / phi_n^*`` on the circle; unimodular there."""
    fam = szego_forward(as_alpha(alpha).alphas[:n])
    z = np.exp(1j * grid_angles(grid_size))
    return polyval(fam.Phi[n], z) / polyval(fam.PhiStar[n], z)


__all__ = [
    "schur_step",
    "schur_parameters",
    "schur_approximant",
    "wall_polynomials",
    "wall_identity_residual",
    "schur_function_series",
    "khrushchev_product",
    "schur_l2_diagnostics",
    "schur_iterate_boundary",
    "blaschke_boundary",
    "transfer_polynomials",
]
