"""CMV matrices from Theta-block factors, characteristic polynomials,
zeros, paraorthogonal polynomials, Aleksandrov conjugation, spectral
measures of unitary truncations, and Haar-distributed coefficients."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceError, NotUnitary
from .measure import CircleMeasure
from .poly import pmul, polyval, padd
from .recursion import VerblunskySeq, as_alpha

ZERO_CLUSTER_TOL = 1e-8


def theta_block(alpha: complex) -> np.ndarray:
    """The symmetric unitary ``[[conj(a), rho], [rho, -a]]``."""
    rho = np.sqrt(max(1 - abs(alpha) ** 2, 0.0))
    return np.array([[np.conj(alpha), rho], [rho, -alpha]], dtype=complex)


def _direct_sum(blocks_at, size):
    out = np.zeros((size, size), dtype=complex)
    for start, blk in blocks_at:
        k = min(blk.shape[0], size - start)
        out[start : start + k, start : start + k] = blk[:k, :k]
    return out


def lm_factors(alphas, size: int, lam: complex = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """``L = Theta(a_0) + Theta(a_2) + ...`` and ``M = lam + Theta(a_1) + Theta(a_3) + ...``.

    Coefficients beyond the supplied ones are taken to be zero.
    """
    a = np.zeros(size + 1, dtype=complex)
    given = np.asarray(alphas, dtype=complex)[: size + 1]
    a[: len(given)] = given
    L = _direct_sum([(j, theta_block(a[j])) for j in range(0, size, 2)], size)
    M = _direct_sum([(0, np.array([[lam]], dtype=complex))] + [(j, theta_block(a[j])) for j in range(1, size, 2)], size)
    return L, M


@dataclass(frozen=True)
class CMVMatrix:
    """Finite ``N x N`` window of ``C = L M`` (or ``M L`` when ``transposed``)."""

    alpha: VerblunskySeq
    N: int
    L: np.ndarray
    M: np.ndarray
    dense: np.ndarray
    transposed: bool = False

    def band(self) -> list[tuple[int, int, complex]]:
        r, c = np.nonzero(self.dense)
        return [(int(i), int(j), complex(self.dense[i, j])) for i, j in zip(r, c)]

    def band_json(self) -> list:
        return [[i, j, [v.real, v.imag]] for i, j, v in self.band()]

    def is_unitary(self, tol: float = 1e-12) -> bool:
        eye = np.eye(self.N)
        d = self.dense
        return bool(np.abs(d.conj().T @ d - eye).max() < tol and np.abs(d @ d.conj().T - eye).max() < tol)


def build_cmv(alpha, N: int | None = None, transposed: bool = False, pad: bool = False) -> CMVMatrix:
    """Top-left ``N x N`` block of the CMV matrix.

    The products are formed two rows/columns wider than ``N`` so the window
    is the genuine truncation of the semi-infinite ``L M`` rather than a
    product of truncated factors.
    """
    alpha = as_alpha(alpha)
    N = len(alpha) if N is None else N
    if N > len(alpha) and not pad:
        raise ValueError(f"N = {N} exceeds the {len(alpha)} supplied coefficients (pass pad=True)")
    L, M = lm_factors(alpha.alphas, N + 2)
    full = M @ L if transposed else L @ M
    return CMVMatrix(alpha, N, L[:N, :N], M[:N, :N], full[:N, :N], transposed)


def _hessenberg_charpoly(H: np.ndarray) -> np.ndarray:
    """Characteristic polynomial of an upper Hessenberg matrix by the
    standard leading-minor recurrence."""
    n = H.shape[0]
    p = [np.ones(1, dtype=complex)]
    for k in range(1, n + 1):
        pk = padd(pmul([-H[k - 1, k - 1], 1.0], p[k - 1]), np.zeros(1))
        prod = 1.0 + 0j
        for i in range(k - 1, 0, -1):
            prod *= H[i, i - 1]
            pk = padd(pk, -prod * H[i - 1, k - 1] * p[i - 1])
        p.append(pk)
    return p[n]


def char_poly(alpha, N: int) -> np.ndarray:
    """``det(z - C^(N))``, equal to ``Phi_N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    C = build_cmv(alpha, N).dense
    H = scipy.linalg.hessenberg(C)
    p = _hessenberg_charpoly(H)
    p[-1] = 1.0
    return p


def _eigvals(C: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.eigvals(C)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from exc


def phi_zeros(alpha, N: int) -> np.ndarray:
    """Zeros of ``Phi_N`` (with multiplicity) as eigenvalues of ``C^(N)``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return _eigvals(build_cmv(alpha, N).dense)


def cluster_zeros(zeros, tol: float = ZERO_CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Group numerically coincident zeros into ``(centre, multiplicity)`` pairs."""
    out: list[list] = []
    for z in sorted(np.asarray(zeros, dtype=complex), key=lambda v: (v.real, v.imag)):
        for grp in out:
            if abs(grp[0] - z) < tol:
                grp[1].append(z)
                break
        else:
            out.append([z, [z]])
    return [(complex(np.mean(g)), len(g)) for _, g in out]


def paraorthogonal_poly(alpha, N: int, beta: complex) -> np.ndarray:
    """``z Phi_{N-1} - conj(beta) Phi*_{N-1}``."""
    from .recursion import szego_forward

    fam = szego_forward(as_alpha(alpha).alphas[: N - 1] if N > 1 else [])
    P, Ps = fam.Phi[N - 1], fam.PhiStar[N - 1]
    return padd(np.concatenate([[0], P]), -np.conj(beta) * Ps)


def paraorthogonal_zeros(alpha, N: int, beta: complex) -> np.ndarray:
    """Zeros of the paraorthogonal polynomial: eigenvalues of the unitary
    truncation with ``alpha_{N-1}`` replaced by ``beta``."""
    if abs(abs(beta) - 1) > 1e-12:
        raise ValueError("beta must be unimodular")
    a = np.zeros(N, dtype=complex)
    given = as_alpha(alpha).alphas[: N - 1]
    a[: len(given)] = given
    a[N - 1] = beta
    seq = VerblunskySeq(a, terminal_unimodular=True)
    return _eigvals(build_cmv(seq, N).dense)


def aleksandrov_conjugation_check(alpha, lam: complex, N: int) -> float:
    """Max-entry gap between ``D C({lam a}) D^{-1}`` and ``L({a}) M'({a})``.

    ``D = diag(1, 1/lam, 1, 1/lam, ...)``. With the ``conj(a)`` corner of
    :func:`theta_block`, the matching ``M'`` carries ``conj(lam)`` in its
    top-left slot.
    """
    if abs(abs(lam) - 1) > 1e-12:
        raise ValueError("lambda must be unimodular")
    a = as_alpha(alpha).alphas
    size = N + 2
    L1, M1 = lm_factors(lam * a, size)
    lhs_full = L1 @ M1
    L2, M2 = lm_factors(a, size, lam=np.conj(lam))
    rhs_full = L2 @ M2
    d = np.array([1.0 if k % 2 == 0 else 1 / lam for k in range(size)], dtype=complex)
    lhs_full = (d[:, None] * lhs_full) / d[None, :]
    return float(np.abs(lhs_full[:N, :N] - rhs_full[:N, :N]).max())


def spectral_measure(alpha, N: int | None = None, grid_size: int = 1024) -> CircleMeasure:
    """Point measure of ``delta_0`` for the unitary truncation (terminal ``alpha_{N-1}``)."""
    alpha = as_alpha(alpha)
    if not alpha.terminal_unimodular:
        raise NotUnitary("spectral_measure needs a terminal unimodular coefficient")
    N = len(alpha) if N is None else N
    if N != len(alpha):
        raise ValueError("N must equal the sequence length")
    C = build_cmv(alpha, N).dense
    T, Z = scipy.linalg.schur(C, output="complex")
    eig = np.diag(T)
    masses = np.abs(Z[0, :]) ** 2
    atoms = tuple((float(np.angle(e) % (2 * np.pi)), float(m)) for e, m in zip(eig, masses))
    mu = CircleMeasure(grid_size, np.zeros(grid_size), atoms)
    return mu.normalized()


def _rng(seed):
    return np.random.Generator(np.random.Philox(seed))


def haar_samples(n: int, count: int, seed: int = 0) -> np.ndarray:
    """``count x n`` array of Verblunsky coefficients of Haar-random ``U(n)``.

    ``alpha_j`` (``j < n-1``) has density ``(k/pi)(1 - |a|^2)^(k-1)`` with
    ``k = n - j - 1``; ``alpha_{n-1}`` is uniform on the circle.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    u = rng.random((count, n))
    phase = np.exp(2j * np.pi * rng.random((count, n)))
    k = (n - np.arange(n) - 1).astype(float)
    r2 = np.ones((count, n))
    inner = k > 0
    r2[:, inner] = 1 - u[:, inner] ** (1 / k[inner])
    return np.sqrt(r2) * phase


def haar_sample(n: int, seed: int = 0) -> VerblunskySeq:
    return VerblunskySeq(haar_samples(n, 1, seed)[0], terminal_unimodular=True)


def eval_residual(P, zeros) -> float:
    return float(np.max(np.abs(polyval(P, np.asarray(zeros)))) / np.max(np.abs(P)))
