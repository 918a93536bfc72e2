"""Transfer matrices, second-kind polynomials, Weyl solutions, zero
counting measures, Lyapunov exponents and the Thouless formula."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .cmv import build_cmv, phi_zeros
from .measure import CircleMeasure
from .poly import polyval
from .recursion import VerblunskySeq, as_alpha, orthonormal

RENORM_EVERY = 32
CIRCLE_CLEARANCE = 1e-3


def step_matrix(z: complex, a: complex) -> np.ndarray:
    """``A(z, a) = rho^{-1} [[z, -conj(a)], [-a z, 1]]``; ``det A = z``."""
    rho = np.sqrt(1 - abs(a) ** 2)
    return np.array([[z, -np.conj(a)], [-a * z, 1]], dtype=complex) / rho


@dataclass(frozen=True)
class TransferMatrix:
    matrix: np.ndarray
    n: int
    z: complex

    @property
    def det(self) -> complex:
        m = self.matrix
        return complex(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def apply(self, u) -> np.ndarray:
        return self.matrix @ np.asarray(u, dtype=complex)


def transfer(alpha, n: int, z: complex) -> TransferMatrix:
    """``T_n(z) = A(z, alpha_{n-1}) ... A(z, alpha_0)``."""
    alpha = as_alpha(alpha)
    if n > len(alpha):
        raise IndexError(f"n = {n} exceeds the {len(alpha)} available coefficients")
    T = np.eye(2, dtype=complex)
    for a in alpha.alphas[:n]:
        T = step_matrix(z, a) @ T
    return TransferMatrix(T, n, complex(z))


def second_kind(alpha, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``(psi_n, psi_n^*)``: orthonormal OPUC for the coefficients ``-alpha_j``."""
    alpha = as_alpha(alpha)
    if n > len(alpha):
        raise IndexError(f"n = {n} exceeds the {len(alpha)} available coefficients")
    return orthonormal(-alpha.alphas[:n], n)


def wronskian_identity(alpha, n: int) -> np.ndarray:
    """Coefficients of ``phi_n^* psi_n + phi_n psi_n^* - 2 z^n`` (zero in exact arithmetic)."""
    phi, phis = orthonormal(as_alpha(alpha).alphas[:n], n)
    psi, psis = second_kind(alpha, n)
    lhs = np.convolve(phis, psi) + np.convolve(phi, psis)
    lhs[n] -= 2
    return lhs


def weyl_residual(alpha, n: int, z: complex, F_value: complex) -> tuple[float, float]:
    """``(|F phi_n + psi_n|, |F phi_n^* - psi_n^*|)`` at ``z``."""
    if abs(z) >= 1:
        raise ValueError("Weyl residuals need |z| < 1")
    alpha = as_alpha(alpha)
    phi, phis = orthonormal(alpha.alphas[:n], n)
    psi, psis = second_kind(alpha, n)
    first = F_value * polyval(phi, z) + polyval(psi, z)
    second = F_value * polyval(phis, z) - polyval(psis, z)
    return float(abs(first)), float(abs(second))


def weyl_bounds(n: int, z: complex) -> tuple[float, float]:
    r = abs(z)
    return 2 * r**n / (1 - r), 2 * r ** (n + 1) / (1 - r)


def energy_identity_residual(alpha, n: int, z: complex, r: complex) -> float:
    """Mixed CD identity
    ``(1-|z|^2) sum_{j<n} |psi_j + r phi_j|^2 = 4 Re r + |psi_n^* - r phi_n^*|^2 - |psi_n + r phi_n|^2``.
    """
    alpha = as_alpha(alpha)
    lhs = 0.0
    for j in range(n):
        phi, _ = orthonormal(alpha.alphas[:j], j)
        psi, _ = second_kind(alpha, j)
        lhs += abs(polyval(psi, z) + r * polyval(phi, z)) ** 2
    lhs *= 1 - abs(z) ** 2
    phi, phis = orthonormal(alpha.alphas[:n], n)
    psi, psis = second_kind(alpha, n)
    rhs = (
        4 * np.real(r)
        + abs(polyval(psis, z) - r * polyval(phis, z)) ** 2
        - abs(polyval(psi, z) + r * polyval(phi, z)) ** 2
    )
    return float(abs(lhs - rhs))


def zero_counting_moments(alpha, n: int, L: int) -> tuple[np.ndarray, np.ndarray]:
    """``int z^l d nu_n`` for ``l = 1..L`` by power traces and by power sums of zeros."""
    if L < 1:
        raise ValueError("L must be >= 1")
    C = build_cmv(alpha, n).dense
    traces = np.empty(L, dtype=complex)
    P = np.eye(n, dtype=complex)
    for l in range(L):
        P = P @ C
        traces[l] = np.trace(P) / n
    zs = phi_zeros(alpha, n)
    sums = np.array([np.sum(zs ** (l + 1)) / n for l in range(L)])
    return traces, sums


@dataclass(frozen=True)
class ErgodicSpec:
    """Generator of Verblunsky sequences.

    kinds: ``iid-uniform-disk`` (``radius``), ``fixed-sequence`` (``values``),
    ``rotation-almost-periodic`` (``amplitude e^{2 pi i (frequency j + phase)}``)
    and ``sparse`` (``amplitude`` at the indices in ``pattern``, zero elsewhere).
    """

    kind: str
    length: int
    seed: int = 0
    radius: float = 0.5
    amplitude: float = 0.5
    frequency: float = (np.sqrt(5) - 1) / 2
    phase: float = 0.0
    pattern: tuple = field(default=())
    values: tuple = field(default=())

    KINDS = ("iid-uniform-disk", "fixed-sequence", "rotation-almost-periodic", "sparse")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {self.KINDS}")
        if self.length < 1:
            raise ValueError("length must be positive")
        if self.kind == "iid-uniform-disk" and not 0 <= self.radius < 1:
            raise ValueError("radius must lie in [0, 1)")
        if self.kind in ("rotation-almost-periodic", "sparse") and not 0 <= self.amplitude < 1:
            raise ValueError("amplitude must lie in [0, 1)")

    def generate(self) -> VerblunskySeq:
        n = self.length
        if self.kind == "iid-uniform-disk":
            rng = np.random.Generator(np.random.Philox(self.seed))
            r = self.radius * np.sqrt(rng.random(n))
            a = r * np.exp(2j * np.pi * rng.random(n))
        elif self.kind == "fixed-sequence":
            v = np.asarray(self.values, dtype=complex)
            if len(v) == 0:
                raise ValueError("fixed-sequence needs values")
            a = np.resize(v, n)
        elif self.kind == "rotation-almost-periodic":
            j = np.arange(n)
            a = self.amplitude * np.exp(2j * np.pi * (self.frequency * j + self.phase))
        else:
            a = np.zeros(n, dtype=complex)
            pat = self.pattern or tuple(2**k for k in range(int(np.log2(n)) + 1))
            idx = [p for p in pat if p < n]
            a[idx] = self.amplitude
        return VerblunskySeq(a)

    def log_rho_inf(self) -> float:
        """``log rho_inf``: the almost-sure mean of ``log rho_j`` for iid specs,
        the running average over the generated sequence otherwise."""
        if self.kind == "iid-uniform-disk":
            s = self.radius**2
            if s == 0:
                return 0.0
            # E log(1 - s U) with U uniform on [0, 1]
            return 0.5 * (-1 - (1 - s) * np.log1p(-s) / s)
        return float(np.mean(np.log(self.generate().rhos)))


def lyapunov(spec, z: complex, n: int | None = None) -> float:
    """``(1/n) log ||T_n(z)||`` (spectral norm), rescaling every few steps."""
    alpha = spec.generate() if isinstance(spec, ErgodicSpec) else as_alpha(spec)
    n = len(alpha) if n is None else n
    if n < 1 or n > len(alpha):
        raise ValueError("need 1 <= n <= length")
    T = np.eye(2, dtype=complex)
    logscale = 0.0
    for k, a in enumerate(alpha.alphas[:n], start=1):
        T = step_matrix(z, a) @ T
        if k % RENORM_EVERY == 0:
            s = np.abs(T).max()
            T /= s
            logscale += np.log(s)
    return float((logscale + np.log(np.linalg.norm(T, 2))) / n)


def thouless_rhs(nu: CircleMeasure, rho_inf: float, z: complex) -> float:
    """``-log rho_inf + int log|e^{i theta} - z| d nu``."""
    if abs(abs(z) - 1) < CIRCLE_CLEARANCE:
        raise ValueError("z is too close to the unit circle for the Thouless quadrature")
    pot = nu.integrate_function(lambda t: np.log(np.abs(np.exp(1j * np.asarray(t)) - z))).real
    return float(-np.log(rho_inf) + pot)


def mhaskar_saff_check(alpha, n: int) -> tuple[float, float]:
    """Mean and standard deviation of the moduli of the zeros of ``Phi_n``."""
    mods = np.abs(phi_zeros(alpha, n))
    return float(mods.mean()), float(mods.std())


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def lyapunov_series_csv(spec: ErgodicSpec, z: complex, ns) -> str:
    return to_csv(["n", "lyapunov"], [(int(n), lyapunov(spec, z, int(n))) for n in ns])


def moments_csv(moms) -> str:
    return to_csv(["l", "re", "im"], [(l + 1, float(m.real), float(m.imag)) for l, m in enumerate(moms)])
