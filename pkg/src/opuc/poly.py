"""Dense complex polynomials and truncated power series.

Polynomials are plain 1-D complex numpy arrays, coefficients ordered
low-to-high (``p[k]`` multiplies ``z**k``).  Truncated Taylor series get a
small immutable wrapper because their arithmetic must never read past the
truncation order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def as_poly(p) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(p, dtype=complex))
    if arr.ndim != 1:
        raise ValueError("polynomial must be a 1-D coefficient vector")
    return arr.copy()


def degree(p, tol: float = 0.0) -> int:
    p = np.asarray(p)
    nz = np.nonzero(np.abs(p) > tol)[0]
    return int(nz[-1]) if nz.size else -1


def trim(p, tol: float = 0.0) -> np.ndarray:
    d = degree(p, tol)
    return as_poly(p)[: max(d, 0) + 1]


def polyval(p, z):
    """Horner evaluation; ``z`` may be an array."""
    p = np.asarray(p, dtype=complex)
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in p[::-1]:
        out = out * z + c
    return out


def padd(p, q) -> np.ndarray:
    n = max(len(p), len(q))
    out = np.zeros(n, dtype=complex)
    out[: len(p)] += p
    out[: len(q)] += q
    return out


def pmul(p, q) -> np.ndarray:
    return np.convolve(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))


def shift(p, k: int = 1) -> np.ndarray:
    """Multiply by ``z**k``."""
    return np.concatenate([np.zeros(k, dtype=complex), np.asarray(p, dtype=complex)])


def reversed_poly(p, n: int) -> np.ndarray:
    """The degree-``n`` reversal ``z**n * conj(p(1/conj(z)))``."""
    p = as_poly(p)
    if degree(p) > n:
        raise ValueError(f"degree {degree(p)} exceeds reversal order {n}")
    out = np.zeros(n + 1, dtype=complex)
    out[: len(p)] = p[: n + 1]
    return np.conj(out[::-1])


def to_json(p) -> list:
    return [[float(c.real), float(c.imag)] for c in np.asarray(p, dtype=complex)]


def from_json(data) -> np.ndarray:
    return np.array([complex(*c) if isinstance(c, (list, tuple)) else complex(c) for c in data])


@dataclass(frozen=True)
class PowerSeries:
    """Taylor coefficients ``a_0 .. a_K`` about the origin; ``order`` is K."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = as_poly(self.coeffs)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def from_poly(cls, p, order: int) -> "PowerSeries":
        c = np.zeros(order + 1, dtype=complex)
        p = np.asarray(p, dtype=complex)[: order + 1]
        c[: len(p)] = p
        return cls(c)

    @classmethod
    def from_rational(cls, num, den, order: int) -> "PowerSeries":
        return cls.from_poly(num, order) / cls.from_poly(den, order)

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return PowerSeries(self.coeffs[: order + 1])

    def _common(self, other):
        if isinstance(other, PowerSeries):
            k = min(self.order, other.order)
            return self.coeffs[: k + 1], other.coeffs[: k + 1]
        b = np.zeros_like(self.coeffs)
        b[0] = other
        return self.coeffs, b

    def __add__(self, other):
        a, b = self._common(other)
        return PowerSeries(a + b)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def __sub__(self, other):
        a, b = self._common(other)
        return PowerSeries(a - b)

    def __rsub__(self, other):
        a, b = self._common(other)
        return PowerSeries(b - a)

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self.coeffs * other)
        a, b = self._common(other)
        return PowerSeries(np.convolve(a, b)[: len(a)])

    __rmul__ = __mul__

    def reciprocal(self) -> "PowerSeries":
        a = self.coeffs
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        b = np.zeros_like(a)
        b[0] = 1.0 / a[0]
        for n in range(1, len(a)):
            b[n] = -np.dot(a[1 : n + 1], b[n - 1 :: -1][:n]) / a[0]
        return PowerSeries(b)

    def __truediv__(self, other):
        if np.isscalar(other):
            return PowerSeries(self.coeffs / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return other * self.reciprocal()

    def divide_by_z(self) -> "PowerSeries":
        """``(g - g(0))/z`` is not implied: the constant term must already vanish."""
        if abs(self.coeffs[0]) > 1e-12 * max(1.0, np.max(np.abs(self.coeffs))):
            raise ValueError("series has nonzero constant term; cannot divide by z")
        return PowerSeries(self.coeffs[1:]) if self.order >= 1 else PowerSeries([0.0])

    def times_z(self) -> "PowerSeries":
        return PowerSeries(np.concatenate([[0.0], self.coeffs[:-1]]))

    def __call__(self, z):
        return polyval(self.coeffs, z)

    def __len__(self):
        return len(self.coeffs)
