import numpy as np
import pytest
from hypothesis import given

from conftest import alphas, disk_points
from opuc.errors import TerminalParameter
from opuc.measure import MomentSeq, caratheodory_series, schur_from_caratheodory
from opuc.poly import PowerSeries, polyval
from opuc.recursion import orthonormal
from opuc.schur import (
    blaschke_boundary,
    khrushchev_product,
    schur_approximant,
    schur_function_series,
    schur_l2_diagnostics,
    schur_parameters,
    schur_step,
    wall_identity_residual,
)
from opuc.synthesis import moments_from_verblunsky


def weighted_schur_series(a, n, K):
    """Schur series of |phi_n|^2 d mu from moment algebra alone."""
    c = moments_from_verblunsky(a, K + n + 1).c
    cm = lambda m: c[m] if m >= 0 else np.conj(c[-m])
    p, _ = orthonormal(a, n)
    cp = [sum(p[j] * np.conj(p[l]) * cm(k - j + l) for j in range(n + 1) for l in range(n + 1)) for k in range(K + 1)]
    return schur_from_caratheodory(caratheodory_series(MomentSeq(np.array(cp)), K))


def test_step_examples():
    g, f1 = schur_step(PowerSeries(np.zeros(4)))
    assert g == 0 and np.allclose(f1.coeffs, 0)
    g, f1 = schur_step(PowerSeries.constant(0.5, 4))
    assert g == 0.5 and np.allclose(f1.coeffs, 0)
    f = schur_function_series([0.5, 1 / 3], 6)
    np.testing.assert_allclose(f.coeffs[:2], [0.5, 0.25])
    g, f1 = schur_step(f)
    assert g == pytest.approx(0.5) and f1.coeffs[0] == pytest.approx(1 / 3)


def test_parameters_examples():
    np.testing.assert_allclose(schur_parameters(PowerSeries(np.zeros(5)), 5).alphas, 0)
    with pytest.raises(TerminalParameter) as info:
        schur_parameters(PowerSeries.constant(1, 4), 3)
    assert info.value.index == 0
    s = schur_parameters(PowerSeries.constant(1, 4), 3, strict=False)
    assert s.terminal_unimodular and len(s) == 1
    c = moments_from_verblunsky([0.5, 1 / 3], 8)
    f = schur_from_caratheodory(caratheodory_series(c, 8))
    np.testing.assert_allclose(schur_parameters(f, 6).alphas, [0.5, 1 / 3, 0, 0, 0, 0], atol=1e-12)


def test_approximant_examples():
    A, B = schur_approximant([0])
    assert polyval(A, 0.3) == 0
    A, B = schur_approximant([0.5])
    assert polyval(A, 0.3) / polyval(B, 0.3) == pytest.approx(0.5)
    A, B = schur_approximant([0.5, 1 / 3])
    z = 0.4 - 0.2j
    assert polyval(A, z) / polyval(B, z) == pytest.approx((0.5 + z / 3) / (1 + z / 6))


def test_khrushchev_examples():
    np.testing.assert_allclose(khrushchev_product([0, 0, 0], 1, 6).coeffs, 0)
    np.testing.assert_allclose(khrushchev_product([0.5, 0, 0], 1, 6).coeffs, 0)
    a = [0.5, 1 / 3]
    np.testing.assert_allclose(khrushchev_product(a, 1, 4).coeffs[:4], weighted_schur_series(a, 1, 4).coeffs, atol=1e-8)


def test_l2_diagnostics():
    assert schur_l2_diagnostics([0, 0, 0], 1) == 0
    assert schur_l2_diagnostics([0.5], 1) == 0
    a = 0.9 ** np.arange(1, 30)
    assert schur_l2_diagnostics(a, 10) < schur_l2_diagnostics(a, 2)


@given(alphas(max_size=10))
def test_geronimus_property(a):
    N = len(a)
    c = moments_from_verblunsky(a, N + 1)
    f = schur_from_caratheodory(caratheodory_series(c, N + 1))
    np.testing.assert_allclose(schur_parameters(f, N).alphas, a, atol=1e-8)


@given(alphas(max_size=8), disk_points())
def test_wall_identity(a, z):
    assert wall_identity_residual(a, z) < 1e-10


@given(alphas(max_size=8))
def test_approximant_parameters(a):
    A, B = schur_approximant(a)
    f = PowerSeries.from_rational(A, B, len(a) + 3)
    got = schur_parameters(f, len(a) + 3).alphas
    np.testing.assert_allclose(got, np.r_[a, 0, 0, 0], atol=1e-8)


@given(alphas(min_size=2, max_size=7))
def test_khrushchev_property(a):
    n = min(len(a) - 1, 4)
    K = 12
    np.testing.assert_allclose(khrushchev_product(a, n, K).coeffs[:K], weighted_schur_series(a, n, K).coeffs, atol=1e-8)


@given(alphas(max_size=6))
def test_blaschke_unimodular(a):
    np.testing.assert_allclose(np.abs(blaschke_boundary(a, len(a), 64)), 1, atol=1e-9)
