import numpy as np
import pytest
from hypothesis import given, strategies as st

from opuc.errors import SupportOutsideInterval
from opuc.measure import moments
from opuc.synthesis import bernstein_szego
from opuc.szego_map import (
    JacobiParams,
    LineMeasure,
    geronimus_forward,
    geronimus_inverse,
    jacobi_opr,
    oprl_from_opuc,
    szego_map,
)

CHEB1 = JacobiParams(np.r_[np.sqrt(2), np.ones(5)], np.zeros(6))
CHEB2 = JacobiParams(np.ones(6), np.zeros(6))
ALPHA2 = np.array([0 if k % 2 == 0 else -1 / ((k + 1) // 2 + 1) for k in range(12)])

real_alphas = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.floats(-0.9, 0.9), min_size=2 * n, max_size=2 * n).map(np.array)
)


def test_szego_map_examples():
    mu = szego_map(LineMeasure.chebyshev(256))
    np.testing.assert_allclose(moments(mu, 4).c, [1, 0, 0, 0, 0], atol=1e-15)
    mu = szego_map(LineMeasure.point_mass(2.0, 64))
    assert mu.point_masses == ((0.0, 1.0),)
    mu = szego_map(LineMeasure.point_mass(0.0, 64))
    assert [m for _, m in mu.point_masses] == [0.5, 0.5]


def test_second_moment_consistency():
    rng = np.random.default_rng(7)
    for _ in range(5):
        coef = rng.normal(size=4) * 0.2
        rho = LineMeasure.from_density(
            lambda x: (1 + coef[0] * x + coef[1] * x**2 + 0.05 * x**3) ** 2 + 0.1,
            512, atoms=((rng.uniform(-2, 2), 0.3),))
        mu = szego_map(rho)
        lhs = rho.integrate_function(lambda x: x**2)
        rhs = mu.integrate_function(lambda t: 4 * np.cos(t) ** 2).real
        assert lhs == pytest.approx(rhs, abs=1e-9)
        # the image is even, so its moments are real
        assert np.abs(moments(mu, 6).c.imag).max() < 1e-12


def test_oprl_examples():
    np.testing.assert_allclose(oprl_from_opuc(np.zeros(2), 1), [0, 1], atol=1e-15)
    np.testing.assert_allclose(oprl_from_opuc(np.zeros(4), 2), [-2, 0, 1], atol=1e-15)
    P1 = oprl_from_opuc([0.5, 0, 0, 0], 1)
    # Gram oracle: int x d rho = int 2 cos(theta) d mu = 2 Re c_1
    c1 = moments(bernstein_szego([0.5], 1, 512), 1).c[1].real
    np.testing.assert_allclose(P1, [-2 * c1, 1], atol=1e-12)
    np.testing.assert_allclose(P1, [-1, 1], atol=1e-12)


def test_forward_examples():
    J = geronimus_forward(np.zeros(12))
    np.testing.assert_allclose(J.a, CHEB1.a, atol=1e-15)
    np.testing.assert_allclose(J.b, 0, atol=1e-15)
    J = geronimus_forward(ALPHA2)
    np.testing.assert_allclose(J.a, 1, atol=1e-15)
    np.testing.assert_allclose(J.b, 0, atol=1e-15)


def test_inverse_examples():
    np.testing.assert_allclose(geronimus_inverse(CHEB1).alphas, 0, atol=1e-12)
    np.testing.assert_allclose(geronimus_inverse(CHEB2).alphas, ALPHA2, atol=1e-12)
    bad = JacobiParams(CHEB1.a, np.r_[3.0, np.zeros(5)])
    assert np.linalg.eigvalsh(bad.matrix()).max() > 2
    with pytest.raises(SupportOutsideInterval) as info:
        geronimus_inverse(bad)
    assert info.value.index == 1


def test_jacobi_opr_examples():
    assert jacobi_opr(CHEB2, 2, 0.0) == pytest.approx(-1)
    assert jacobi_opr(CHEB1, 0, 1.3) == 1
    assert jacobi_opr(JacobiParams([np.sqrt(2), 1], [0, 0]), 2, 2.0) == pytest.approx(2)


def test_validation():
    with pytest.raises(ValueError):
        JacobiParams([1, -1], [0, 0])
    with pytest.raises(ValueError):
        LineMeasure(6, np.ones(3))
    with pytest.raises(ValueError):
        geronimus_forward([0.5j, 0.1])
    J = JacobiParams.from_json(CHEB1.to_json())
    np.testing.assert_array_equal(J.a, CHEB1.a)


@given(real_alphas)
def test_jacobi_support(a):
    J = geronimus_forward(a)
    ev = np.linalg.eigvalsh(J.matrix())
    assert ev.min() >= -2 - 1e-9 and ev.max() <= 2 + 1e-9


@given(real_alphas)
def test_inverse_forward(a):
    np.testing.assert_allclose(geronimus_inverse(geronimus_forward(a)).alphas, a, atol=1e-8)


@given(real_alphas, st.floats(-2, 2))
def test_oprl_routes(a, x):
    # OPUC projection against the Jacobi three-term recurrence
    J = geronimus_forward(a)
    n = len(J)
    P = oprl_from_opuc(a, n)
    assert np.polynomial.polynomial.polyval(x, P) == pytest.approx(jacobi_opr(J, n, x), abs=1e-8)


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(
    st.lists(st.floats(0.5, 1.5), min_size=n, max_size=n), st.lists(st.floats(-0.5, 0.5), min_size=n, max_size=n))))
def test_forward_inverse(ab):
    J = JacobiParams(np.array(ab[0]), np.array(ab[1]))
    try:
        a = geronimus_inverse(J)
    except SupportOutsideInterval:
        return
    J2 = geronimus_forward(a)
    np.testing.assert_allclose(J2.a, J.a, atol=1e-10)
    np.testing.assert_allclose(J2.b, J.b, atol=1e-10)
