import numpy as np
import pytest
from hypothesis import given

from conftest import alphas, disk_points
from opuc.errors import NotStrictlyInside
from opuc.measure import MomentSeq, inner_product, moments
from opuc.poly import polyval, reversed_poly
from opuc.recursion import (
    VerblunskySeq,
    cd_kernel,
    inverse_szego_step,
    monic,
    szego_forward,
    verblunsky_from_moments,
    verblunsky_from_phi,
)
from opuc.synthesis import bernstein_szego

PHI2 = np.array([-1 / 3, -1 / 3, 1])


def test_reversal_examples():
    np.testing.assert_allclose(reversed_poly([1], 2), [0, 0, 1])
    np.testing.assert_allclose(reversed_poly([-0.5, 1], 1), [1, -0.5])
    np.testing.assert_allclose(reversed_poly(PHI2, 2), [1, -1 / 3, -1 / 3])


def test_forward_examples():
    fam = szego_forward([0.5])
    np.testing.assert_allclose(fam.Phi[1], [-0.5, 1])
    assert fam.norms[1] == pytest.approx(np.sqrt(0.75))
    np.testing.assert_allclose(monic([0.5, 1 / 3]), PHI2, atol=1e-15)
    fam = szego_forward([0, 0, 0])
    for n in range(4):
        np.testing.assert_array_equal(fam.Phi[n], np.eye(n + 1)[n])
    np.testing.assert_array_equal(fam.norms, 1)


def test_inverse_examples():
    a, P = inverse_szego_step(PHI2)
    assert a == pytest.approx(1 / 3)
    np.testing.assert_allclose(P, [-0.5, 1])
    a, P = inverse_szego_step([0, 1])
    assert a == 0 and np.allclose(P, [1])
    with pytest.raises(NotStrictlyInside):
        inverse_szego_step([-1, 1])


def test_moments_examples():
    np.testing.assert_allclose(verblunsky_from_moments(MomentSeq([1, 0, 0, 0])).alphas, 0)
    np.testing.assert_allclose(verblunsky_from_moments(MomentSeq([1, 0.5, 0.25])).alphas, [0.5, 0], atol=1e-15)
    np.testing.assert_allclose(verblunsky_from_moments(MomentSeq([1, 0.5, 0.5])).alphas, [0.5, 1 / 3], atol=1e-15)


def test_cd_examples():
    assert cd_kernel([0, 0, 0], 2, 0, 0) == pytest.approx(1)
    z, w = 0.3 + 0.1j, -0.2 + 0.5j
    assert cd_kernel([0, 0, 0, 0], 3, z, w) == pytest.approx(sum((z * np.conj(w)) ** j for j in range(4)))
    assert cd_kernel([0.5, 1 / 3], 1, 0.3, 0.3) == pytest.approx(1 + 0.2**2 / 0.75)


def test_alpha_validation():
    with pytest.raises(ValueError):
        VerblunskySeq(np.array([0.5, 1.0]))
    s = VerblunskySeq(np.array([0.5, 1.0]), terminal_unimodular=True)
    assert VerblunskySeq.from_json(s.to_json()).terminal_unimodular


@given(alphas(max_size=15))
def test_phi_roundtrip(a):
    np.testing.assert_allclose(verblunsky_from_phi(monic(a)).alphas, a, atol=1e-9)


@given(alphas(max_size=10))
def test_reversal_identity(a):
    fam = szego_forward(a)
    n = len(a)
    np.testing.assert_allclose(fam.PhiStar[n], reversed_poly(fam.Phi[n], n), atol=1e-12)
    # |Phi_n| = |Phi_n^*| on the circle
    z = np.exp(1j * np.linspace(0, 6, 7))
    np.testing.assert_allclose(np.abs(polyval(fam.Phi[n], z)), np.abs(polyval(fam.PhiStar[n], z)), rtol=1e-9)


@given(alphas(max_size=6, radius=0.6))
def test_orthogonality_on_grid(a):
    # independent oracle: moments of the sampled Bernstein-Szego weight
    n = len(a)
    c = moments(bernstein_szego(a, n, 1024), n)
    fam = szego_forward(a)
    G = np.array([[inner_product(fam.Phi[j], fam.Phi[k], c) for k in range(n + 1)] for j in range(n + 1)])
    np.testing.assert_allclose(G, np.diag(fam.norms**2), atol=1e-10)


@given(alphas(min_size=2, max_size=10), disk_points(1.3), disk_points(1.3))
def test_cd_closed_form(a, z, w):
    n = len(a) - 1
    d = cd_kernel(a, n, z, w, direct=True)
    assert abs(cd_kernel(a, n, z, w) - d) <= 1e-9 * max(1, abs(d))
