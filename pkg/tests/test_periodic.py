import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from conftest import alphas
from opuc.cmv import paraorthogonal_zeros
from opuc.periodic import (
    PeriodicSpec,
    band_structure,
    capacity_numeric,
    capacity_product,
    delta_theta,
    discriminant,
    dos_density,
    dos_grid,
    step_period,
    transfer_growth,
)

TH = np.linspace(0.1, 6.2, 9)


def test_discriminant_examples():
    free = PeriodicSpec(np.zeros(2))
    np.testing.assert_allclose(discriminant(free, np.exp(1j * TH)), 2 * np.cos(TH), atol=1e-14)
    half = PeriodicSpec.geronimus(0.5)
    np.testing.assert_allclose(discriminant(half, np.exp(1j * TH)), (8 * np.cos(TH) + 2) / 3, atol=1e-14)
    np.testing.assert_allclose(delta_theta(half, TH), (8 * np.cos(TH) + 2) / 3, atol=1e-14)
    np.testing.assert_allclose(delta_theta(half, TH, 1), -8 * np.sin(TH) / 3, atol=1e-13)
    with pytest.raises(ValueError):
        PeriodicSpec([0.1, 0.2, 0.3])


def test_normalized_det():
    spec = PeriodicSpec([0.3 + 0.1j, -0.2, 0.5j, 0.1])
    for z in (0.3 + 1.2j, -2.0, 0.7j):
        assert np.linalg.det(step_period(spec, z) * z ** (-2)) == pytest.approx(1)


def test_band_examples():
    bs = band_structure(PeriodicSpec(np.zeros(2)))
    np.testing.assert_allclose(bs.bands, [(0, np.pi), (np.pi, 2 * np.pi)], atol=1e-12)
    np.testing.assert_allclose(bs.band_masses, 0.5, atol=1e-10)
    assert all(g["closed"] for g in bs.to_json()["gaps"])
    bs = band_structure(PeriodicSpec.geronimus(0.5))
    np.testing.assert_allclose(bs.bands, [(np.pi / 3, np.pi), (np.pi, 5 * np.pi / 3)], atol=1e-8)
    np.testing.assert_allclose(bs.band_masses, 0.5, atol=1e-10)
    assert bs.merged() == [pytest.approx((np.pi / 3, 5 * np.pi / 3))]
    wide = band_structure(PeriodicSpec.geronimus(0.9))
    assert np.cos(wide.bands[0][0]) == pytest.approx(1 - 2 * 0.81, abs=1e-10)
    assert wide.bands[0][0] > bs.bands[0][0]


def test_density_examples():
    free = PeriodicSpec(np.zeros(4))
    np.testing.assert_allclose(dos_density(free, TH[1:-1]), 1, atol=1e-9)
    half = PeriodicSpec.geronimus(0.5)
    t = 2 * np.pi / 3
    h = 1e-5
    num = abs(delta_theta(half, t + h) - delta_theta(half, t - h)) / (2 * h)
    assert dos_density(half, t) == pytest.approx(num / np.sqrt(4 - (2 / 3) ** 2), rel=1e-8)
    total = sum(integrate.quad(lambda s: dos_density(half, s, strict=False), x, y)[0] for x, y in band_structure(half).bands)
    assert total / (2 * np.pi) == pytest.approx(1, abs=1e-6)
    with pytest.raises(ValueError):
        dos_density(half, 0.1)


def test_density_against_zero_counting():
    spec = PeriodicSpec([0.3 + 0.2j, -0.5, 0.1j, 0.6])
    N = 800
    th = np.angle(paraorthogonal_zeros(spec.sequence(N), N, 1.0)) % (2 * np.pi)
    for x, y in band_structure(spec).bands:
        lo, hi = x + 0.25 * (y - x), x + 0.6 * (y - x)
        expected = integrate.quad(lambda s: dos_density(spec, s, strict=False), lo, hi)[0] / (2 * np.pi)
        assert np.mean((th > lo) & (th < hi)) == pytest.approx(expected, abs=4e-3)


def test_capacity():
    spec = PeriodicSpec([0.3 + 0.1j, -0.4, 0.2j, 0.5])
    assert capacity_numeric(spec) == pytest.approx(capacity_product(spec), rel=1e-8)
    assert capacity_product(PeriodicSpec(np.zeros(2))) == 1


def test_gap_growth():
    spec = PeriodicSpec.geronimus(0.5)
    g = transfer_growth(spec, 0.0, 30)
    rates = g[1:] / g[:-1]
    assert rates[-1] > 1.5 and np.ptp(rates[10:]) < 1e-8
    inside = transfer_growth(spec, 2.0, 30)
    assert inside.max() < 10


def test_dos_grid_mass():
    th, d = dos_grid(PeriodicSpec.geronimus(0.5), 8192)
    assert np.mean(d) == pytest.approx(1, abs=2e-2)
    assert np.all(d[np.abs(np.cos(th) - 1) < 0.1] == 0)


@given(st.sampled_from([2, 4, 6]), st.data())
def test_band_masses_property(p, data):
    a = data.draw(alphas(min_size=p, max_size=p, radius=0.8))
    spec = PeriodicSpec(a)
    bs = band_structure(spec)
    np.testing.assert_allclose(bs.band_masses, 1 / p, atol=1e-6)
    th = np.linspace(0, 2 * np.pi, 64)
    assert np.abs(discriminant(spec, np.exp(1j * th)).imag).max() < 1e-10
    for (x, y) in bs.bands:
        assert np.all(np.abs(delta_theta(spec, np.linspace(x, y, 9))) <= 2 + 1e-8)
