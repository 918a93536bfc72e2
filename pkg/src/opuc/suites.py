"""Verification suites run by ``opuc verify``.

Each suite returns a list of :class:`Check` rows; a suite passes when every
row does.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import asymptotics, cmv, measure, periodic, recursion, schur, synthesis
from .szego_map import JacobiParams, geronimus_forward, geronimus_inverse
from .transfer import energy_identity_residual, transfer, weyl_bounds, weyl_residual, wronskian_identity
from .errors import SupportOutsideInterval


@dataclass(frozen=True)
class RunConfig:
    grid_size: int = 1024
    series_order: int = 16
    max_n: int = 10
    seed: int = 0
    samples: int = 100_000
    trials: int = 50
    tol: float = 1e-8
    output_format: str = "json"

    def __post_init__(self):
        for name in ("grid_size", "series_order", "max_n", "samples", "trials"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output_format must be json or csv")

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.Generator(np.random.Philox([self.seed, salt]))


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tol)

    def to_json(self) -> dict:
        return {"name": self.name, "residual": float(self.residual), "tol": self.tol, "passed": self.passed}


def random_alpha(rng, n: int, radius: float = 0.9) -> np.ndarray:
    """``n`` points uniform in the disk of the given radius."""
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def _max(xs) -> float:
    xs = list(xs)
    return float(max(xs)) if xs else 0.0


def suite_recursion_roundtrip(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(1)
    inv, grid = [], []
    for _ in range(cfg.trials):
        N = int(rng.integers(1, cfg.max_n + 1))
        a = random_alpha(rng, N)
        inv.append(np.abs(recursion.verblunsky_from_phi(recursion.monic(a)).alphas - a).max())
        # the quadrature leg uses moderate coefficients so the weight is resolved on the grid
        b = random_alpha(rng, N, 0.5)
        mu = synthesis.bernstein_szego(b, N, None)
        got = recursion.verblunsky_from_moments(measure.moments(mu, N + 2), N + 2).alphas
        grid.append(np.abs(got - np.append(b, [0, 0])).max())
    return [
        Check("inverse-szego-step", _max(inv), 1e-10),
        Check("bernstein-szego-moments-levinson", _max(grid), cfg.tol),
    ]


def suite_geronimus(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(2)
    res = []
    for _ in range(cfg.trials):
        N = int(rng.integers(1, min(cfg.max_n, 12) + 1))
        a = random_alpha(rng, N)
        c = synthesis.moments_from_verblunsky(a, N + 1)
        f = measure.schur_from_caratheodory(measure.caratheodory_series(c, N + 1))
        res.append(np.abs(schur.schur_parameters(f, N).alphas - a).max())
    return [Check("schur-parameters-equal-verblunsky", _max(res), cfg.tol)]


def suite_cmv_charpoly(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(3)
    cp, uni, band = [], [], []
    for _ in range(cfg.trials):
        N = int(rng.integers(1, min(cfg.max_n, 12) + 1))
        a = random_alpha(rng, N)
        cp.append(np.abs(cmv.char_poly(a, N) - recursion.monic(a)).max())
        t = np.append(a[:-1], np.exp(2j * np.pi * rng.random()))
        C = cmv.build_cmv(recursion.VerblunskySeq(t, True), N).dense
        uni.append(np.abs(C.conj().T @ C - np.eye(N)).max())
        i, j = np.indices(C.shape)
        band.append(np.abs(C[np.abs(i - j) > 2]).max() if N > 3 else 0.0)
    return [
        Check("charpoly-equals-phi", _max(cp), 1e-10),
        Check("five-diagonal", _max(band), 0.0),
        Check("unitary-truncation", _max(uni), 1e-12),
    ]


def suite_cd_formula(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(4)
    res = []
    for _ in range(cfg.trials):
        N = int(rng.integers(2, cfg.max_n + 2))
        a = random_alpha(rng, N)
        z, zeta = random_alpha(rng, 2, 1.2)
        n = int(rng.integers(0, N))
        d = recursion.cd_kernel(a, n, z, zeta, direct=True)
        res.append(abs(recursion.cd_kernel(a, n, z, zeta) - d) / max(1.0, abs(d)))
    return [Check("closed-form-vs-direct", _max(res), 1e-10)]


def suite_weyl(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(5)
    dets, wr, bound, energy = [], [], [], []
    for _ in range(cfg.trials):
        N = int(rng.integers(1, cfg.max_n + 1))
        a = random_alpha(rng, N)
        z = complex(random_alpha(rng, 1, 0.95)[0])
        T = transfer(a, N, z)
        # ad - bc cancels at the scale ||T||^2
        dets.append(abs(T.det - z**N) / max(1.0, np.linalg.norm(T.matrix) ** 2))
        wr.append(np.abs(wronskian_identity(a, N)).max())
        F = synthesis.bs_caratheodory(a, N, z)
        for n in range(N, N + 4):
            first, second = weyl_residual(np.append(a, np.zeros(4)), n, z, F)
            b1, b2 = weyl_bounds(n, z)
            bound.append(max(first - b1, second - b2, 0.0))
        r = complex(*rng.normal(size=2))
        energy.append(energy_identity_residual(a, N, z, r) / (1 + abs(r) ** 2))
    return [
        Check("det-transfer", _max(dets), 1e-10),
        Check("energy-identity", _max(energy), 1e-8),
        Check("weyl-bounds-excess", _max(bound), 0.0),
        Check("wronskian-identity", _max(wr), 1e-10),
    ]


def suite_toeplitz(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(6)
    res = []
    for _ in range(cfg.trials):
        n = int(rng.integers(1, min(cfg.max_n, 12) + 1))
        a = random_alpha(rng, n, 0.8)
        c = synthesis.moments_from_verblunsky(a, n)
        g, p = asymptotics.toeplitz_det(c, n)
        res.append(abs(g - p) / p)
    c = synthesis.moments_from_verblunsky([0.5, 1 / 3], 2)
    closed = max(abs(asymptotics.toeplitz_det(c, 1)[0] - 0.75), abs(asymptotics.toeplitz_det(c, 2)[0] - 0.5))
    return [Check("closed-cases", closed, 1e-12), Check("gram-vs-product", _max(res), 1e-8)]


def suite_strong_szego(cfg: RunConfig) -> list[Check]:
    bs = synthesis.bernstein_szego([0.5], 1, cfg.grid_size)
    lhs, rhs = asymptotics.strong_szego_check(bs, 5)
    mu = measure.CircleMeasure.from_weight(lambda t: 1 + 0.5 * np.cos(t), cfg.grid_size)
    l2, r2 = asymptotics.strong_szego_check(mu, 40)
    return [
        Check("bernstein-szego-closed-form", max(abs(lhs - 4 / 3), abs(rhs - 4 / 3)), 1e-6),
        Check("smooth-weight-dual-route", abs(l2 - r2) / r2, 1e-3),
    ]


def suite_aleksandrov(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(7)
    avg, conj = [], []
    for _ in range(cfg.trials):
        N = int(rng.integers(1, cfg.max_n + 1))
        a = random_alpha(rng, N)
        for k in (1, 2, 3):
            avg.append(abs(synthesis.aleksandrov_average(a, k, 64)))
        lam = np.exp(2j * np.pi * rng.random())
        conj.append(cmv.aleksandrov_conjugation_check(a, lam, N))
    return [Check("conjugation", _max(conj), 1e-12), Check("lambda-average", _max(avg), 1e-6)]


def suite_periodic_bands(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(8)
    spec = periodic.PeriodicSpec.geronimus(0.5)
    bs = periodic.band_structure(spec, max(cfg.grid_size, 512))
    edges = max(abs(bs.bands[0][0] - np.pi / 3), abs(bs.bands[-1][1] - 5 * np.pi / 3))
    masses, real = [], []
    for p in (2, 4, 6):
        for _ in range(3):
            sp = periodic.PeriodicSpec(random_alpha(rng, p, 0.8))
            b = periodic.band_structure(sp, max(cfg.grid_size, 512))
            masses.append(np.abs(np.array(b.band_masses) - 1 / p).max())
            th = 2 * np.pi * np.arange(cfg.grid_size) / cfg.grid_size
            real.append(np.abs(periodic.discriminant(sp, np.exp(1j * th)).imag).max())
    return [
        Check("band-masses", _max(masses), 1e-6),
        Check("discriminant-real", _max(real), 1e-10),
        Check("geronimus-edges", edges, 1e-8),
    ]


def suite_szego_map(cfg: RunConfig) -> list[Check]:
    rng = cfg.rng(9)
    n = 6
    cheb1 = JacobiParams(np.r_[np.sqrt(2), np.ones(n - 1)], np.zeros(n))
    cheb2 = JacobiParams(np.ones(n), np.zeros(n))
    alpha2 = np.zeros(2 * n)
    alpha2[1::2] = [-1 / (k + 1) for k in range(1, n + 1)]
    e1 = max(
        np.abs(geronimus_inverse(cheb1).alphas).max(),
        np.abs(geronimus_forward(np.zeros(2 * n)).a - cheb1.a).max(),
    )
    e2 = max(
        np.abs(geronimus_inverse(cheb2).alphas - alpha2).max(),
        np.abs(geronimus_forward(alpha2).a - 1).max(),
    )
    rt, tried = [], 0
    while len(rt) < cfg.trials and tried < 100 * cfg.trials:
        tried += 1
        k = int(rng.integers(1, 8))
        J = JacobiParams(rng.uniform(0.5, 1.5, k), rng.uniform(-0.5, 0.5, k))
        try:
            a = geronimus_inverse(J)
        except SupportOutsideInterval:
            continue
        J2 = geronimus_forward(a)
        rt.append(max(np.abs(J2.a - J.a).max(), np.abs(J2.b - J.b).max()))
    return [
        Check("chebyshev-first-kind", e1, 1e-12),
        Check("chebyshev-second-kind", e2, 1e-12),
        Check("forward-inverse-roundtrip", _max(rt), 1e-10),
    ]


def suite_haar(cfg: RunConfig, n: int = 5) -> list[Check]:
    s = np.abs(cmv.haar_samples(n, cfg.samples, cfg.seed)) ** 2
    mean = s.mean(axis=0)
    se = s.std(axis=0, ddof=1) / np.sqrt(cfg.samples)
    expected = 1 / (n - np.arange(n))
    checks = []
    for j in range(n - 1):
        checks.append(Check(f"mean-abs2-alpha{j}-zscore", abs(mean[j] - expected[j]) / se[j], 3.0))
    checks.append(Check(f"terminal-unimodular", float(np.abs(s[:, -1] - 1).max()), 1e-12))
    return checks


SUITES = {
    "recursion-roundtrip": suite_recursion_roundtrip,
    "geronimus": suite_geronimus,
    "cmv-charpoly": suite_cmv_charpoly,
    "cd-formula": suite_cd_formula,
    "weyl": suite_weyl,
    "toeplitz": suite_toeplitz,
    "strong-szego": suite_strong_szego,
    "aleksandrov": suite_aleksandrov,
    "periodic-bands": suite_periodic_bands,
    "szego-map": suite_szego_map,
    "haar": suite_haar,
}


def run_suite(name: str, cfg: RunConfig) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return sorted(SUITES[name](cfg), key=lambda c: c.name)
