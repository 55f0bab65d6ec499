"""Acceptance criteria 1-9. Each test prints a ``CRITERION n: PASS/FAIL`` line.

Run directly with ``python3 -m tests.test_acceptance`` or through pytest.
"""

import math
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twowaysec.fullduplex import (GaussianChannel, GaussianSweep, ModuloChannel, backward_key_rate,
                                  backward_key_region, fg_region, fm_region, he_yener_rate, he_yener_region)
from twowaysec.geometry import contains
from twowaysec.halfduplex import HalfDuplexGaussianParams, SchedulingProbs, hg_bounds
from twowaysec.infotheory import binary_entropy as H
from twowaysec.nearfield.classifier import OracleClassifier
from twowaysec.nearfield.model import GeometryConfig, PowerPolicy, theta_for_ratio
from twowaysec.nearfield.rates import (SimulationPlan, asymptotic_rmax, optimize_secrecy, rate_tdm,
                                       rate_twoway)
from twowaysec.nearfield.stats import estimate_stats_tdm, estimate_stats_twoway, twoway_variant_stats

from .mc_oracle import leakage_monte_carlo

POLICY = PowerPolicy(1.0, 100.0)


def _asymptote():
    rep = asymptotic_rmax()
    return rep.argmax_params["p_t"], rep.r_s


def test_c1_noiseless_modulo_corners(criterion):
    t0 = time.perf_counter()
    region = fm_region(ModuloChannel(0, 0, 0), 0.05)
    dt = time.perf_counter() - t0
    ok = contains(region, (1, 0), 0) and contains(region, (0, 1), 0) and dt < 1.0
    criterion(1, ok, f"(1,0) and (0,1) in region, {dt:.3f} s")
    assert ok


def test_c2_fig1_corner_points(criterion):
    t0 = time.perf_counter()
    region = fm_region(ModuloChannel(0.2, 0.3, 0.25), 0.01)
    dt = time.perf_counter() - t0
    want1, want2 = 1 - H(0.2), 1 - H(0.3)
    ok = abs(region.max_r1 - want1) <= 1e-6 and abs(region.max_r2 - want2) <= 1e-6 and dt < 10
    criterion(2, ok, f"max R1 {region.max_r1:.6f} (want {want1:.6f}), "
                     f"max R2 {region.max_r2:.6f} (want {want2:.6f}), {dt:.2f} s")
    assert region.max_r1 == pytest.approx(want1, abs=1e-6)
    assert region.max_r2 == pytest.approx(want2, abs=1e-6)
    assert dt < 10


def test_c3_half_duplex_noiseless_example(criterion):
    from twowaysec.fullduplex import ModuloPrefix
    from twowaysec.halfduplex import HalfDuplexModuloParams, hm_bounds
    b = hm_bounds(ModuloChannel(0, 0, 0),
                  HalfDuplexModuloParams(ModuloPrefix(0, 0.5), 0.5, 0.5, SchedulingProbs(0.5, 0.5)))
    r1 = min(b.a, b.c)
    want = 0.25 - 0.5 * (1 - H(0.25))
    ok = abs(r1 - want) <= 1e-9
    criterion(3, ok, f"R1 = {r1:.12f} (want {want:.12f})")
    assert ok


def test_c4_gaussian_inclusion(criterion):
    ch = GaussianChannel(5.0, 0.1, 1.0, 1.0)
    t0 = time.perf_counter()
    region = fg_region(ch, GaussianSweep(50))
    inside = all(contains(region, p, 2e-3)
                 for reg in (he_yener_region(ch), backward_key_region(ch)) for p in reg.vertices)
    dt = time.perf_counter() - t0
    gap = backward_key_rate(ch) - he_yener_rate(ch)
    ok = inside and gap >= 0.09 and dt < 60
    criterion(4, ok, f"inclusion {inside}, R1dag - R1* = {gap:.4f}, {dt:.1f} s")
    assert ok


def test_c5_mixture_entropy_oracle(criterion):
    rng = np.random.default_rng(2024)
    worst = 0.0
    failures = 0
    for _ in range(100):
        ch = GaussianChannel(rng.uniform(0.1, 5), rng.uniform(0.1, 5), 100.0, 100.0)
        prm = HalfDuplexGaussianParams.equalized(ch, rng.uniform(0.1, 5), rng.uniform(), rng.uniform(),
                                                 SchedulingProbs(rng.uniform(), rng.uniform()))
        b = hg_bounds(ch, prm)
        penalty = b.a + b.b - b.c
        mc, se = leakage_monte_carlo(ch, prm, 1_000_000, rng)
        err = abs(penalty - mc)
        worst = max(worst, err)
        failures += err > 2e-3 + 3 * se
    ok = failures == 0
    criterion(5, ok, f"{100 - failures}/100 draws within 2e-3 + 3 SE, largest error {worst:.2e} bits")
    assert ok


def test_c6_asymptote(criterion):
    pt, r = _asymptote()
    ok = abs(r - 0.1194) <= 1e-3 and abs(pt - 0.3837) <= 1e-2
    criterion(6, ok, f"r_max = {r:.6f} at P_t = {pt:.5f}")
    assert ok


@pytest.mark.slow
def test_c7_far_eve_simulation(criterion):
    geo = GeometryConfig(d_ab=1.0, r_e=100.0)
    t0 = time.perf_counter()
    rep = optimize_secrecy("two-way", SimulationPlan(geo, trials=1_000_000, seed=0))
    dt = time.perf_counter() - t0
    _, r_ref = _asymptote()
    worst_dev = 0.0
    for theta in (rep.worst_theta, 0.0, math.pi / 2):
        stats = twoway_variant_stats(geo.at(theta), POLICY, POLICY, 1_000_000, 1)["binary-fair"]
        worst_dev = max(worst_dev, max(abs(v - 0.5) for v in stats.misclassification().values()))
    ok = abs(rep.r_s - r_ref) <= 0.01 and worst_dev <= 0.02 and dt < 300
    criterion(7, ok, f"R_s = {rep.r_s:.6f} vs {r_ref:.6f}, max |p - 0.5| = {worst_dev:.4f}, {dt:.0f} s")
    assert ok


_ORACLE = {}


def _oracle_stats():
    if not _ORACLE:
        geo = GeometryConfig(d_ab=1.0, r_e=3.0, theta=0.8)
        tw = estimate_stats_twoway(geo, POLICY, POLICY, {"o": OracleClassifier()}, 20_000, 3)["o"]
        td = estimate_stats_tdm(geo, POLICY, POLICY, {"o": OracleClassifier()}, 20_000, 3)["o"]
        _ORACLE.update(geo=geo, tw=tw, td=td)
    return _ORACLE


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 1.0))
def test_c8_oracle_property(x):
    o = _oracle_stats()
    assert rate_twoway(o["tw"], x, o["geo"], POLICY).r_s == 0.0
    assert rate_tdm(o["td"], x, o["geo"], POLICY).r_s == 0.0


def test_c8_perfect_classifier(criterion):
    o = _oracle_stats()
    grid = np.linspace(0, 1, 101)
    pointwise = all(rate_twoway(o["tw"], x, o["geo"], POLICY).r_s == 0.0 and
                    rate_tdm(o["td"], x, o["geo"], POLICY).r_s == 0.0 for x in grid)
    plan = SimulationPlan(GeometryConfig(r_e=3.0), thetas=(0.3, 1.2), trials=20_000, oracle=True)
    best = max(optimize_secrecy("two-way", plan).r_s, optimize_secrecy("tdm", plan).r_s)
    ok = pointwise and best == 0.0
    criterion(8, ok, f"pointwise zero {pointwise}, optimized max R_s = {best}")
    assert ok


def test_c9_fig5_shape(criterion):
    r_e = 1.1 / 1.8
    ratios = np.round(np.linspace(0.1, 1.0, 10), 10)
    two, tdm = [], []
    for rho in ratios:
        plan = SimulationPlan(GeometryConfig(r_e=r_e), thetas=(theta_for_ratio(1.0, r_e, rho),),
                              trials=100_000, seed=5)
        two.append(optimize_secrecy("two-way", plan).r_s)
        tdm.append(optimize_secrecy("tdm", plan).r_s)
    monotone = all(b >= a - 0.005 for a, b in zip(two, two[1:]))
    dominates = all(t >= d - 0.005 for t, d in zip(two, tdm))
    ok = monotone and dominates
    criterion(9, ok, "two-way " + " ".join(f"{v:.4f}" for v in two)
              + " | tdm " + " ".join(f"{v:.4f}" for v in tdm))
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
