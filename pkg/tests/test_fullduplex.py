import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twowaysec.errors import ConstraintError, DomainError
from twowaysec.fullduplex import (GaussianChannel, GaussianSweep, ModuloChannel, ModuloPrefix, PowerSplit,
                                  backward_key_rate, backward_key_region, fg_bounds, fg_region, fm_bounds,
                                  fm_corner_points, fm_no_prefix_region, fm_region, he_yener_rate,
                                  he_yener_region)
from twowaysec.geometry import contains, pentagon, vertices_satisfy
from twowaysec.infotheory import binary_entropy as H
from twowaysec.infotheory import gamma_rate as gam

FIG1 = ModuloChannel(0.2, 0.3, 0.25)
FIG2 = GaussianChannel(10.0, 0.1, 1.0, 100.0)
FIG3 = GaussianChannel(5.0, 0.1, 1.0, 1.0)

prob = st.floats(0.0, 1.0, allow_nan=False)


def test_fm_bounds_examples():
    b = fm_bounds(ModuloChannel(0, 0, 0), ModuloPrefix(0, 0.5))
    assert (b.a, b.b, b.c) == pytest.approx((1.0, 0.0, 1.0))
    for ch in (FIG1, ModuloChannel(0.1, 0.4, 0.05)):
        b = fm_bounds(ch, ModuloPrefix(0.5, 0.5))
        assert b.a == pytest.approx(0) and b.b == pytest.approx(0)
    b = fm_bounds(FIG1, ModuloPrefix(0, 0))
    assert b.a == pytest.approx(1 - H(0.3))
    assert b.b == pytest.approx(1 - H(0.2))
    assert b.c == pytest.approx(1 + H(0.25) - H(0.2) - H(0.3))


@given(prob, prob, prob, prob, prob)
def test_fm_bounds_user_swap_symmetry(e1, e2, ee, p1, p2):
    ch, pre = ModuloChannel(e1, e2, ee), ModuloPrefix(p1, p2)
    b = fm_bounds(ch, pre)
    s = fm_bounds(ch.swapped(), pre.swapped())
    assert (s.a, s.b, s.c) == pytest.approx((b.b, b.a, b.c), abs=1e-12)


def test_noiseless_region_reaches_unit_corners():
    region = fm_region(ModuloChannel(0, 0, 0), 0.05)
    assert contains(region, (1, 0), 0) and contains(region, (0, 1), 0)


def test_corner_points():
    # R1 travels user 1 -> user 2 through eps2, and vice versa
    c1, c2 = fm_corner_points(ModuloChannel(0.4, 0.0, 0.1))
    assert c1 == (1.0, 0.0)
    c1, c2 = fm_corner_points(ModuloChannel(0.0, 0.5, 0.1))
    assert c1[0] == 0.0 and c2 == (0.0, 1.0)
    c1, c2 = fm_corner_points(FIG1)
    assert c1[0] == pytest.approx(1 - H(0.3)) and c2[1] == pytest.approx(1 - H(0.2))
    region = fm_region(FIG1, 0.01)
    assert region.max_r1 == pytest.approx(c1[0], abs=1e-12)
    assert region.max_r2 == pytest.approx(c2[1], abs=1e-12)


@settings(max_examples=10, deadline=None)
@given(prob, prob, prob)
def test_fm_region_refinement_and_restriction(e1, e2, ee):
    ch = ModuloChannel(e1, e2, ee)
    coarse, fine = fm_region(ch, 0.1), fm_region(ch, 0.05)
    for p in coarse.vertices:
        assert contains(fine, p, 1e-12)
    for p in fm_no_prefix_region(ch).vertices:
        assert contains(coarse, p, 1e-12)


def test_fg_bounds_examples():
    b = fg_bounds(FIG3, PowerSplit(0, 0, 0, 0))
    assert (b.a, b.b, b.c) == (0.0, 0.0, 0.0)
    deaf = GaussianChannel(0.0, 0.0, 1.0, 2.0)
    b = fg_bounds(deaf, PowerSplit(0.5, 0.5, 1.2, 0.3))
    assert b.c == pytest.approx(b.a + b.b)
    b = fg_bounds(FIG2, PowerSplit(1, 0, 100, 0))
    assert b.a == pytest.approx(0.5)
    assert b.b == pytest.approx(gam(100))
    # Eve sees 1*10 + 100*0.1 = 20 at unit noise
    assert b.c == pytest.approx(0.5 + gam(100) - gam(20))


def test_fg_bounds_power_constraint():
    with pytest.raises(ConstraintError):
        fg_bounds(FIG3, PowerSplit(0.8, 0.3, 0.1, 0.1))
    with pytest.raises(DomainError):
        PowerSplit(-0.1, 0, 0, 0)


def _he_yener_oracle(ch, step=1e-4):
    alpha = np.arange(1, int(round(1 / step)) + 1) * step
    rk = max(gam(ch.rho2) - gam(ch.ge2 * ch.rho2 / (1 + ch.ge1 * ch.rho1)), 0)
    leak = gam(ch.ge1 * ch.rho1 / (1 + ch.ge2 * ch.rho2))
    inner = np.maximum(leak - (1 - alpha) / alpha * rk, 0)
    return float(np.max(alpha * np.maximum(gam(ch.rho1) - inner, 0)))


def _backward_oracle(ch, step=1e-4):
    alpha = np.linspace(0, 1, int(round(1 / step)) + 1)
    rk = max(gam(ch.rho2) - gam(ch.ge2 * ch.rho2 / (1 + ch.ge1 * ch.rho1)), 0)
    return float(np.max(np.minimum(alpha * gam(ch.rho1), (1 - alpha) * rk)))


def test_he_yener_values():
    assert he_yener_rate(GaussianChannel(0, 0, 2.0, 1.0)) == pytest.approx(gam(2.0))
    assert he_yener_region(GaussianChannel(1, 1, 0, 0)).vertices.tolist() == [[0.0, 0.0]]
    r = he_yener_rate(FIG3)
    # the grid oracle is a lower bound; the implementation also evaluates the kink
    oracle = _he_yener_oracle(FIG3)
    assert oracle - 1e-12 <= r <= oracle + 1e-4
    assert r == pytest.approx(0.1414, abs=5e-4)


def test_backward_key_values():
    # key channel to Bob worse at Bob than at Eve: no key
    no_key = GaussianChannel(0.0, 20.0, 1.0, 1.0)
    assert backward_key_rate(no_key) == 0.0
    clean = GaussianChannel(3.0, 0.0, 1.0, 2.0)
    g1, g2 = gam(1.0), gam(2.0)
    assert backward_key_rate(clean) == pytest.approx(g1 * g2 / (g1 + g2), abs=1e-12)
    r = backward_key_rate(FIG3)
    oracle = _backward_oracle(FIG3)
    assert oracle - 1e-12 <= r <= oracle + 1e-4
    assert r == pytest.approx(0.2470, abs=5e-4)
    assert r > he_yener_rate(FIG3)


@pytest.mark.parametrize("ch", [FIG2, FIG3], ids=["fig2", "fig3"])
def test_fg_region_contains_comparison_schemes(ch):
    region = fg_region(ch, GaussianSweep(50))
    for reg in (he_yener_region(ch), backward_key_region(ch)):
        for p in reg.vertices:
            # the 50-level split grid lands within 2e-3 of these optima
            assert contains(region, p, 2e-3)


def test_fg_restricted_sweeps_nest():
    full = fg_region(FIG3, GaussianSweep(12))
    for restrict in ("no-prefix", "bin-jam"):
        part = fg_region(FIG3, GaussianSweep(12, restrict))
        for p in part.vertices:
            assert contains(full, p, 1e-12)
    with pytest.raises(DomainError):
        GaussianSweep(10, "bogus")


def test_fg_region_vertices_meet_some_generator():
    ch = FIG3
    region = fg_region(ch, GaussianSweep(8))
    grid = np.linspace(0, 1, 8)
    pentagons = []
    for t1 in grid:
        for s1 in grid:
            for t2 in grid:
                for s2 in grid:
                    sp = PowerSplit(ch.rho1 * t1 * s1, ch.rho1 * t1 * (1 - s1),
                                    ch.rho2 * t2 * s2, ch.rho2 * t2 * (1 - s2))
                    pentagons.append(fg_bounds(ch, sp))
    assert vertices_satisfy(region, pentagons, 1e-9)
    for b in pentagons[::97]:
        for p in pentagon(b).vertices:
            assert contains(region, p, 1e-12)
