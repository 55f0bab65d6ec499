import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twowaysec.errors import DomainError
from twowaysec.infotheory import (GaussianMixture1D, binary_entropy, bsc_compose, expected_mixture_entropy,
                                  gamma_rate, gaussian_cdf, gaussian_entropy, mixture_diff_entropy,
                                  mixture_entropy_batch)

prob = st.floats(0.0, 1.0, allow_nan=False)


def test_binary_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.25) == pytest.approx(0.8112781244591328, abs=1e-15)


def test_binary_entropy_domain():
    with pytest.raises(DomainError):
        binary_entropy(1.5)
    with pytest.raises(DomainError):
        binary_entropy(-0.1)


def test_binary_entropy_vectorized():
    out = binary_entropy(np.array([0.0, 0.5, 1.0]))
    np.testing.assert_allclose(out, [0.0, 1.0, 0.0])


@given(prob)
def test_binary_entropy_symmetric(p):
    assert binary_entropy(p) == pytest.approx(binary_entropy(1 - p), abs=1e-12)


def test_bsc_compose_values():
    assert bsc_compose(0.2, 0.3) == pytest.approx(0.38)
    for x in (0.0, 0.1, 0.7, 1.0):
        assert bsc_compose(0.0, x) == pytest.approx(x)
        assert bsc_compose(0.5, x) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        bsc_compose(0.2, 1.2)


@given(prob, prob, prob)
def test_bsc_compose_algebra(a, b, c):
    assert bsc_compose(a, b) == pytest.approx(bsc_compose(b, a), abs=1e-15)
    assert bsc_compose(bsc_compose(a, b), c) == pytest.approx(bsc_compose(a, bsc_compose(b, c)), abs=1e-12)
    assert 0.0 <= bsc_compose(a, b) <= 1.0


def test_gamma_rate():
    assert gamma_rate(0) == 0.0
    assert gamma_rate(3) == pytest.approx(1.0)
    assert gamma_rate(1) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        gamma_rate(-1)


@given(st.floats(0, 1e6), st.floats(0, 1e6))
def test_gamma_monotone(x, y):
    lo, hi = sorted((x, y))
    assert gamma_rate(lo) <= gamma_rate(hi)


def test_gaussian_cdf():
    assert gaussian_cdf(0.0) == 0.5
    assert gaussian_cdf(50.0) == 1.0
    assert gaussian_cdf(1.0) == pytest.approx(0.5 * (1 + math.erf(1 / math.sqrt(2))), abs=1e-15)


def test_mixture_collapses_to_gaussian():
    var = 2.5
    single = GaussianMixture1D(1.0, 0.0, 3.0, var, 1.0)
    assert mixture_diff_entropy(single) == pytest.approx(gaussian_entropy(var), abs=1e-8)
    same = GaussianMixture1D(0.3, 1.0, 1.0, var, var)
    assert mixture_diff_entropy(same) == pytest.approx(gaussian_entropy(var), abs=1e-8)


def test_mixture_far_apart_adds_one_bit():
    # Monte Carlo oracle at 20 sigma separation
    sigma = 1.3
    m = GaussianMixture1D(0.5, 0.0, 20 * sigma, sigma**2, sigma**2)
    rng = np.random.default_rng(3)
    n = 1_000_000
    comp = rng.random(n) < 0.5
    noise = sigma * rng.standard_normal(n)
    z = np.where(comp, 0.0, 20 * sigma) + noise
    # control variate: each sample's own component log-density has known mean
    own = -0.5 * math.log(2 * math.pi * sigma**2) - noise**2 / (2 * sigma**2)
    mc = -np.mean(m.logpdf(z) - own) / math.log(2) + gaussian_entropy(sigma**2)
    quad = mixture_diff_entropy(m)
    assert quad == pytest.approx(mc, abs=1e-3)
    assert quad == pytest.approx(gaussian_entropy(sigma**2) + 1, abs=1e-6)


def test_mixture_translation_invariant():
    a = mixture_diff_entropy(GaussianMixture1D(0.3, 0.0, 2.0, 1.0, 0.5))
    b = mixture_diff_entropy(GaussianMixture1D(0.3, 7.5, 9.5, 1.0, 0.5))
    assert a == pytest.approx(b, abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.01, 0.99), st.floats(-5, 5), st.floats(0.1, 5), st.floats(0.1, 5))
def test_mixture_entropy_bounds(w, delta, v1, v2):
    m = GaussianMixture1D(w, 0.0, delta, v1, v2)
    h = mixture_diff_entropy(m)
    h1, h2 = gaussian_entropy(v1), gaussian_entropy(v2)
    upper = w * h1 + (1 - w) * h2 + binary_entropy(w)
    assert w * h1 + (1 - w) * h2 - 1e-9 <= h <= upper + 1e-9


@settings(max_examples=25, deadline=None)
@given(st.floats(0.01, 0.99), st.floats(-8, 8), st.floats(0.2, 4), st.floats(0.2, 4))
def test_batch_rule_matches_adaptive_quadrature(w, delta, v1, v2):
    ref = mixture_diff_entropy(GaussianMixture1D(w, 0.0, delta, v1, v2))
    assert mixture_entropy_batch(w, v1, v2, [delta])[0] == pytest.approx(ref, abs=1e-7)


def test_random_mixtures_against_monte_carlo():
    rng = np.random.default_rng(11)
    n = 1_000_000
    for _ in range(100):
        w = rng.uniform(0.05, 0.95)
        mu1, mu2 = rng.uniform(-3, 3, 2)
        v1, v2 = rng.uniform(0.2, 3, 2)
        m = GaussianMixture1D(w, mu1, mu2, v1, v2)
        comp = rng.random(n) < w
        z = np.where(comp, mu1 + math.sqrt(v1) * rng.standard_normal(n),
                     mu2 + math.sqrt(v2) * rng.standard_normal(n))
        samples = -m.logpdf(z) / math.log(2)
        se = samples.std() / math.sqrt(n)
        assert abs(mixture_diff_entropy(m) - samples.mean()) <= 3 * se + 1e-3


def test_expected_entropy_degenerate_cases():
    direct = mixture_diff_entropy(GaussianMixture1D(0.4, 0.0, 0.0, 1.0, 2.0))
    assert expected_mixture_entropy(0.4, 1.0, 2.0, 0.0, 0.0) == pytest.approx(direct, abs=1e-8)
    assert expected_mixture_entropy(1.0, 1.7, 2.0, 3.0, 4.0) == pytest.approx(gaussian_entropy(1.7))


def test_expected_entropy_against_monte_carlo():
    # var1 = var2 = 1, signal variance sum 4, weight 1/2
    rng = np.random.default_rng(5)
    n = 1_000_000
    i = rng.normal(0, math.sqrt(2.0), n)
    j = rng.normal(0, math.sqrt(2.0), n)
    comp = rng.random(n) < 0.5
    z = np.where(comp, i, j) + rng.standard_normal(n)
    logf = np.logaddexp(math.log(0.5) - 0.5 * (z - i) ** 2, math.log(0.5) - 0.5 * (z - j) ** 2)
    logf -= 0.5 * math.log(2 * math.pi)
    samples = -logf / math.log(2)
    mc = samples.mean()
    assert expected_mixture_entropy(0.5, 1.0, 1.0, 2.0, 2.0) == pytest.approx(mc, abs=1e-3 + 3 * samples.std() / math.sqrt(n))


def test_expected_entropy_domain():
    with pytest.raises(DomainError):
        expected_mixture_entropy(0.5, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(DomainError):
        expected_mixture_entropy(1.5, 1.0, 1.0, 1.0, 1.0)
