"""Scalar information-theoretic primitives.

All logarithms are base 2, so entropies and rates come out in bits.
Functions accept scalars or numpy arrays unless noted otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from .errors import DomainError, QuadratureError

LOG2E = 1.0 / math.log(2.0)
# probabilities that drift outside [0, 1] by less than this are clipped
_PROB_SLACK = 1e-12


def _as_probability(p, name="p"):
    arr = np.asarray(p, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < -_PROB_SLACK) or np.any(arr > 1 + _PROB_SLACK):
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
    return np.clip(arr, 0.0, 1.0)


def _scalar_or_array(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def binary_entropy(p):
    """H(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0."""
    p = _as_probability(p)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -special.xlogy(p, p) - special.xlogy(q, q)
    return _scalar_or_array(h * LOG2E)


def bsc_compose(a, b):
    """Crossover probability of two cascaded binary symmetric channels."""
    a = _as_probability(a, "a")
    b = _as_probability(b, "b")
    return _scalar_or_array(a * (1.0 - b) + b * (1.0 - a))


def gamma_rate(snr):
    """Gaussian channel rate 0.5*log2(1 + snr)."""
    snr = np.asarray(snr, dtype=float)
    if np.any(snr < 0) or np.any(np.isnan(snr)):
        raise DomainError(f"snr must be non-negative, got {snr!r}")
    return _scalar_or_array(0.5 * np.log1p(snr) * LOG2E)


def gaussian_cdf(x):
    """Standard normal CDF."""
    return _scalar_or_array(special.ndtr(np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class GaussianMixture1D:
    """Two-component Gaussian mixture ``w1 N(mean1, var1) + (1-w1) N(mean2, var2)``."""

    weight1: float
    mean1: float
    mean2: float
    var1: float
    var2: float

    def __post_init__(self):
        if not 0.0 <= self.weight1 <= 1.0:
            raise DomainError(f"weight1 must lie in [0, 1], got {self.weight1}")
        if not (self.var1 > 0 and self.var2 > 0):
            raise DomainError("mixture variances must be strictly positive")

    @property
    def weight2(self):
        return 1.0 - self.weight1

    def logpdf(self, z):
        """Natural-log density, stable for far tails."""
        z = np.asarray(z, dtype=float)
        with np.errstate(divide="ignore"):
            l1 = math.log(self.weight1) if self.weight1 > 0 else -np.inf
            l2 = math.log(self.weight2) if self.weight2 > 0 else -np.inf
        c1 = l1 - 0.5 * math.log(2 * math.pi * self.var1) - (z - self.mean1) ** 2 / (2 * self.var1)
        c2 = l2 - 0.5 * math.log(2 * math.pi * self.var2) - (z - self.mean2) ** 2 / (2 * self.var2)
        return np.logaddexp(c1, c2)


def gaussian_entropy(var):
    """Differential entropy (bits) of N(., var)."""
    return 0.5 * math.log2(2 * math.pi * math.e * var)


def mixture_diff_entropy(m: GaussianMixture1D, tol=1e-6):
    """Differential entropy in bits of a two-component Gaussian mixture.

    Adaptive quadrature over [min mean - 10 sd_max, max mean + 10 sd_max] with
    the component means passed as break points.
    """
    sd = math.sqrt(max(m.var1, m.var2))
    lo = min(m.mean1, m.mean2) - 10 * sd
    hi = max(m.mean1, m.mean2) + 10 * sd

    def integrand(z):
        lf = float(m.logpdf(z))
        return -math.exp(lf) * lf

    points = sorted({m.mean1, m.mean2})
    val, err, info = _quad(integrand, lo, hi, points)
    if err > tol:
        raise QuadratureError(f"mixture entropy quadrature error {err:.2e} exceeds {tol:.0e}")
    return val * LOG2E


def _quad(f, lo, hi, points):
    res = integrate.quad(f, lo, hi, points=points, limit=500,
                         epsabs=1e-11, epsrel=1e-11, full_output=1)
    val, err, info = res[0], res[1], res[2]
    return val, err, info


# Composite Gauss-Legendre rule on [-10, 10] in standardized units, used to
# integrate against each mixture component.
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)


def _composite_rule(lo, hi, panels):
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    weights = (half[:, None] * _GL_W[None, :]).ravel()
    return nodes, weights


_U_NODES, _U_WEIGHTS = _composite_rule(-10.0, 10.0, 60)
_U_WEIGHTS = _U_WEIGHTS * np.exp(-0.5 * _U_NODES**2) / math.sqrt(2 * math.pi)


def mixture_entropy_batch(weight1, var1, var2, deltas):
    """Entropy (bits) of ``w1 N(0, var1) + w2 N(delta, var2)`` for many deltas.

    Writes h = -sum_k w_k E_k[log f] and integrates each expectation in the
    component's own standardized coordinate, which keeps the node count fixed
    however far apart the means are.
    """
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    w1 = float(weight1)
    w2 = 1.0 - w1
    s1, s2 = math.sqrt(var1), math.sqrt(var2)
    out = np.zeros(deltas.shape)
    for wk, mean_k, sk in ((w1, 0.0, s1), (w2, 1.0, s2)):
        if wk <= 0.0:
            continue
        # z grid: rows index deltas, columns index quadrature nodes
        z = mean_k * deltas[:, None] + sk * _U_NODES[None, :]
        with np.errstate(divide="ignore"):
            l1 = (math.log(w1) if w1 > 0 else -np.inf) - 0.5 * math.log(2 * math.pi * var1) - z**2 / (2 * var1)
            l2 = ((math.log(w2) if w2 > 0 else -np.inf) - 0.5 * math.log(2 * math.pi * var2)
                  - (z - deltas[:, None]) ** 2 / (2 * var2))
        logf = np.logaddexp(l1, l2)
        out -= wk * (logf @ _U_WEIGHTS)
    return out * LOG2E


def expected_mixture_entropy(weight1, var1, var2, signal_var1, signal_var2):
    """E_{i,j}[h(w1 N(i, var1) + w2 N(j, var2))] for independent i ~ N(0, sv1), j ~ N(0, sv2).

    By translation invariance only the gap i - j ~ N(0, sv1 + sv2) matters.
    The entropy is even in the gap, so the expectation folds onto [0, inf);
    beyond a saturation distance the entropy is flat and the tail mass is
    added in closed form.
    """
    for name, v in (("var1", var1), ("var2", var2)):
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v}")
    if signal_var1 < 0 or signal_var2 < 0:
        raise DomainError("signal variances must be non-negative")
    if not 0.0 <= weight1 <= 1.0:
        raise DomainError(f"weight1 must lie in [0, 1], got {weight1}")
    return _expected_mixture_entropy_cached(float(weight1), float(var1), float(var2),
                                            float(signal_var1) + float(signal_var2))


@lru_cache(maxsize=65536)
def _expected_mixture_entropy_cached(w1, var1, var2, svar):
    if w1 in (0.0, 1.0):
        return gaussian_entropy(var1 if w1 == 1.0 else var2)
    if svar == 0.0:
        return float(mixture_entropy_batch(w1, var1, var2, [0.0])[0])
    s = math.sqrt(svar)
    sd_sum = math.sqrt(var1) + math.sqrt(var2)
    saturate = 14.0 * sd_sum
    upper = min(9.0 * s, saturate)
    width = min(s, sd_sum) / 2.0
    panels = max(8, int(math.ceil(upper / width)))
    nodes, weights = _composite_rule(0.0, upper, panels)
    dens = 2.0 * np.exp(-0.5 * (nodes / s) ** 2) / (s * math.sqrt(2 * math.pi))
    h = mixture_entropy_batch(w1, var1, var2, nodes)
    total = float(np.sum(weights * dens * h))
    tail = 2.0 * float(special.ndtr(-upper / s))
    if tail > 0.0:
        h_sat = (w1 * gaussian_entropy(var1) + (1 - w1) * gaussian_entropy(var2)
                 + binary_entropy(w1))
        total += tail * h_sat
    return total
