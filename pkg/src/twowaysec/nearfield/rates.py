"""Secrecy rates of the TDM-with-feedback and two-way randomized protocols."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import ConfigError
from ..infotheory import binary_entropy as H
from ..infotheory import gaussian_cdf
from .classifier import FAMILIES
from .model import EVENT_A, EVENT_AB, EVENT_B, GeometryConfig, PowerPolicy
from .stats import TdmClassifierStats, TwoWayClassifierStats, tdm_variant_stats, twoway_variant_stats


@dataclass(frozen=True)
class SecrecyRateReport:
    r_m: float
    r_s: float
    r_e: float | None = None  # TDM
    r_ea: float | None = None  # two-way
    r_eb: float | None = None
    d_a: float | None = None
    d_b: float | None = None
    pe_ea: float | None = None
    pe_eb: float | None = None
    argmax_params: dict = field(default_factory=dict)
    worst_theta: float | None = None
    worst_classifier: str | None = None
    curve: tuple = ()  # (parameter, optimized value) pairs
    stats: dict = field(default_factory=dict)

    @property
    def penalty(self):
        if self.r_e is not None:
            return self.r_e
        return max(self.r_ea, self.r_eb)


def main_link_rate(geo: GeometryConfig, policy: PowerPolicy, noiseless_main=True):
    """1 - H(P_e) for the weakest legitimate link; 1 when coding removes the noise."""
    if noiseless_main:
        return 1.0
    snr = policy.rho_min / geo.d_ab**geo.alpha_pl
    return 1.0 - H(1.0 - gaussian_cdf(math.sqrt(snr)))


def _leak(d, pe):
    """d (1 - H(pe/d)), zero when nothing is attributed."""
    if d <= 0.0:
        return 0.0
    return d * (1.0 - H(min(max(pe / d, 0.0), 1.0)))


def rate_tdm(stats: TdmClassifierStats, beta, geo: GeometryConfig, policy: PowerPolicy,
             noiseless_main=True) -> SecrecyRateReport:
    """Per-direction secrecy rate before the time-division factor of 1/2."""
    if not 0.0 <= beta <= 1.0:
        raise ConfigError("beta", f"must lie in [0, 1], got {beta}")
    r_m = (1.0 - beta) * main_link_rate(geo, policy, noiseless_main)
    denom = 1.0 - beta * (1.0 - stats.p_m) - (1.0 - beta) * stats.p_f
    r_e = _leak(denom, beta * stats.p_m * stats.p_e_given_m)
    return SecrecyRateReport(r_m=r_m, r_e=r_e, r_s=max(r_m - r_e, 0.0),
                             argmax_params={"beta": beta})


def rate_twoway(stats: TwoWayClassifierStats, p_t, geo: GeometryConfig, policy: PowerPolicy,
                noiseless_main=True) -> SecrecyRateReport:
    if not 0.0 <= p_t <= 1.0:
        raise ConfigError("p_t", f"must lie in [0, 1], got {p_t}")
    A, B, AB = EVENT_A, EVENT_B, EVENT_AB
    p = stats.prob
    both = p_t * p_t
    one = p_t * (1.0 - p_t)
    r_m = one * main_link_rate(geo, policy, noiseless_main)
    d_a = both * p(AB, A) + one * p(B, A) + one * (1.0 - p(A, B) - p(A, AB))
    d_b = both * p(AB, B) + one * p(A, B) + one * (1.0 - p(B, A) - p(B, AB))
    pe_ea = both * p(AB, A) * stats.p_e_ab_to_a + 0.5 * one * p(B, A)
    pe_eb = both * p(AB, B) * stats.p_e_ab_to_b + 0.5 * one * p(A, B)
    r_ea, r_eb = _leak(d_a, pe_ea), _leak(d_b, pe_eb)
    return SecrecyRateReport(r_m=r_m, r_ea=r_ea, r_eb=r_eb, r_s=max(r_m - max(r_ea, r_eb), 0.0),
                             d_a=d_a, d_b=d_b, pe_ea=pe_ea, pe_eb=pe_eb,
                             argmax_params={"p_t": p_t})


def default_grid(step=0.01):
    return np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1)


def default_thetas(n=64):
    return np.linspace(0.0, math.pi / 2, n)


@dataclass(frozen=True)
class SimulationPlan:
    """Everything a max-min optimization needs besides the mode."""

    geometry: GeometryConfig
    thetas: Sequence[float] = tuple(default_thetas())
    policies: Sequence[tuple] = ((PowerPolicy(), PowerPolicy()),)
    grid: Sequence[float] = tuple(default_grid())
    trials: int = 100_000
    seed: int = 0
    noiseless_main: bool = True
    oracle: bool = False
    family: str = "binary"  # two-way classifier family, see LikelihoodModel.variants

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError("family", f"must be one of {FAMILIES}, got {self.family!r}")
        if len(self.thetas) == 0:
            raise ConfigError("thetas", "grid must be non-empty")
        if len(self.grid) == 0:
            raise ConfigError("grid", "grid must be non-empty")
        if len(self.policies) == 0:
            raise ConfigError("policies", "need at least one policy pair")


def optimize_secrecy(mode: str, plan: SimulationPlan) -> SecrecyRateReport:
    """max over (policy, grid value) of min over (theta, classifier[, direction]).

    TDM values carry the factor 1/2 for splitting time between the two
    directions; both directions enter the inner minimum.
    """
    if mode not in ("tdm", "two-way"):
        raise ConfigError("mode", f"unknown mode {mode!r}")
    grid = np.asarray(plan.grid, dtype=float)
    best = None
    for pi, (pol_a, pol_b) in enumerate(plan.policies):
        cases = []  # (theta, label, stats, geo)
        for ti, theta in enumerate(plan.thetas):
            geo = plan.geometry.at(theta)
            if mode == "two-way":
                st = twoway_variant_stats(geo, pol_a, pol_b, plan.trials, plan.seed,
                                          stream=(pi, ti), oracle=plan.oracle, family=plan.family)
                cases += [(theta, k, s, geo) for k, s in st.items()]
            else:
                for di, sender in enumerate(("A", "B")):
                    data, jam = (pol_a, pol_b) if sender == "A" else (pol_b, pol_a)
                    st = tdm_variant_stats(geo, data, jam, plan.trials, plan.seed, sender,
                                           stream=(pi, ti, di), oracle=plan.oracle)
                    cases += [(theta, f"{sender}:{k}", s, geo) for k, s in st.items()]
        # the weaker transmitter bounds the two-way main link
        weaker = pol_a if pol_a.rho_min <= pol_b.rho_min else pol_b
        curve = []
        for x in grid:
            worst = None
            for theta, label, st, geo in cases:
                if mode == "two-way":
                    rep = rate_twoway(st, float(x), geo, weaker, plan.noiseless_main)
                else:
                    data_policy = pol_a if label.startswith("A") else pol_b
                    rep = rate_tdm(st, float(x), geo, data_policy, plan.noiseless_main)
                if worst is None or rep.r_s < worst[0].r_s:
                    worst = (rep, theta, label, st)
            curve.append((float(x), worst))
        scale = 0.5 if mode == "tdm" else 1.0
        for x, (rep, theta, label, st) in curve:
            value = scale * rep.r_s
            if best is None or value > best[0] + 1e-15:
                best = (value, x, pi, rep, theta, label, st, [(g, scale * w[0].r_s) for g, w in curve])
    value, x, pi, rep, theta, label, st, curve = best
    key = "beta" if mode == "tdm" else "p_t"
    return SecrecyRateReport(
        r_m=rep.r_m, r_s=value, r_e=rep.r_e, r_ea=rep.r_ea, r_eb=rep.r_eb,
        d_a=rep.d_a, d_b=rep.d_b, pe_ea=rep.pe_ea, pe_eb=rep.pe_eb,
        argmax_params={key: x, "policy_index": pi}, worst_theta=float(theta),
        worst_classifier=label, curve=tuple(curve), stats={label: st})


def asymptotic_rmax(p_t_grid=None, rho_min=1.0, d_ab=1.0, alpha_pl=2.0, noiseless_main=True,
                    eve_entropy=None) -> SecrecyRateReport:
    """Far-Eve limit: Eve attributes every symbol to one node and errs with prob 1/4.

    ``eve_entropy`` overrides H(1/4), the entropy of Eve's per-symbol error.
    """
    grid = np.linspace(0.0, 1.0, 100_001) if p_t_grid is None else np.asarray(p_t_grid, dtype=float)
    if grid.size == 0:
        raise ConfigError("p_t_grid", "grid must be non-empty")
    if np.any(grid < 0) or np.any(grid > 1):
        raise ConfigError("p_t_grid", "values must lie in [0, 1]")
    h_eve = H(0.25) if eve_entropy is None else float(eve_entropy)
    if noiseless_main:
        link = 1.0
    else:
        link = 1.0 - H(1.0 - gaussian_cdf(math.sqrt(rho_min / d_ab**alpha_pl)))
    r_m = grid * (1 - grid) * link
    penalty = (1 - (1 - grid) ** 2) * (1 - h_eve)
    vals = np.maximum(r_m - penalty, 0.0)
    i = int(np.argmax(vals))
    return SecrecyRateReport(r_m=float(r_m[i]), r_s=float(vals[i]), r_ea=float(penalty[i]),
                             r_eb=float(penalty[i]), argmax_params={"p_t": float(grid[i])},
                             curve=tuple(zip(grid.tolist(), vals.tolist())))
