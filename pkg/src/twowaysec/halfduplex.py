"""Half-duplex two-way wiretap regions.

Each user transmits in a symbol slot with its own probability, so a slot is
in one of four states: only user 1 (state 1), only user 2 (state 2), both
(state 3, a collision) or neither (state 4, recognised and erased by all).
Eve is told which slots are collisions but cannot tell state 1 from state 2;
that ambiguity is what randomized scheduling buys.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, DomainError
from .fullduplex import GaussianChannel, ModuloChannel, ModuloPrefix, PowerSplit, _check_prob
from .geometry import RateBounds, RateRegion, convex_hull, hull_of_bounds
from .infotheory import binary_entropy as H
from .infotheory import bsc_compose, expected_mixture_entropy, gamma_rate

_EQUALIZE_TOL = 1e-9


@dataclass(frozen=True)
class SchedulingProbs:
    p1: float
    p2: float

    def __post_init__(self):
        _check_prob("p1", self.p1)
        _check_prob("p2", self.p2)

    @property
    def single1(self):
        return self.p1 * (1.0 - self.p2)

    @property
    def single2(self):
        return self.p2 * (1.0 - self.p1)

    @property
    def d1(self):
        """Probability that a single-transmission slot belongs to user 1."""
        w = self.single1 + self.single2
        return self.single1 / w if w > 0 else 0.5

    @property
    def d2(self):
        return 1.0 - self.d1


@dataclass(frozen=True)
class DeterministicShares:
    ps1: float
    ps2: float

    def __post_init__(self):
        _check_prob("ps1", self.ps1)
        _check_prob("ps2", self.ps2)
        if abs(self.ps1 + self.ps2 - 1.0) > 1e-12:
            raise DomainError(f"shares must sum to 1, got {self.ps1} + {self.ps2}")


@dataclass(frozen=True)
class HalfDuplexModuloParams:
    prefix: ModuloPrefix
    mu1: float
    mu2: float
    sched: SchedulingProbs

    def __post_init__(self):
        _check_prob("mu1", self.mu1)
        _check_prob("mu2", self.mu2)


@dataclass(frozen=True)
class HalfDuplexModuloDerived:
    eps_e1: float
    eps_e2: float
    ehat_e: float
    ehat1: float
    ehat2: float
    muhat1: float
    muhat2: float
    mu_e1: float
    mu_e2: float
    muhat_e: float
    mu12: float
    d1: float
    d2: float

    @classmethod
    def from_params(cls, ch: ModuloChannel, params: HalfDuplexModuloParams):
        return cls(**_hm_derived(ch, params.prefix.ebar1, params.prefix.ebar2,
                                 params.mu1, params.mu2, params.sched.p1, params.sched.p2))


def _hm_derived(ch, ebar1, ebar2, mu1, mu2, p1, p2):
    eps_e1 = bsc_compose(ch.eps_e, ebar1)
    eps_e2 = bsc_compose(ch.eps_e, ebar2)
    ehat1 = bsc_compose(ch.eps1, ebar2)
    ehat2 = bsc_compose(ch.eps2, ebar1)
    ehat_e = bsc_compose(ch.eps_e, bsc_compose(ebar1, ebar2))
    mu12 = bsc_compose(mu1, mu2)
    s1 = np.asarray(p1 * (1.0 - p2), dtype=float)
    s2 = np.asarray(p2 * (1.0 - p1), dtype=float)
    w = s1 + s2
    with np.errstate(invalid="ignore", divide="ignore"):
        d1 = np.where(w > 0, s1 / np.where(w > 0, w, 1.0), 0.5)
    d1 = float(d1) if np.ndim(d1) == 0 else d1
    return dict(
        eps_e1=eps_e1, eps_e2=eps_e2, ehat_e=ehat_e, ehat1=ehat1, ehat2=ehat2,
        muhat1=bsc_compose(ehat1, mu2), muhat2=bsc_compose(ehat2, mu1),
        mu_e1=bsc_compose(eps_e1, mu1), mu_e2=bsc_compose(eps_e2, mu2),
        muhat_e=bsc_compose(ehat_e, mu12), mu12=mu12, d1=d1, d2=1.0 - d1,
    )


def hm_bound_arrays(ch: ModuloChannel, ebar1, ebar2, mu1, mu2, p1, p2):
    """Vectorized randomized-scheduling modulo-2 bounds (a, b, c).

    The state-1-or-2 leakage averages H(Z | C1, C2) over the codeword pair:
    pairs with C1 = C2 occur with probability 1 - mu12 and see one crossover,
    pairs with C1 != C2 see the complementary one. With uniform inputs both
    weights are 1/2.
    """
    d = _hm_derived(ch, ebar1, ebar2, mu1, mu2, p1, p2)
    s1 = p1 * (1.0 - p2)
    s2 = p2 * (1.0 - p1)
    d1, d2 = d["d1"], d["d2"]
    a = s1 * (H(d["muhat2"]) - H(d["ehat2"]))
    b = s2 * (H(d["muhat1"]) - H(d["ehat1"]))
    leak3 = H(d["muhat_e"]) - H(d["ehat_e"])
    same = d1 * d["eps_e1"] + d2 * d["eps_e2"]
    diff = d1 * (1.0 - d["eps_e1"]) + d2 * d["eps_e2"]
    leak12 = (H(d1 * d["mu_e1"] + d2 * d["mu_e2"])
              - (1.0 - d["mu12"]) * H(same) - d["mu12"] * H(diff))
    c = a + b - p1 * p2 * leak3 - (s1 + s2) * leak12
    return a, b, c


def hm_bounds(ch: ModuloChannel, params: HalfDuplexModuloParams) -> RateBounds:
    """Bounds of the randomized-scheduling modulo-2 region for one parameter tuple.

    With no single-transmission slots (P1 = P2 = 1, or both zero) the state
    1-or-2 term has zero weight and the region collapses to the origin.
    """
    pre, s = params.prefix, params.sched
    a, b, c = hm_bound_arrays(ch, pre.ebar1, pre.ebar2, params.mu1, params.mu2, s.p1, s.p2)
    return RateBounds(float(a), float(b), float(c))


def hd_deterministic_bounds(ch: ModuloChannel, prefix: ModuloPrefix, mu1, mu2,
                            shares: DeterministicShares) -> RateBounds:
    """Deterministic (publicly known) time division between the two users."""
    d = _hm_derived(ch, prefix.ebar1, prefix.ebar2, mu1, mu2, 1.0, 0.0)
    main1 = H(d["muhat2"]) - H(d["ehat2"])
    main2 = H(d["muhat1"]) - H(d["ehat1"])
    eve1 = H(d["mu_e1"]) - H(d["eps_e1"])
    eve2 = H(d["mu_e2"]) - H(d["eps_e2"])
    a = shares.ps1 * main1
    b = shares.ps2 * main2
    c = shares.ps1 * max(main1 - eve1, 0.0) + shares.ps2 * max(main2 - eve2, 0.0)
    return RateBounds(float(a), float(b), float(c))


@dataclass(frozen=True)
class ModuloSweep:
    prefix_step: float = 0.1
    mu_step: float = 0.1
    sched_step: float = 0.1


def _grid(step):
    if not 0.0 < step <= 0.5:
        raise DomainError(f"grid step must lie in (0, 0.5], got {step}")
    return np.union1d(np.linspace(0.0, 1.0, int(round(1.0 / step)) + 1), [0.5])


def hm_region(ch: ModuloChannel, sweep: ModuloSweep = ModuloSweep()) -> RateRegion:
    ge, gm, gs = _grid(sweep.prefix_step), _grid(sweep.mu_step), _grid(sweep.sched_step)
    e1, e2, m1, m2 = (x.ravel() for x in np.meshgrid(ge, ge, gm, gm, indexing="ij"))
    pieces = [np.zeros((1, 2))]
    for p1 in gs:
        for p2 in gs:
            if p1 * (1 - p2) == 0 and p2 * (1 - p1) == 0:
                continue
            a, b, c = hm_bound_arrays(ch, e1, e2, m1, m2, p1, p2)
            pieces.append(hull_of_bounds(a, b, c).vertices)
    return convex_hull(np.vstack(pieces))


# --- Gaussian -------------------------------------------------------------


@dataclass(frozen=True)
class HalfDuplexGaussianParams:
    split: PowerSplit
    sched: SchedulingProbs
    rho_r: float

    def check(self, ch: GaussianChannel):
        sp, s = self.split, self.sched
        t1 = sp.rho1c + sp.rho1n
        t2 = sp.rho2c + sp.rho2n
        if abs(t1 * ch.ge1 - self.rho_r) > _EQUALIZE_TOL or abs(t2 * ch.ge2 - self.rho_r) > _EQUALIZE_TOL:
            raise ConstraintError(
                f"Eve-referred powers {t1 * ch.ge1}, {t2 * ch.ge2} must both equal rho_r = {self.rho_r}")
        if s.p1 * t1 > ch.rho1 + 1e-12:
            raise ConstraintError(f"average power P1*(rho1c+rho1n) = {s.p1 * t1} exceeds rho1 = {ch.rho1}")
        if s.p2 * t2 > ch.rho2 + 1e-12:
            raise ConstraintError(f"average power P2*(rho2c+rho2n) = {s.p2 * t2} exceeds rho2 = {ch.rho2}")

    @classmethod
    def equalized(cls, ch: GaussianChannel, rho_r, share1, share2, sched: SchedulingProbs):
        """Build a split whose Eve-referred total is ``rho_r`` for both users.

        ``share_i`` is the fraction of user i's total sent as codeword.
        """
        if ch.ge1 <= 0 or ch.ge2 <= 0:
            raise ConstraintError("power equalization at Eve needs ge1, ge2 > 0")
        t1, t2 = rho_r / ch.ge1, rho_r / ch.ge2
        split = PowerSplit(share1 * t1, (1 - share1) * t1, share2 * t2, (1 - share2) * t2)
        return cls(split, sched, rho_r)


def hg_leakage(ch: GaussianChannel, params: HalfDuplexGaussianParams) -> float:
    """h(Z) - h(Z | C1, C2): Eve's information per slot, averaged over states."""
    sp, s = params.split, params.sched
    collide = s.p1 * s.p2 * gamma_rate(
        (sp.rho1c * ch.ge1 + sp.rho2c * ch.ge2) / (1.0 + sp.rho1n * ch.ge1 + sp.rho2n * ch.ge2))
    w = s.single1 + s.single2
    if w == 0.0:
        return float(collide)
    h_z = 0.5 * math.log2(2 * math.pi * math.e * (1.0 + params.rho_r))
    h_cond = expected_mixture_entropy(
        s.d1, 1.0 + sp.rho1n * ch.ge1, 1.0 + sp.rho2n * ch.ge2,
        sp.rho1c * ch.ge1, sp.rho2c * ch.ge2)
    return float(collide + w * (h_z - h_cond))


def hg_bounds(ch: GaussianChannel, params: HalfDuplexGaussianParams) -> RateBounds:
    params.check(ch)
    sp, s = params.split, params.sched
    a = s.single1 * gamma_rate(sp.rho1c / (1.0 + sp.rho1n))
    b = s.single2 * gamma_rate(sp.rho2c / (1.0 + sp.rho2n))
    return RateBounds(float(a), float(b), float(a + b - hg_leakage(ch, params)))


@dataclass(frozen=True)
class GaussianHDSweep:
    """Scheduling grid x Eve-referred power levels x codeword shares per user."""

    sched_step: float = 0.1
    rho_levels: int = 4
    share_levels: int = 5


def hg_region(ch: GaussianChannel, sweep: GaussianHDSweep = GaussianHDSweep()) -> RateRegion:
    gs = _grid(sweep.sched_step)
    shares = np.linspace(0.0, 1.0, sweep.share_levels)
    fracs = np.linspace(0.0, 1.0, sweep.rho_levels + 1)[1:]
    a_all, b_all, c_all = [], [], []
    for p1 in gs:
        for p2 in gs:
            sched = SchedulingProbs(float(p1), float(p2))
            if sched.single1 == 0 and sched.single2 == 0:
                continue
            caps = [r * g / p for r, g, p in ((ch.rho1, ch.ge1, p1), (ch.rho2, ch.ge2, p2)) if p > 0]
            rho_r_max = min(caps)
            for f in fracs:
                for s1 in shares:
                    for s2 in shares:
                        prm = HalfDuplexGaussianParams.equalized(ch, f * rho_r_max, s1, s2, sched)
                        bd = hg_bounds(ch, prm)
                        a_all.append(bd.a)
                        b_all.append(bd.b)
                        c_all.append(bd.c)
    if not a_all:
        return convex_hull([(0.0, 0.0)])
    return hull_of_bounds(np.array(a_all), np.array(b_all), np.array(c_all))
