"""Full-duplex two-way wiretap regions: modulo-2 and Gaussian channels.

The modulo-2 region sweeps the prefix-noise probabilities of both users;
the Gaussian region sweeps how each user splits its power between the
codeword and artificial noise. Two classical comparison schemes (three-point
time sharing with jamming, and backward key sharing) are provided for the
Gaussian case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConstraintError, DomainError
from .geometry import RateBounds, RatePoint, RateRegion, convex_hull, hull_of_bounds, pentagon
from .infotheory import binary_entropy as H
from .infotheory import bsc_compose, gamma_rate

_POWER_SLACK = 1e-12


def _check_prob(name, v):
    if not 0.0 <= v <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class ModuloChannel:
    """Crossover probabilities of the noise at user 1, user 2 and Eve."""

    eps1: float
    eps2: float
    eps_e: float

    def __post_init__(self):
        for k in ("eps1", "eps2", "eps_e"):
            _check_prob(k, getattr(self, k))

    def swapped(self):
        return ModuloChannel(self.eps2, self.eps1, self.eps_e)


@dataclass(frozen=True)
class ModuloPrefix:
    """Prefix-noise probabilities added by Alice (ebar1) and Bob (ebar2)."""

    ebar1: float
    ebar2: float

    def __post_init__(self):
        _check_prob("ebar1", self.ebar1)
        _check_prob("ebar2", self.ebar2)

    def swapped(self):
        return ModuloPrefix(self.ebar2, self.ebar1)


@dataclass(frozen=True)
class ModuloDerived:
    ehat1: float
    ehat2: float
    ebar12: float
    ehat_e: float

    @classmethod
    def from_params(cls, ch: ModuloChannel, pre: ModuloPrefix):
        ebar12 = bsc_compose(pre.ebar1, pre.ebar2)
        return cls(
            ehat1=bsc_compose(ch.eps1, pre.ebar2),
            ehat2=bsc_compose(ch.eps2, pre.ebar1),
            ebar12=ebar12,
            ehat_e=bsc_compose(ch.eps_e, ebar12),
        )


@dataclass(frozen=True)
class GaussianChannel:
    """Power gains and budgets. g11, g22 never enter the rates (self-interference is known)."""

    ge1: float
    ge2: float
    rho1: float
    rho2: float
    g11: float = 1.0
    g22: float = 1.0

    def __post_init__(self):
        for k in ("ge1", "ge2", "rho1", "rho2", "g11", "g22"):
            if getattr(self, k) < 0:
                raise DomainError(f"{k} must be non-negative")

    def swapped(self):
        return GaussianChannel(self.ge2, self.ge1, self.rho2, self.rho1, self.g22, self.g11)


@dataclass(frozen=True)
class PowerSplit:
    """Codeword (c) and artificial-noise (n) powers of each user."""

    rho1c: float
    rho1n: float
    rho2c: float
    rho2n: float

    def __post_init__(self):
        for k in ("rho1c", "rho1n", "rho2c", "rho2n"):
            if getattr(self, k) < 0:
                raise DomainError(f"{k} must be non-negative")

    def check(self, ch: GaussianChannel):
        if self.rho1c + self.rho1n > ch.rho1 + _POWER_SLACK:
            raise ConstraintError(f"rho1c + rho1n = {self.rho1c + self.rho1n} exceeds rho1 = {ch.rho1}")
        if self.rho2c + self.rho2n > ch.rho2 + _POWER_SLACK:
            raise ConstraintError(f"rho2c + rho2n = {self.rho2c + self.rho2n} exceeds rho2 = {ch.rho2}")


# --- modulo-2 -------------------------------------------------------------


def fm_bound_arrays(ch: ModuloChannel, ebar1, ebar2):
    """Vectorized (a, b, c) over arrays of prefix probabilities."""
    ebar1 = np.asarray(ebar1, dtype=float)
    ebar2 = np.asarray(ebar2, dtype=float)
    ehat1 = bsc_compose(ch.eps1, ebar2)
    ehat2 = bsc_compose(ch.eps2, ebar1)
    ehat_e = bsc_compose(ch.eps_e, bsc_compose(ebar1, ebar2))
    h1, h2 = H(ehat1), H(ehat2)
    return 1.0 - h2, 1.0 - h1, 1.0 + H(ehat_e) - h1 - h2


def fm_bounds(ch: ModuloChannel, pre: ModuloPrefix) -> RateBounds:
    d = ModuloDerived.from_params(ch, pre)
    h1, h2 = H(d.ehat1), H(d.ehat2)
    return RateBounds(1.0 - h2, 1.0 - h1, 1.0 + H(d.ehat_e) - h1 - h2)


def _unit_grid(step):
    if not 0.0 < step <= 0.5:
        raise DomainError(f"grid step must lie in (0, 0.5], got {step}")
    n = int(round(1.0 / step))
    grid = np.linspace(0.0, 1.0, n + 1)
    # keep 0.5 on the grid: it is where prefixing saturates a main channel
    return np.union1d(grid, [0.5])


def fm_region(ch: ModuloChannel, grid_step=0.01) -> RateRegion:
    """Convex hull of the prefix-swept pentagons."""
    g = _unit_grid(grid_step)
    e1, e2 = np.meshgrid(g, g, indexing="ij")
    a, b, c = fm_bound_arrays(ch, e1.ravel(), e2.ravel())
    return hull_of_bounds(a, b, c)


def fm_corner_points(ch: ModuloChannel) -> tuple[RatePoint, RatePoint]:
    """Single-user corner points of the modulo-2 region.

    User 1's message reaches user 2 through noise eps2, so the R1 corner is
    1 - H(eps2); it is attained with no prefix at Alice and a saturating
    prefix (1/2) at Bob.
    """
    return RatePoint(1.0 - H(ch.eps2), 0.0), RatePoint(0.0, 1.0 - H(ch.eps1))


def fm_no_prefix_region(ch: ModuloChannel) -> RateRegion:
    """Binning and key sharing without channel prefixing."""
    return pentagon(fm_bounds(ch, ModuloPrefix(0.0, 0.0)))


# --- Gaussian -------------------------------------------------------------


def fg_bound_arrays(ch: GaussianChannel, p1c, p1n, p2c, p2n):
    a = gamma_rate(p1c / (1.0 + p1n))
    b = gamma_rate(p2c / (1.0 + p2n))
    eve = gamma_rate((p1c * ch.ge1 + p2c * ch.ge2) / (1.0 + p1n * ch.ge1 + p2n * ch.ge2))
    return a, b, a + b - eve


def fg_bounds(ch: GaussianChannel, sp: PowerSplit) -> RateBounds:
    sp.check(ch)
    a, b, c = fg_bound_arrays(ch, sp.rho1c, sp.rho1n, sp.rho2c, sp.rho2n)
    return RateBounds(float(a), float(b), float(c))


@dataclass(frozen=True)
class GaussianSweep:
    """Per-user fractional grid: fraction of the budget used x fraction sent as codeword.

    ``restrict`` limits the sweep to a sub-scheme:
      None            all splits
      "no-prefix"     no artificial noise at either user (binning + key sharing)
      "bin-jam"       one user sends only codeword, the other only noise
    """

    levels: int = 50
    restrict: Optional[str] = None

    def __post_init__(self):
        if self.levels < 2:
            raise DomainError("GaussianSweep.levels must be >= 2")
        if self.restrict not in (None, "no-prefix", "bin-jam"):
            raise DomainError(f"unknown restriction {self.restrict!r}")


def _user_splits(rho, levels, allow_c=True, allow_n=True):
    f = np.linspace(0.0, 1.0, levels)
    t, s = np.meshgrid(f, f, indexing="ij")
    if not allow_n:
        s = np.ones_like(s)
    if not allow_c:
        s = np.zeros_like(s)
    pc = rho * t * s
    pn = rho * t * (1.0 - s)
    pairs = np.unique(np.stack([pc.ravel(), pn.ravel()], axis=1), axis=0)
    return pairs[:, 0], pairs[:, 1]


def _fg_hull(ch, u1, u2, chunk=400):
    c1, n1 = u1
    c2, n2 = u2
    pieces = []
    for start in range(0, len(c1), chunk):
        sl = slice(start, start + chunk)
        a, b, c = fg_bound_arrays(ch, c1[sl, None], n1[sl, None], c2[None, :], n2[None, :])
        a, b = np.broadcast_arrays(a, b)
        pieces.append(hull_of_bounds(a.ravel(), b.ravel(), c.ravel()).vertices)
    return convex_hull(np.vstack(pieces))


def fg_region(ch: GaussianChannel, sweep: GaussianSweep = GaussianSweep()) -> RateRegion:
    n = sweep.levels
    if sweep.restrict is None:
        return _fg_hull(ch, _user_splits(ch.rho1, n), _user_splits(ch.rho2, n))
    if sweep.restrict == "no-prefix":
        return _fg_hull(ch, _user_splits(ch.rho1, n, allow_n=False),
                        _user_splits(ch.rho2, n, allow_n=False))
    parts = [
        _fg_hull(ch, _user_splits(ch.rho1, n, allow_n=False), _user_splits(ch.rho2, n, allow_c=False)),
        _fg_hull(ch, _user_splits(ch.rho1, n, allow_c=False), _user_splits(ch.rho2, n, allow_n=False)),
    ]
    return convex_hull(np.vstack([p.vertices for p in parts]))


def _alpha_grid(alpha_step, extra=()):
    if not 0.0 < alpha_step <= 0.5:
        raise DomainError(f"alpha_step must lie in (0, 0.5], got {alpha_step}")
    n = int(round(1.0 / alpha_step))
    grid = np.linspace(0.0, 1.0, n + 1)
    extra = [x for x in extra if 0.0 <= x <= 1.0]
    return np.union1d(grid, extra)


def _key_rate(rho_tx, rho_other, ge_tx, ge_other):
    """Secret-key rate of the user sending ``rho_tx`` while the other jams."""
    return gamma_rate(rho_tx) - gamma_rate(ge_tx * rho_tx / (1.0 + ge_other * rho_other))


def he_yener_rate(ch: GaussianChannel, alpha_step=1e-3) -> float:
    """R1* of the three-point cooperative-jamming scheme.

    The objective is piecewise linear in alpha with one interior kink, so
    the kink is added to the grid; alpha = 0 is taken by continuity (rate 0).
    """
    g1 = gamma_rate(ch.rho1)
    leak = gamma_rate(ch.ge1 * ch.rho1 / (1.0 + ch.ge2 * ch.rho2))
    rk = max(_key_rate(ch.rho2, ch.rho1, ch.ge2, ch.ge1), 0.0)
    kink = rk / (leak + rk) if leak + rk > 0 else 1.0
    alpha = _alpha_grid(alpha_step, [kink])
    alpha = alpha[alpha > 0]
    inner = np.maximum(leak - (1.0 - alpha) / alpha * rk, 0.0)
    vals = np.maximum(alpha * np.maximum(g1 - inner, 0.0), 0.0)
    return float(vals.max())


def backward_key_rate(ch: GaussianChannel, alpha_step=1e-3) -> float:
    """R1 dagger: Bob ships a key while Alice jams, then Alice one-time-pads."""
    g1 = gamma_rate(ch.rho1)
    rk = max(_key_rate(ch.rho2, ch.rho1, ch.ge2, ch.ge1), 0.0)
    cross = rk / (g1 + rk) if g1 + rk > 0 else 0.0
    alpha = _alpha_grid(alpha_step, [cross])
    return float(np.minimum(alpha * g1, (1.0 - alpha) * rk).max())


def he_yener_region(ch: GaussianChannel, alpha_step=1e-3) -> RateRegion:
    r1 = he_yener_rate(ch, alpha_step)
    r2 = he_yener_rate(ch.swapped(), alpha_step)
    return convex_hull([(0.0, 0.0), (r1, 0.0), (0.0, r2)])


def backward_key_region(ch: GaussianChannel, alpha_step=1e-3) -> RateRegion:
    r1 = backward_key_rate(ch, alpha_step)
    r2 = backward_key_rate(ch.swapped(), alpha_step)
    return convex_hull([(0.0, 0.0), (r1, 0.0), (0.0, r2)])
