"""Placement, transmit-power policies and Eve's received power.

Alice sits at (-d_ab/2, 0) and Bob at (+d_ab/2, 0). Eve is placed on the
exclusion circle of radius r_e at angle theta, the closest position she is
allowed, since received power only drops with distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from ..errors import ConfigError

# wavelength of a 2.4 GHz carrier, metres
DEFAULT_WAVELENGTH = 0.125

EVENT_A, EVENT_B, EVENT_AB = 0, 1, 2
EVENT_NAMES = ("A", "B", "AB")


@dataclass(frozen=True)
class GeometryConfig:
    d_ab: float = 1.0
    r_e: float = 100.0
    theta: float = math.pi / 2
    alpha_pl: float = 2.0
    k_wave: float = 2 * math.pi / DEFAULT_WAVELENGTH
    # receive gains; with a noiseless Eve they only rescale every power and drop out
    g_a: float = 1.0
    g_b: float = 1.0
    g_e: float = 1.0

    def __post_init__(self):
        for name in ("d_ab", "r_e", "alpha_pl", "g_a", "g_b", "g_e"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ConfigError(name, f"must be a positive finite number, got {v}")
        if not 0.0 <= self.theta <= math.pi:
            raise ConfigError("theta", f"must lie in [0, pi], got {self.theta}")
        if not (math.isfinite(self.k_wave) and self.k_wave >= 0):
            raise ConfigError("k_wave", f"must be non-negative, got {self.k_wave}")
        d_ae, d_be = place_eve(self)
        if d_ae <= 0 or d_be <= 0:
            raise ConfigError("r_e", "Eve coincides with a legitimate node")

    def at(self, theta: float) -> "GeometryConfig":
        return replace(self, theta=float(theta))

    @property
    def distance_ratio(self):
        """d_min / d_max between Eve and the two nodes."""
        d_ae, d_be = place_eve(self)
        return min(d_ae, d_be) / max(d_ae, d_be)


def place_eve(geo: GeometryConfig):
    x = geo.r_e * math.cos(geo.theta)
    y = geo.r_e * math.sin(geo.theta)
    half = geo.d_ab / 2
    return math.hypot(x + half, y), math.hypot(x - half, y)


def theta_for_ratio(d_ab, r_e, ratio):
    """Angle on the circle where d_min/d_max equals ``ratio`` (r_e > d_ab/2)."""
    half = d_ab / 2
    if r_e <= half:
        raise ConfigError("r_e", "ratio inversion needs r_e > d_ab/2")
    # d_ae^2 = r^2 + h^2 + 2 r h cos(t), d_be^2 = r^2 + h^2 - 2 r h cos(t)
    q = ratio**2
    s = r_e**2 + half**2
    cos_t = s * (1 - q) / (2 * r_e * half * (1 + q))
    return math.acos(min(1.0, max(-1.0, cos_t)))


@dataclass(frozen=True)
class PowerPolicy:
    """Per-symbol transmit SNR at unit distance, drawn independently each symbol."""

    rho_min: float = 1.0
    rho_max: float = 100.0
    law: str = "continuous-uniform"
    levels: Sequence[float] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(float(x) for x in self.levels))
        if not (self.rho_min > 0 and self.rho_max >= self.rho_min and math.isfinite(self.rho_max)):
            raise ConfigError("rho_min", f"need 0 < rho_min <= rho_max, got {self.rho_min}, {self.rho_max}")
        if self.law == "continuous-uniform":
            if self.levels:
                raise ConfigError("levels", "only used with the discrete-uniform law")
        elif self.law == "discrete-uniform":
            if not self.levels:
                raise ConfigError("levels", "discrete-uniform law needs at least one level")
            if any(not (self.rho_min <= x <= self.rho_max) for x in self.levels):
                raise ConfigError("levels", "levels must lie in [rho_min, rho_max]")
        else:
            raise ConfigError("law", f"unknown power law {self.law!r}")

    @property
    def discrete(self):
        return self.law == "discrete-uniform"

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.discrete:
            return np.asarray(self.levels)[rng.integers(0, len(self.levels), n)]
        return rng.uniform(self.rho_min, self.rho_max, n)

    def atoms(self):
        """(lo, hi) SNR ranges the policy can produce: one interval or one point per level."""
        if self.discrete:
            return np.array([(x, x) for x in sorted(set(self.levels))])
        return np.array([(self.rho_min, self.rho_max)])


def eve_received_power(event, powers, symbols, geo: GeometryConfig):
    """Noiseless received power at Eve for one or many symbols.

    ``event`` is "A", "B" or "AB" (or the matching integer code). ``powers``
    is (rho_a, rho_b) and ``symbols`` is (s_a, s_b) with entries in {-1, +1};
    the inactive node's entries are ignored.
    """
    if isinstance(event, str):
        if event not in EVENT_NAMES:
            raise ConfigError("event", f"unknown event {event!r}")
        event = EVENT_NAMES.index(event)
    rho_a, rho_b = (np.asarray(p, dtype=float) for p in powers)
    d_ae, d_be = place_eve(geo)
    if event == EVENT_A:
        out = rho_a / d_ae**geo.alpha_pl
    elif event == EVENT_B:
        out = rho_b / d_be**geo.alpha_pl
    else:
        s_a, s_b = (np.asarray(s, dtype=float) for s in symbols)
        out = concurrent_power(np.sqrt(rho_a) * d_ae ** (-geo.alpha_pl / 2),
                               np.sqrt(rho_b) * d_be ** (-geo.alpha_pl / 2),
                               s_a * s_b, phase_gap(geo))
    return float(out) if np.ndim(out) == 0 else out


def phase_gap(geo: GeometryConfig):
    d_ae, d_be = place_eve(geo)
    return geo.k_wave * (d_ae - d_be)


def concurrent_power(ua, ub, sign, phase):
    """|ua s_a e^{-j k d_ae} + ub s_b e^{-j k d_be}|^2 with sign = s_a s_b."""
    return ua**2 + ub**2 + 2.0 * sign * ua * ub * math.cos(phase)
