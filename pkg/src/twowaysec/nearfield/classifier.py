"""Eve's energy classifier.

Eve is noiseless and knows every transmission scenario a priori, so the
model she trains is the exact set of received powers each event can
produce. A reading is attributed to the events whose power set contains it.
When several events fit (or none of the allowed labels fit), a tie rule
decides: a fair coin over the candidates, or a fixed preference for one
label. The preferences realise the classifier family that the worst case
over classifiers ranges over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import (EVENT_A, EVENT_AB, EVENT_B, GeometryConfig, PowerPolicy,
                    concurrent_power, phase_gap, place_eve)

# relative slack when testing a power against a support boundary
_REL_TOL = 1e-9

TDM_CLEAN, TDM_JAMMED = 0, 1
TDM_NAMES = ("clean", "jammed")
FAMILIES = ("binary", "full", "all")


@dataclass(frozen=True)
class PowerSupport:
    """Union of closed power intervals; points are zero-width intervals."""

    intervals: np.ndarray  # (k, 2)

    def contains(self, power):
        p = np.asarray(power, dtype=float)[..., None]
        lo = self.intervals[:, 0] * (1 - _REL_TOL)
        hi = self.intervals[:, 1] * (1 + _REL_TOL)
        return np.any((p >= lo) & (p <= hi), axis=-1)


def single_support(policy: PowerPolicy, d, alpha) -> PowerSupport:
    return PowerSupport(policy.atoms() / d**alpha)


def _quadratic_range(a_lo, a_hi, b_lo, b_hi, c):
    """Range of ua^2 + ub^2 + 2 c ua ub over a box, |c| <= 1.

    The form is convex, so its max sits at a corner and its min on an edge.
    """
    q = lambda x, y: x * x + y * y + 2 * c * x * y  # noqa: E731
    corners = [q(x, y) for x in (a_lo, a_hi) for y in (b_lo, b_hi)]
    edges = [q(x, min(max(-c * x, b_lo), b_hi)) for x in (a_lo, a_hi)]
    edges += [q(min(max(-c * y, a_lo), a_hi), y) for y in (b_lo, b_hi)]
    return max(min(edges), 0.0), max(corners)


def concurrent_support(pol_a: PowerPolicy, pol_b: PowerPolicy, geo: GeometryConfig) -> PowerSupport:
    d_ae, d_be = place_eve(geo)
    sa = np.sqrt(pol_a.atoms()) * d_ae ** (-geo.alpha_pl / 2)
    sb = np.sqrt(pol_b.atoms()) * d_be ** (-geo.alpha_pl / 2)
    cos_phi = math.cos(phase_gap(geo))
    out = []
    for a_lo, a_hi in sa:
        for b_lo, b_hi in sb:
            for sign in (1.0, -1.0):
                if a_lo == a_hi and b_lo == b_hi:
                    v = float(concurrent_power(a_lo, b_lo, sign, phase_gap(geo)))
                    out.append((v, v))
                else:
                    out.append(_quadratic_range(a_lo, a_hi, b_lo, b_hi, sign * cos_phi))
    return PowerSupport(np.array(out))


@dataclass(frozen=True)
class LikelihoodModel:
    """Per-event support of Eve's received power, indexed by event code."""

    mode: str  # "two-way" or "tdm"
    supports: tuple

    def classifier(self, labels: Sequence[int], favour: int | None = None) -> "EnergyClassifier":
        return EnergyClassifier(self, tuple(labels), favour)

    def variants(self, family="binary"):
        """Classifier family Eve may pick from (the worst case is taken over it).

        Two-way families: "binary" never erases (every symbol is attributed
        to A or B), "full" may also label a symbol as a collision, "all" is
        their union. TDM has a single family.
        """
        if self.mode == "tdm":
            both = (TDM_CLEAN, TDM_JAMMED)
            return {
                "fair": self.classifier(both),
                "favour-clean": self.classifier(both, TDM_CLEAN),
                "favour-jammed": self.classifier(both, TDM_JAMMED),
            }
        if family not in FAMILIES:
            raise ValueError(f"unknown classifier family {family!r}")
        out = {}
        for name, labels in (("binary", (EVENT_A, EVENT_B)), ("full", (EVENT_A, EVENT_B, EVENT_AB))):
            if family in (name, "all"):
                out[f"{name}-fair"] = self.classifier(labels)
                out[f"{name}-favour-A"] = self.classifier(labels, EVENT_A)
                out[f"{name}-favour-B"] = self.classifier(labels, EVENT_B)
        return out


@dataclass(frozen=True)
class EnergyClassifier:
    model: LikelihoodModel
    labels: tuple
    favour: int | None = None

    def candidates(self, power):
        n_events = len(self.model.supports)
        power = np.asarray(power, dtype=float)
        cand = np.zeros(power.shape + (n_events,), dtype=bool)
        for e in self.labels:
            cand[..., e] = self.model.supports[e].contains(power)
        allowed = np.zeros(n_events, dtype=bool)
        allowed[list(self.labels)] = True
        empty = ~cand.any(axis=-1)
        cand[empty] = allowed
        return cand

    def classify(self, power, u, truth=None):
        """Labels for ``power``; ``u`` holds uniform draws used to break ties."""
        cand = self.candidates(power)
        count = cand.sum(axis=-1)
        k = np.minimum((np.asarray(u) * count).astype(int), count - 1)
        label = np.argmax(np.cumsum(cand, axis=-1) > k[..., None], axis=-1)
        if self.favour is not None:
            label = np.where(cand[..., self.favour], self.favour, label)
        return label


@dataclass(frozen=True)
class OracleClassifier:
    """Always right: reports the true event."""

    def classify(self, power, u, truth=None):
        if truth is None:
            raise ValueError("the oracle classifier needs the true events")
        return np.asarray(truth)


def train_classifier(geo: GeometryConfig, policy_a: PowerPolicy, policy_b: PowerPolicy | None = None,
                     mode: str = "two-way", sender: str = "A") -> LikelihoodModel:
    """Closed-form likelihood supports; no sampling is needed for a noiseless Eve.

    In TDM mode ``sender`` names the data node; the other node jams.
    """
    policy_b = policy_a if policy_b is None else policy_b
    d_ae, d_be = place_eve(geo)
    sup_a = single_support(policy_a, d_ae, geo.alpha_pl)
    sup_b = single_support(policy_b, d_be, geo.alpha_pl)
    sup_ab = concurrent_support(policy_a, policy_b, geo)
    if mode == "two-way":
        return LikelihoodModel(mode, (sup_a, sup_b, sup_ab))
    if mode == "tdm":
        if sender not in ("A", "B"):
            raise ValueError(f"sender must be 'A' or 'B', got {sender!r}")
        return LikelihoodModel(mode, (sup_a if sender == "A" else sup_b, sup_ab))
    raise ValueError(f"unknown mode {mode!r}")
