"""Monte Carlo estimates of Eve's classification statistics.

Every (stream, chunk) pair draws from its own generator derived from the
user seed, so results are bit-identical for identical inputs and partial
counts merge by plain addition. Classification does not depend on the
protocol parameter (beta or P_t), so statistics are estimated once per
geometry and reused across the whole parameter grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from .classifier import TDM_CLEAN, TDM_JAMMED, OracleClassifier, train_classifier
from .model import (EVENT_A, EVENT_AB, EVENT_B, GeometryConfig, PowerPolicy,
                    concurrent_power, phase_gap, place_eve)

CHUNK = 1 << 18
MIN_TRIALS = 10_000


def _rng(seed, key, chunk):
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(*key, chunk)))


def _chunks(trials):
    n_chunks = -(-trials // CHUNK)
    for c in range(n_chunks):
        yield c, min(CHUNK, trials - c * CHUNK)


def _check_trials(trials):
    if not isinstance(trials, (int, np.integer)) or trials <= 0:
        raise ConfigError("trials", f"must be a positive integer, got {trials!r}")
    if trials < MIN_TRIALS:
        warnings.warn(f"trials={trials} is below {MIN_TRIALS}; estimates will be noisy", stacklevel=3)


def _se(p, n):
    return math.sqrt(max(p * (1 - p), 0.0) / n) if n else 0.0


@dataclass(frozen=True)
class TdmClassifierStats:
    p_m: float
    p_f: float
    p_e_given_m: float
    trials: int = 0

    def __post_init__(self):
        for name in ("p_m", "p_f", "p_e_given_m"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    def standard_errors(self):
        return {"p_m": _se(self.p_m, self.trials), "p_f": _se(self.p_f, self.trials)}


@dataclass(frozen=True)
class TwoWayClassifierStats:
    """``p[e1][e2]``: probability that true event e1 is labelled e2 (codes A, B, AB).

    Labelling a symbol AB means Eve erases it as a collision.
    """

    p: tuple
    p_e_ab_to_a: float
    p_e_ab_to_b: float
    trials: int = 0
    counts_ab: tuple = field(default=(0, 0))

    def __post_init__(self):
        m = np.asarray(self.p, dtype=float)
        if m.shape != (3, 3) or np.any(m < 0) or np.any(m > 1):
            raise ValueError("p must be a 3x3 matrix of probabilities")
        object.__setattr__(self, "p", tuple(tuple(float(x) for x in row) for row in m))

    def prob(self, e1, e2):
        return self.p[e1][e2]

    def misclassification(self):
        """The six binary-attribution probabilities P(e1 -> A), P(e1 -> B)."""
        names = ("A", "B", "AB")
        return {f"{names[e1]}->{names[e2]}": self.p[e1][e2]
                for e1 in (EVENT_A, EVENT_B, EVENT_AB) for e2 in (EVENT_A, EVENT_B)}

    def standard_error(self, e1, e2):
        return _se(self.p[e1][e2], self.trials)

    @classmethod
    def from_rows(cls, rows, pe_a, pe_b, trials=0):
        return cls(tuple(tuple(r) for r in rows), pe_a, pe_b, trials)


def _uniform_symbols(rng, n):
    return np.where(rng.random(n) < 0.5, -1.0, 1.0)


def _stronger_is_b(ua, ub, rng):
    """True where Bob's component dominates at Eve; exact ties go to a fair coin."""
    coin = rng.random(ua.shape) < 0.5
    return np.where(ua == ub, coin, ub > ua)


def estimate_stats_twoway(geo: GeometryConfig, policy_a: PowerPolicy, policy_b: PowerPolicy | None,
                          classifiers: dict, trials: int, seed: int, stream=(0,)):
    """Stats for each classifier in ``classifiers`` using common random numbers."""
    _check_trials(trials)
    policy_b = policy_a if policy_b is None else policy_b
    d_ae, d_be = place_eve(geo)
    al = geo.alpha_pl
    phi = phase_gap(geo)
    names = list(classifiers)
    conf = {k: np.zeros((3, 3)) for k in names}
    err = {k: np.zeros(2) for k in names}
    for event in (EVENT_A, EVENT_B, EVENT_AB):
        for c, n in _chunks(trials):
            rng = _rng(seed, (*stream, event), c)
            rho_a = policy_a.sample(rng, n)
            rho_b = policy_b.sample(rng, n)
            u = rng.random(n)
            if event == EVENT_A:
                power = rho_a / d_ae**al
            elif event == EVENT_B:
                power = rho_b / d_be**al
            else:
                ua = np.sqrt(rho_a) * d_ae ** (-al / 2)
                ub = np.sqrt(rho_b) * d_be ** (-al / 2)
                s_a, s_b = _uniform_symbols(rng, n), _uniform_symbols(rng, n)
                power = concurrent_power(ua, ub, s_a * s_b, phi)
                b_wins = _stronger_is_b(ua, ub, rng)
                differ = s_a != s_b
                wrong_a = b_wins & differ  # Alice's symbol read as Bob's opposite one
                wrong_b = ~b_wins & differ
            truth = np.full(n, event)
            for k in names:
                lab = classifiers[k].classify(power, u, truth)
                conf[k][event] += np.bincount(lab, minlength=3)[:3]
                if event == EVENT_AB:
                    err[k] += (np.count_nonzero(wrong_a & (lab == EVENT_A)),
                               np.count_nonzero(wrong_b & (lab == EVENT_B)))
    out = {}
    for k in names:
        m = conf[k]
        ab_a, ab_b = m[EVENT_AB, EVENT_A], m[EVENT_AB, EVENT_B]
        out[k] = TwoWayClassifierStats(
            tuple(tuple(row) for row in m / trials),
            err[k][0] / ab_a if ab_a else 0.0,
            err[k][1] / ab_b if ab_b else 0.0,
            trials, (int(ab_a), int(ab_b)))
    return out


def estimate_stats_tdm(geo: GeometryConfig, policy_data: PowerPolicy, policy_feedback: PowerPolicy,
                       classifiers: dict, trials: int, seed: int, sender="A", stream=(0,)):
    """Miss, false-alarm and miss-decoding-error rates for one data direction."""
    _check_trials(trials)
    d_ae, d_be = place_eve(geo)
    d_data, d_jam = (d_ae, d_be) if sender == "A" else (d_be, d_ae)
    al = geo.alpha_pl
    phi = phase_gap(geo)
    names = list(classifiers)
    miss = dict.fromkeys(names, 0)
    false_alarm = dict.fromkeys(names, 0)
    miss_err = dict.fromkeys(names, 0)
    for event in (TDM_CLEAN, TDM_JAMMED):
        for c, n in _chunks(trials):
            rng = _rng(seed, (*stream, event), c)
            rho_d = policy_data.sample(rng, n)
            rho_j = policy_feedback.sample(rng, n)
            u = rng.random(n)
            if event == TDM_CLEAN:
                power = rho_d / d_data**al
            else:
                ud = np.sqrt(rho_d) * d_data ** (-al / 2)
                uj = np.sqrt(rho_j) * d_jam ** (-al / 2)
                s_d, s_j = _uniform_symbols(rng, n), _uniform_symbols(rng, n)
                power = concurrent_power(ud, uj, s_d * s_j, phi)
                wrong = _stronger_is_b(ud, uj, rng) & (s_d != s_j)
            truth = np.full(n, event)
            for k in names:
                lab = classifiers[k].classify(power, u, truth)
                if event == TDM_CLEAN:
                    false_alarm[k] += np.count_nonzero(lab == TDM_JAMMED)
                else:
                    missed = lab == TDM_CLEAN
                    miss[k] += np.count_nonzero(missed)
                    miss_err[k] += np.count_nonzero(missed & wrong)
    return {k: TdmClassifierStats(miss[k] / trials, false_alarm[k] / trials,
                                  miss_err[k] / miss[k] if miss[k] else 0.0, trials)
            for k in names}


def twoway_variant_stats(geo, policy_a, policy_b, trials, seed, stream=(0,), oracle=False, family="binary"):
    model = train_classifier(geo, policy_a, policy_b, mode="two-way")
    classifiers = {"oracle": OracleClassifier()} if oracle else model.variants(family)
    return estimate_stats_twoway(geo, policy_a, policy_b, classifiers, trials, seed, stream)


def tdm_variant_stats(geo, policy_data, policy_feedback, trials, seed, sender="A", stream=(0,), oracle=False):
    pol_a, pol_b = (policy_data, policy_feedback) if sender == "A" else (policy_feedback, policy_data)
    model = train_classifier(geo, pol_a, pol_b, mode="tdm", sender=sender)
    classifiers = {"oracle": OracleClassifier()} if oracle else model.variants()
    return estimate_stats_tdm(geo, policy_data, policy_feedback, classifiers, trials, seed, sender, stream)

