"""Sampling oracle for Eve's per-slot information h(Z) - h(Z|C1,C2) in the
half-duplex Gaussian model. Independent of the quadrature code path."""

import math

import numpy as np


def _log_normal(z, mean, var):
    return -0.5 * np.log(2 * np.pi * var) - (z - mean) ** 2 / (2 * var)


def leakage_monte_carlo(ch, prm, n, rng):
    """Return (estimate, standard error) in bits per slot, averaged over slot states."""
    sp, s = prm.split, prm.sched
    p_collide = s.p1 * s.p2
    p_single = s.single1 + s.single2
    state = rng.choice(3, size=n, p=[p_collide, p_single, max(0.0, 1 - p_collide - p_single)])
    # codewords referred to Eve's front end
    i = rng.normal(0.0, math.sqrt(sp.rho1c * ch.ge1), n)
    j = rng.normal(0.0, math.sqrt(sp.rho2c * ch.ge2), n)
    v1 = 1 + sp.rho1n * ch.ge1
    v2 = 1 + sp.rho2n * ch.ge2
    info = np.zeros(n)

    col = state == 0
    if col.any():
        var_c = 1 + sp.rho1n * ch.ge1 + sp.rho2n * ch.ge2
        mean = i[col] + j[col]
        z = mean + rng.normal(0.0, math.sqrt(var_c), col.sum())
        total = var_c + sp.rho1c * ch.ge1 + sp.rho2c * ch.ge2
        info[col] = _log_normal(z, mean, var_c) - _log_normal(z, 0.0, total)

    one = state == 1
    if one.any():
        m = one.sum()
        from_1 = rng.random(m) < s.d1
        z = np.where(from_1, i[one] + rng.normal(0.0, math.sqrt(v1), m),
                     j[one] + rng.normal(0.0, math.sqrt(v2), m))
        with np.errstate(divide="ignore"):
            lw1 = math.log(s.d1) if s.d1 > 0 else -np.inf
            lw2 = math.log(s.d2) if s.d2 > 0 else -np.inf
        cond = np.logaddexp(lw1 + _log_normal(z, i[one], v1), lw2 + _log_normal(z, j[one], v2))
        info[one] = cond - _log_normal(z, 0.0, 1 + prm.rho_r)

    info /= math.log(2)
    return float(info.mean()), float(info.std() / math.sqrt(n))
