"""Pure-numpy implementations of the hot kernels.

Function signatures and semantics match ``_native`` exactly; see
``common.py`` for the stream contract.
"""

from __future__ import annotations

import numpy as np

from .common import GOLDEN

_G = np.uint64(GOLDEN)
_ONE = np.uint64(1)
_U53 = 2.0 ** -53

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def _step(base: np.ndarray, i: int) -> np.ndarray:
    return _mix64(base + np.uint64((i + 1) * GOLDEN & 0xFFFFFFFFFFFFFFFF))


def _unit(v: np.ndarray) -> np.ndarray:
    return ((v >> _S11).astype(np.float64) + 1.0) * _U53


def _trial_keys(seed: int, start: int, n: int) -> np.ndarray:
    t = np.arange(start, start + n, dtype=np.uint64)
    return _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + (t + _ONE) * _G)


def _clutter_sums(kc: np.ndarray, pois_cdf: np.ndarray) -> np.ndarray:
    """Sum of unit exponentials per trial, counts from channel-0 draw 0."""
    u0 = _unit(_step(kc, 0))
    counts = np.searchsorted(pois_cdf, u0, side="left")
    sum_e = np.zeros(kc.shape[0])
    kmax = int(counts.max()) if kc.shape[0] else 0
    for j in range(1, kmax + 1):
        idx = np.nonzero(counts >= j)[0]
        sum_e[idx] += -np.log(_unit(_step(kc[idx], j)))
    return sum_e


def mc_count_hits(pois_cdf, mark_scale, noise, eta, s0_det, s0_exp_mean,
                  seed, trials, start_trial=0):
    """Number of trials where clutter + signal + noise reaches the threshold."""
    k1 = _trial_keys(seed, start_trial, trials)
    kc = _step(k1, 0)
    val = mark_scale * _clutter_sums(kc, np.asarray(pois_cdf))
    val = val + s0_det
    if s0_exp_mean > 0.0:
        kt = _step(k1, 1)
        val = val + s0_exp_mean * (-np.log(_unit(_step(kt, 0))))
    else:
        val = val + 0.0
    val = val + noise
    return int(np.count_nonzero(val >= eta))


def mc_sample_clutter(pois_cdf, mark_scale, seed, n, start_trial=0):
    """One compound-Poisson draw per trial index."""
    k1 = _trial_keys(seed, start_trial, n)
    kc = _step(k1, 0)
    return mark_scale * _clutter_sums(kc, np.asarray(pois_cdf))


def mc_count_hits_pr(pois_cdf, coef, r_lo, r_hi, two_alpha, noise, eta,
                     s0_det, s0_exp_mean, seed, trials, start_trial=0):
    """Position-resolved variant: each scatterer gets its own range draw."""
    pois_cdf = np.asarray(pois_cdf)
    k1 = _trial_keys(seed, start_trial, trials)
    kc = _step(k1, 0)
    kr = _step(k1, 2)
    u0 = _unit(_step(kc, 0))
    counts = np.searchsorted(pois_cdf, u0, side="left")
    val = np.zeros(trials)
    kmax = int(counts.max()) if trials else 0
    span = r_hi - r_lo
    for j in range(1, kmax + 1):
        idx = np.nonzero(counts >= j)[0]
        e = -np.log(_unit(_step(kc[idx], j)))
        r = r_lo + span * _unit(_step(kr[idx], j))
        val[idx] += coef * e * r ** (-two_alpha)
    val = val + s0_det
    if s0_exp_mean > 0.0:
        kt = _step(k1, 1)
        val = val + s0_exp_mean * (-np.log(_unit(_step(kt, 0))))
    else:
        val = val + 0.0
    val = val + noise
    return int(np.count_nonzero(val >= eta))


def cp_panel_block(lam, xs, starts, widths, glx, glw):
    """Panel integrals of the atom-extracted compound-Poisson integrand.

    Works in the conditioned variable u = omega * mark_scale. Each panel is
    split into two Gauss-Legendre sub-panels. Returns the raw panel integrals
    (no 1/pi factor) and the max |cf(u) - atom| seen per panel.
    """
    starts = np.asarray(starts)
    widths = np.asarray(widths)
    atom = np.exp(-lam)
    sums = np.zeros(starts.shape[0])
    amax = np.zeros(starts.shape[0])
    half = widths * 0.5
    quarter = widths * 0.25
    for m in (0, 1):
        a = starts + m * half
        u = a[:, None] + (glx[None, :] + 1.0) * quarter[:, None]
        u2 = u * u
        denom = 1.0 + u2
        er = np.exp(-lam * u2 / denom)
        phase = lam * u / denom
        re_psi = er * np.cos(phase) - atom
        im_psi = er * np.sin(phase)
        theta = u * xs
        integ = (im_psi * np.cos(theta) - re_psi * np.sin(theta)) / u
        sums += quarter * (integ @ glw)
        amax = np.maximum(amax, np.sqrt(re_psi * re_psi
                                        + im_psi * im_psi).max(axis=1))
    return sums, amax
