"""Shared pieces of the kernel contract.

Random-stream rule (part of the external reproducibility contract; a port in
another language can match statistics by reproducing it):

* ``step(base, i) = mix64(base + (i + 1) * GOLDEN)`` with 64-bit wraparound,
  where ``mix64`` is the splitmix64 finalizer and GOLDEN = 0x9E3779B97F4A7C15.
* trial key:    ``k_t  = step(seed, trial)``
* channel key:  ``k_tc = step(k_t, channel)``
* draw j:       ``u    = to_unit(step(k_tc, j))`` with
  ``to_unit(v) = ((v >> 11) + 1) * 2**-53`` in (0, 1].

Channels: 0 = clutter (draw 0 is the Poisson count uniform, draws 1..K the
per-scatterer exponentials), 1 = target fading, 2 = scatterer ranges (draw j
pairs with exponential j). Every draw is a pure function of
(seed, trial, channel, j), so trials can be evaluated in any order or split
across workers without changing results.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ParameterError

GOLDEN = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1

# Poisson counts are drawn by CDF-table inversion; the table length grows
# linearly in lam, so huge intensities are refused rather than crawled.
POISSON_LAMBDA_CAP = 1e5


def poisson_cdf_table(lam: float) -> np.ndarray:
    """Cumulative Poisson probabilities, identical floats for every backend.

    Entry n is P(K <= n) built by the pmf recurrence in float64. The table
    extends far enough (mean + 60 sigma + 60) that the excluded tail is
    negligible; a uniform above the last entry maps to the table length.
    """
    if lam < 0:
        raise ParameterError("Poisson intensity must be nonnegative")
    if lam > POISSON_LAMBDA_CAP:
        raise ParameterError(
            f"Poisson intensity {lam:g} exceeds the sampling cap "
            f"{POISSON_LAMBDA_CAP:g}")
    if lam == 0.0:
        return np.array([1.0])
    n_max = int(lam + 60.0 * math.sqrt(lam + 1.0) + 60.0)
    table = np.empty(n_max + 1)
    p = math.exp(-lam)
    c = p
    table[0] = c
    for n in range(1, n_max + 1):
        p *= lam / n
        c += p
        table[n] = c
    return table


def mix64_scalar(x: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z = x & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def step_scalar(base: int, i: int) -> int:
    return mix64_scalar((base + (i + 1) * GOLDEN) & _MASK)


def to_unit_scalar(v: int) -> float:
    return ((v >> 11) + 1) * 2.0 ** -53
