"""Monte Carlo validation of the analytic detection chain.

The canonical ``cell_lumped`` mode mirrors the analytic assumptions exactly
(every scatterer at the cell range, deterministic noise, mean target power),
so any disagreement beyond binomial noise indicates an implementation bug.
``position_resolved`` and ``swerling1`` modes quantify those modelling
approximations instead and are reported for comparison only.

Estimates are deterministic for a fixed (seed, trials, mode): every draw is
a pure function of (seed, trial index, channel, draw index), so chunking and
parallel scheduling cannot change results. See ``_kernels.common`` for the
stream rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ._kernels import impl as _impl
from ._kernels import poisson_cdf_table
from .clutter import CompoundClutterSpec, clutter_spec_from_scenario
from .errors import GeometryError, ParameterError
from .scenario import Scenario, mean_signal_power, range_resolution

_CHUNK = 1 << 18

MODES = ("cell_lumped", "position_resolved")
TARGET_MODELS = ("mean_s0", "swerling1")


@dataclass(frozen=True)
class McOptions:
    trials: int = 1_000_000
    seed: int = 0
    mode: str = "cell_lumped"
    target_model: str = "mean_s0"
    confidence: float = 0.99

    def __post_init__(self):
        if self.trials < 1:
            raise ParameterError("trial count must be at least 1")
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}")
        if self.target_model not in TARGET_MODELS:
            raise ParameterError(f"unknown target model {self.target_model!r}")
        if not 0.0 < self.confidence < 1.0:
            raise ParameterError("confidence must lie in (0, 1)")


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    ci_low: float
    ci_high: float
    trials: int
    seed: int

    def __post_init__(self):
        if not self.ci_low <= self.estimate <= self.ci_high:
            raise ParameterError("estimate must lie inside its interval")

    def contains(self, p: float) -> bool:
        return self.ci_low <= p <= self.ci_high


def wilson_interval(successes: int, trials: int,
                    confidence: float = 0.99) -> tuple[float, float]:
    """Wilson score interval; behaves correctly near 0 and 1."""
    if trials < 1:
        return 0.0, 1.0
    z = float(stats.norm.ppf(0.5 * (1.0 + confidence)))
    p_hat = successes / trials
    denom = 1.0 + z * z / trials
    center = (p_hat + z * z / (2.0 * trials)) / denom
    margin = (z / denom) * math.sqrt(
        p_hat * (1.0 - p_hat) / trials + z * z / (4.0 * trials * trials))
    # The interval always contains p_hat; keep that true under roundoff.
    return (min(p_hat, max(0.0, center - margin)),
            max(p_hat, min(1.0, center + margin)))


class RandomStream:
    """Cursor over the per-trial substreams for one-draw sampling."""

    def __init__(self, seed: int, trial: int = 0):
        self.seed = seed
        self.trial = trial


def sample_clutter_returns(spec: CompoundClutterSpec, seed: int, n: int,
                           start_trial: int = 0) -> np.ndarray:
    """``n`` independent compound-Poisson draws, one per trial index."""
    table = poisson_cdf_table(spec.lam)
    chunks = []
    done = 0
    while done < n:
        m = min(_CHUNK, n - done)
        chunks.append(_impl.mc_sample_clutter(table, spec.mark_scale, seed, m,
                                              start_trial + done))
        done += m
    return np.concatenate(chunks) if len(chunks) > 1 else chunks[0]


def sample_clutter_return(spec: CompoundClutterSpec,
                          stream: RandomStream) -> float:
    """One draw from the clutter distribution, advancing the stream cursor."""
    out = sample_clutter_returns(spec, stream.seed, 1, stream.trial)
    stream.trial += 1
    return float(out[0])


def _count_hits(scenario: Scenario, opts: McOptions, s0_det: float,
                s0_exp_mean: float, mode: str) -> int:
    spec = clutter_spec_from_scenario(scenario)
    table = poisson_cdf_table(spec.lam)
    noise = scenario.n_p
    eta = scenario.radar.eta
    if mode == "position_resolved":
        dr = range_resolution(scenario.radar.bw)
        r_c = scenario.clutter.r_c
        if r_c <= dr / 2.0:
            raise GeometryError(
                f"resolution cell straddles the origin: r_c={r_c:g} m but the "
                f"range bin is {dr:g} m")
        coef = scenario.p0 * scenario.clutter.sigma_c * scenario.clutter.g_c_avg
        args = (table, coef, r_c - dr / 2.0, r_c + dr / 2.0,
                2.0 * scenario.radar.alpha, noise, eta, s0_det, s0_exp_mean)
        kernel = _impl.mc_count_hits_pr
    else:
        args = (table, spec.mark_scale, noise, eta, s0_det, s0_exp_mean)
        kernel = _impl.mc_count_hits
    hits = 0
    done = 0
    while done < opts.trials:
        m = min(_CHUNK, opts.trials - done)
        hits += kernel(*args, opts.seed, m, done)
        done += m
    return hits


def _estimate(scenario: Scenario, opts: McOptions, s0_det: float,
              s0_exp_mean: float, mode: str) -> McEstimate:
    hits = _count_hits(scenario, opts, s0_det, s0_exp_mean, mode)
    lo, hi = wilson_interval(hits, opts.trials, opts.confidence)
    return McEstimate(estimate=hits / opts.trials, ci_low=lo, ci_high=hi,
                      trials=opts.trials, seed=opts.seed)


def estimate_pfa_mc(scenario: Scenario, opts: McOptions = McOptions()
                    ) -> McEstimate:
    """Empirical frequency of clutter + noise reaching the threshold."""
    return _estimate(scenario, opts, 0.0, 0.0, opts.mode)


def estimate_pd_mc(scenario: Scenario, opts: McOptions = McOptions()
                   ) -> McEstimate:
    """Empirical frequency of target + clutter + noise reaching the threshold.

    ``mean_s0`` shifts by the deterministic mean target power (the analytic
    assumption); ``swerling1`` draws the target return as an exponential with
    that mean and is reported for comparison only.
    """
    s0 = mean_signal_power(scenario)
    if opts.target_model == "swerling1":
        return _estimate(scenario, opts, 0.0, s0, opts.mode)
    return _estimate(scenario, opts, s0, 0.0, opts.mode)


def position_resolved_gap(scenario: Scenario, opts: McOptions = McOptions()
                          ) -> float:
    """|P_fa(position_resolved) - P_fa(cell_lumped)| at matched seeds.

    Both estimates reuse the same scatterer counts and fading draws, so the
    gap isolates the fixed-range approximation from binomial noise.
    """
    lumped = _estimate(scenario, opts, 0.0, 0.0, "cell_lumped")
    resolved = _estimate(scenario, opts, 0.0, 0.0, "position_resolved")
    return abs(resolved.estimate - lumped.estimate)
