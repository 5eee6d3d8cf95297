"""Radar operating metrics: false-alarm and detection probabilities.

Both metrics are threshold exceedance probabilities of the clutter CDF:
``P_fa = 1 - F_C(eta - N_p)`` and ``P_d = 1 - F_C(eta - N_p - S0)`` with the
Swerling-1 target return replaced by its mean S0. The detection comparison
is ``>=``, so a threshold at or below the deterministic part always fires.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .clutter import (CompoundClutterSpec, clutter_cf_handle, clutter_mean,
                      clutter_spec_from_scenario)
from .errors import ConvergenceError, ParameterError, UnattainableTargetError
from .gilpelaez import DEFAULT_QUADRATURE, QuadratureOptions, cdf_from_cf
from .scenario import Scenario, mean_signal_power

# Above this many mark scales past 2*lam the Chernoff bound
# P(C > x) <= exp(lam - x/(2s)) is below 3e-20, far under any quadrature
# tolerance, so the CDF is 1 to working precision.
_TAIL_CUTOFF = 45.0


@dataclass(frozen=True)
class MetricResult:
    p_fa: float
    p_d: float
    threshold_margin_fa: float  # eta - N_p [W]
    threshold_margin_d: float   # eta - N_p - S0 [W]
    method: str                 # "analytic" | "monte_carlo"

    def __post_init__(self):
        if not 0.0 <= self.p_fa <= 1.0 or not 0.0 <= self.p_d <= 1.0:
            raise ParameterError("probabilities must lie in [0, 1]")
        if self.method not in ("analytic", "monte_carlo"):
            raise ParameterError(f"unknown method {self.method!r}")
        if (self.threshold_margin_d <= self.threshold_margin_fa
                and self.p_d < self.p_fa - 1e-6):
            raise ParameterError(
                "p_d must not fall below p_fa when the signal shift is "
                "nonnegative")


def clutter_cdf_analytic(spec: CompoundClutterSpec, x: float,
                         opts: QuadratureOptions = DEFAULT_QUADRATURE) -> float:
    """Clutter CDF at x > 0 via CF inversion, with a far-tail shortcut."""
    if spec.lam == 0.0:
        return 1.0
    if x / spec.mark_scale > 2.0 * spec.lam + _TAIL_CUTOFF:
        return 1.0
    return cdf_from_cf(clutter_cf_handle(spec), x, opts)


def pfa(scenario: Scenario,
        opts: QuadratureOptions = DEFAULT_QUADRATURE) -> float:
    """Probability that clutter plus noise reaches the threshold."""
    margin = scenario.radar.eta - scenario.n_p
    if margin <= 0.0:
        return 1.0
    spec = clutter_spec_from_scenario(scenario)
    return 1.0 - clutter_cdf_analytic(spec, margin, opts)


def pd(scenario: Scenario,
       opts: QuadratureOptions = DEFAULT_QUADRATURE) -> float:
    """Probability that target return plus clutter plus noise reaches it.

    Reduces bitwise to ``pfa`` when the mean target power is exactly zero.
    """
    margin = (scenario.radar.eta - scenario.n_p) - mean_signal_power(scenario)
    if margin <= 0.0:
        return 1.0
    spec = clutter_spec_from_scenario(scenario)
    return 1.0 - clutter_cdf_analytic(spec, margin, opts)


def evaluate_metrics(scenario: Scenario,
                     opts: QuadratureOptions = DEFAULT_QUADRATURE
                     ) -> MetricResult:
    margin_fa = scenario.radar.eta - scenario.n_p
    return MetricResult(
        p_fa=pfa(scenario, opts),
        p_d=pd(scenario, opts),
        threshold_margin_fa=margin_fa,
        threshold_margin_d=margin_fa - mean_signal_power(scenario),
        method="analytic",
    )


def attainable_pfa_max(scenario: Scenario) -> float:
    """Supremum of P_fa over thresholds above the noise floor: 1 - exp(-lam)."""
    spec = clutter_spec_from_scenario(scenario)
    return 1.0 - spec.atom_at_zero


@dataclass(frozen=True)
class ThresholdResult:
    eta: float            # threshold [W]
    achieved_pfa: float   # P_fa at eta (limiting value when boundary is set)
    boundary: bool        # True when the target sits at the attainable edge
    attainable_max: float
    iterations: int


def threshold_for_pfa(scenario: Scenario, target_pfa: float,
                      opts: QuadratureOptions = DEFAULT_QUADRATURE
                      ) -> ThresholdResult:
    """Numerically invert P_fa(eta) by bisection above the noise floor.

    P_fa drops from 1 at eta = N_p by the zero-atom mass exp(-lam) and then
    decreases continuously, so the attainable range for eta > N_p is
    (0, 1 - exp(-lam)]. Targets within the solve tolerance above that bound
    return eta = N_p flagged as a boundary; targets clearly above it raise
    UnattainableTargetError.
    """
    if not 0.0 < target_pfa < 1.0:
        raise ParameterError("target P_fa must lie strictly between 0 and 1")
    spec = clutter_spec_from_scenario(scenario)
    if spec.lam == 0.0:
        raise UnattainableTargetError(target_pfa, 0.0)
    bound = 1.0 - spec.atom_at_zero
    tol = max(1e-6, 1e-3 * target_pfa)
    if target_pfa > bound + tol:
        raise UnattainableTargetError(target_pfa, bound)
    n_p = scenario.n_p
    if target_pfa > bound:
        return ThresholdResult(eta=n_p, achieved_pfa=bound, boundary=True,
                               attainable_max=bound, iterations=0)
    lo = n_p
    hi = (n_p + clutter_mean(spec)
          + 60.0 * spec.mark_scale * (1.0 + math.sqrt(2.0 * spec.lam)))
    for it in range(1, 201):
        mid = 0.5 * (lo + hi)
        p = pfa(scenario.with_radar(eta=mid), opts)
        if abs(p - target_pfa) <= tol:
            return ThresholdResult(eta=mid, achieved_pfa=p, boundary=False,
                                   attainable_max=bound, iterations=it)
        if p > target_pfa:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        "threshold bisection failed to meet the P_fa tolerance",
        best_estimate=0.5 * (lo + hi), error_bound=hi - lo, panels=0)
