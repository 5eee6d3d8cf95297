"""Duty-cycle-coupled ISAC chain: beamwidth, detected targets, throughput.

The duty cycle fixes the beamwidth (narrower beams need more radar time to
scan the sector), the beamwidth fixes the gain and therefore both the clutter
and target powers, and the remaining cycle time serves communication:
``gamma = beta(xi) * (1 - xi) * data_rate``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .detection import pd
from .errors import InfeasibleDutyCycleError, ParameterError
from .gilpelaez import DEFAULT_QUADRATURE, QuadratureOptions
from .scenario import Scenario, range_resolution


@dataclass(frozen=True)
class ThroughputPoint:
    xi: float         # radar duty cycle
    delta_psi: float  # beamwidth implied by xi [rad]
    p_d: float
    beta: float       # expected detected targets
    gamma: float      # network throughput [bit/s]


def expected_detected_targets(scenario: Scenario, p_d: float) -> float:
    """Mean detected-target count p_d * rho_t * omega * r_t * c/(2*BW).

    Counts targets in the annular sector one range bin deep at the target
    range; clutter detections are excluded (they never acknowledge).
    """
    isac = scenario.require_isac()
    if not 0.0 <= p_d <= 1.0:
        raise ParameterError("detection probability must lie in [0, 1]")
    return (p_d * scenario.target.rho_t * isac.omega * scenario.target.r_t
            * range_resolution(scenario.radar.bw))


def network_throughput(scenario: Scenario,
                       opts: QuadratureOptions = DEFAULT_QUADRATURE,
                       xi: float | None = None) -> ThroughputPoint:
    """Evaluate the full chain at one duty cycle.

    Rebuilds the beamwidth from the timing parameters (ignoring any explicit
    beamwidth on the scenario), re-derives the clutter spec and mean target
    power at that beamwidth, and returns the resulting operating point.
    """
    isac = scenario.require_isac()
    duty = isac.xi if xi is None else xi
    at_duty = scenario.with_duty_cycle(duty)
    delta_psi = at_duty.delta_psi
    p_d = pd(at_duty, opts)
    beta = expected_detected_targets(at_duty, p_d)
    gamma = beta * (1.0 - duty) * isac.data_rate
    return ThroughputPoint(xi=duty, delta_psi=delta_psi, p_d=p_d,
                           beta=beta, gamma=gamma)


def sweep_duty_cycle(scenario: Scenario, xi_grid: Sequence[float],
                     opts: QuadratureOptions = DEFAULT_QUADRATURE
                     ) -> tuple[list[ThroughputPoint], int]:
    """Evaluate every grid point in order and locate the throughput argmax.

    Ties break toward the smallest duty cycle (more communication headroom).
    Any infeasible grid point aborts the sweep, naming the offending value.
    """
    if len(xi_grid) == 0:
        raise ParameterError("duty-cycle grid must not be empty")
    points = []
    for xi in xi_grid:
        try:
            points.append(network_throughput(scenario, opts, xi=xi))
        except InfeasibleDutyCycleError as exc:
            raise InfeasibleDutyCycleError(
                f"sweep point xi={xi:g} is infeasible: {exc}") from exc
    best = 0
    for i, point in enumerate(points):
        if point.gamma > points[best].gamma:
            best = i
    return points, best
