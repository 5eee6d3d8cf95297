"""Radar, clutter, target, and ISAC timing parameters plus derived quantities.

All quantities are SI (W, Hz, K, m, rad, s). Ranges enter the two-way path
loss as the plain numeric value in metres raised to ``-2*alpha``; every other
dimensional constant is absorbed into the radar constant ``p0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigurationError, InfeasibleDutyCycleError, ParameterError

BOLTZMANN = 1.380649e-23  # J/K, exact SI value
SPEED_OF_LIGHT = 2.99792458e8  # m/s

# Relative tolerance for an explicitly supplied beamwidth to be accepted as
# consistent with the one implied by the ISAC timing parameters.
BEAMWIDTH_CONSISTENCY_RTOL = 1e-12

_TWO_PI = 2.0 * math.pi


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


@dataclass(frozen=True)
class RadarParams:
    f_c: float = 60e9        # carrier frequency [Hz]; documentation only
    bw: float = 20e6         # signal bandwidth [Hz]
    p_tx: float = 1.0        # transmit power [W]
    g0: float = 1.0          # gain constant of proportionality [rad]
    t_s: float = 300.0       # system temperature [K]
    eta: float = 1e-13       # detection threshold [W]
    alpha: float = 2.0       # path-loss exponent, returns scale as r^(-2*alpha)
    delta_psi: float | None = None  # beamwidth [rad]; None = derive from ISAC timing

    def __post_init__(self):
        _require(self.bw > 0, "bandwidth must be positive")
        _require(self.p_tx >= 0, "transmit power must be nonnegative")
        _require(self.t_s >= 0, "system temperature must be nonnegative")
        _require(self.eta > 0, "detection threshold must be positive")
        _require(self.alpha >= 1, "path-loss exponent must be >= 1")
        _require(self.g0 > 0, "gain constant must be positive")
        if self.delta_psi is not None:
            _require(0 < self.delta_psi <= _TWO_PI,
                     "beamwidth must be in (0, 2*pi]")


@dataclass(frozen=True)
class ClutterParams:
    rho_c: float = 1.0       # clutter scatterer density [m^-2]
    sigma_c: float = 0.1     # per-scatterer RCS [m^2]
    g_c_avg: float = 1.0     # mean of the exponential fading coefficient
    r_c: float = 10.0        # clutter cell range [m]

    def __post_init__(self):
        _require(self.rho_c >= 0, "clutter density must be nonnegative")
        _require(self.sigma_c > 0, "clutter RCS must be positive")
        _require(self.g_c_avg > 0, "mean fading coefficient must be positive")
        _require(self.r_c > 0, "clutter range must be positive")

    @property
    def sigma_o(self) -> float:
        """Surface clutter coefficient rho_c * sigma_c."""
        return self.rho_c * self.sigma_c


@dataclass(frozen=True)
class TargetParams:
    sigma_t_avg: float = 10.0  # mean target RCS (Swerling-1) [m^2]
    r_t: float = 10.0          # target range [m]
    rho_t: float = 1e-3        # mobile-target spatial density [m^-2]

    def __post_init__(self):
        _require(self.sigma_t_avg >= 0, "mean target RCS must be nonnegative")
        _require(self.r_t > 0, "target range must be positive")
        _require(self.rho_t >= 0, "target density must be nonnegative")


@dataclass(frozen=True)
class IsacParams:
    t_total: float = 0.1         # ISAC cycle duration [s]
    t_dwell: float = 1e-3        # per-beam dwell time [s]
    omega: float = math.pi / 2   # angular search space [rad]
    xi: float = 0.9              # radar duty cycle, (0, 1]
    data_rate: float = 1e6       # per-target communication rate [bit/s]

    def __post_init__(self):
        _require(self.t_total > 0, "cycle duration must be positive")
        _require(self.t_dwell > 0, "dwell time must be positive")
        _require(0 < self.omega <= _TWO_PI,
                 "angular search space must be in (0, 2*pi]")
        _require(0 < self.xi <= 1, "duty cycle must be in (0, 1]")
        _require(self.data_rate >= 0, "data rate must be nonnegative")
        if self.t_dwell > self.xi * self.t_total:
            raise InfeasibleDutyCycleError(
                f"duty cycle {self.xi:g} leaves the radar interval "
                f"{self.xi * self.t_total:g} s shorter than one dwell "
                f"({self.t_dwell:g} s)"
            )


def noise_power(t_s: float, bw: float) -> float:
    """Mean thermal noise power k*T_s*BW in watts."""
    _require(t_s >= 0, "system temperature must be nonnegative")
    _require(bw > 0, "bandwidth must be positive")
    return BOLTZMANN * t_s * bw


def antenna_gain(g0: float, delta_psi: float) -> float:
    """Main-lobe gain, uniform within the beam and inverse in beamwidth."""
    if delta_psi <= 0:
        raise ParameterError("beamwidth must be positive")
    return g0 / delta_psi


def resolution_cell_area(r_c: float, delta_psi: float, bw: float) -> float:
    """Range-azimuth cell area r_c * delta_psi * c/(2*BW) in m^2.

    The pulse width is taken as 1/BW, so the range bin is c/(2*BW).
    """
    if r_c <= 0 or delta_psi <= 0 or bw <= 0:
        raise ParameterError("cell range, beamwidth, and bandwidth must be positive")
    return r_c * delta_psi * (SPEED_OF_LIGHT / (2.0 * bw))


def range_resolution(bw: float) -> float:
    """Range bin size c/(2*BW) in metres."""
    _require(bw > 0, "bandwidth must be positive")
    return SPEED_OF_LIGHT / (2.0 * bw)


def beamwidth_from_duty(isac: IsacParams, xi: float | None = None) -> float:
    """Beamwidth t_dwell*omega/(xi*t_total) required to scan omega in one cycle.

    ``xi`` overrides the duty cycle stored in ``isac`` (used by sweeps).
    Raises InfeasibleDutyCycleError when less than one dwell fits in the
    radar interval, which is exactly when the result would exceed omega.
    """
    duty = isac.xi if xi is None else xi
    if not 0 < duty <= 1:
        raise InfeasibleDutyCycleError(f"duty cycle {duty:g} is outside (0, 1]")
    if isac.t_dwell > duty * isac.t_total:
        raise InfeasibleDutyCycleError(
            f"duty cycle {duty:g} is infeasible: radar interval "
            f"{duty * isac.t_total:g} s is shorter than one dwell "
            f"({isac.t_dwell:g} s)"
        )
    return isac.t_dwell * isac.omega / (duty * isac.t_total)


@dataclass(frozen=True)
class Scenario:
    """Full parameter bundle; exactly one beamwidth source must be present.

    The beamwidth comes either from ``radar.delta_psi`` or from the ISAC
    timing parameters. When both are supplied they must agree to within
    1e-12 relative.
    """

    radar: RadarParams
    clutter: ClutterParams
    target: TargetParams
    isac: IsacParams | None = None

    def __post_init__(self):
        if self.radar.delta_psi is None and self.isac is None:
            raise ParameterError(
                "beamwidth is undetermined: supply radar.delta_psi or IsacParams"
            )
        if self.radar.delta_psi is not None and self.isac is not None:
            derived = beamwidth_from_duty(self.isac)
            rel = abs(self.radar.delta_psi - derived) / derived
            if rel > BEAMWIDTH_CONSISTENCY_RTOL:
                raise ParameterError(
                    f"explicit beamwidth {self.radar.delta_psi:.17g} rad is "
                    f"inconsistent with the ISAC timing value {derived:.17g} rad "
                    f"(relative difference {rel:.3e})"
                )

    @property
    def delta_psi(self) -> float:
        """Effective beamwidth in radians."""
        if self.radar.delta_psi is not None:
            return self.radar.delta_psi
        return beamwidth_from_duty(self.isac)

    @property
    def gain(self) -> float:
        return antenna_gain(self.radar.g0, self.delta_psi)

    @property
    def p0(self) -> float:
        """Radar constant p_tx * G^2 in watts."""
        g = self.gain
        return self.radar.p_tx * g * g

    @property
    def n_p(self) -> float:
        return noise_power(self.radar.t_s, self.radar.bw)

    @property
    def cell_area(self) -> float:
        return resolution_cell_area(self.clutter.r_c, self.delta_psi,
                                    self.radar.bw)

    def require_isac(self) -> IsacParams:
        if self.isac is None:
            raise ConfigurationError(
                "this operation needs ISAC timing parameters, but the scenario "
                "was built with an explicit beamwidth only"
            )
        return self.isac

    def with_duty_cycle(self, xi: float) -> "Scenario":
        """Copy with a new duty cycle; the beamwidth follows the timing."""
        isac = self.require_isac()
        return replace(self, radar=replace(self.radar, delta_psi=None),
                       isac=replace(isac, xi=xi))

    def with_radar(self, **kwargs) -> "Scenario":
        return replace(self, radar=replace(self.radar, **kwargs))

    def with_clutter(self, **kwargs) -> "Scenario":
        return replace(self, clutter=replace(self.clutter, **kwargs))

    def with_target(self, **kwargs) -> "Scenario":
        return replace(self, target=replace(self.target, **kwargs))


def mean_signal_power(scenario: Scenario) -> float:
    """Mean received target power S0 = p_tx * G^2 * sigma_t_avg * r_t^(-2*alpha).

    The Swerling-1 RCS is replaced by its mean; the analytic detection chain
    uses this deterministic value throughout.
    """
    return (scenario.p0 * scenario.target.sigma_t_avg
            * scenario.target.r_t ** (-2.0 * scenario.radar.alpha))
