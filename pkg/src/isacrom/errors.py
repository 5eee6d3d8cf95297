"""Exception hierarchy shared by all isacrom modules."""

from __future__ import annotations


class IsacromError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(IsacromError, ValueError):
    """A scenario or distribution parameter violates its invariants."""


class InfeasibleDutyCycleError(ParameterError):
    """The requested duty cycle cannot fit one dwell into the radar interval."""


class GeometryError(ParameterError):
    """The resolution cell geometry is invalid (cell straddles the origin)."""


class ConfigurationError(IsacromError):
    """The scenario lacks configuration required by the requested operation."""


class ConfigError(ConfigurationError):
    """A config document failed to parse or validate.

    ``line`` is the 1-based line number of the offending entry when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OracleInfeasibleError(IsacromError):
    """The series oracle cannot reach the requested tolerance within its cap."""


class ConvergenceError(IsacromError):
    """Quadrature ran out of panels before meeting the error target.

    Carries the best estimate computed so far and its error bound.
    """

    def __init__(self, message: str, best_estimate: float, error_bound: float,
                 panels: int):
        self.best_estimate = best_estimate
        self.error_bound = error_bound
        self.panels = panels
        super().__init__(
            f"{message} (best estimate {best_estimate:.9e}, "
            f"error bound {error_bound:.3e}, {panels} panels)"
        )


class UnattainableTargetError(IsacromError):
    """The requested false-alarm probability exceeds the attainable range."""

    def __init__(self, target: float, attainable_max: float):
        self.target = target
        self.attainable_max = attainable_max
        super().__init__(
            f"target P_fa {target:.6g} is unattainable for thresholds above the "
            f"noise floor; attainable range is (0, {attainable_max:.9g}]"
        )
