"""Radar operating metrics and ISAC network throughput in Poisson clutter.

Computes false-alarm and detection probabilities for a millimeter-wave
monostatic radar facing Poisson-distributed discrete clutter, via
characteristic-function inversion with an independent series oracle and a
Monte Carlo validator, plus the duty-cycle-coupled network throughput of a
time-multiplexed sensing/communication system.
"""

from ._kernels import BACKEND
from .clutter import (CompoundClutterSpec, clutter_cdf_series, clutter_cf,
                      clutter_cf_handle, clutter_mean,
                      clutter_spec_from_scenario,
                      clutter_spec_from_surface_coefficient)
from .config import parse_config, parse_config_file
from .detection import (MetricResult, ThresholdResult, evaluate_metrics, pd,
                        pfa, threshold_for_pfa)
from .gilpelaez import (CfHandle, QuadratureOptions, cdf_from_cf,
                        cdf_from_cf_detailed)
from .montecarlo import (McEstimate, McOptions, RandomStream, estimate_pd_mc,
                         estimate_pfa_mc, position_resolved_gap,
                         sample_clutter_return, sample_clutter_returns,
                         wilson_interval)
from .scenario import (ClutterParams, IsacParams, RadarParams, Scenario,
                       TargetParams, antenna_gain, beamwidth_from_duty,
                       mean_signal_power, noise_power, resolution_cell_area)
from .throughput import (ThroughputPoint, expected_detected_targets,
                         network_throughput, sweep_duty_cycle)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CfHandle",
    "ClutterParams",
    "CompoundClutterSpec",
    "IsacParams",
    "McEstimate",
    "McOptions",
    "MetricResult",
    "QuadratureOptions",
    "RadarParams",
    "RandomStream",
    "Scenario",
    "TargetParams",
    "ThresholdResult",
    "ThroughputPoint",
    "antenna_gain",
    "beamwidth_from_duty",
    "cdf_from_cf",
    "cdf_from_cf_detailed",
    "clutter_cdf_series",
    "clutter_cf",
    "clutter_cf_handle",
    "clutter_mean",
    "clutter_spec_from_scenario",
    "clutter_spec_from_surface_coefficient",
    "estimate_pd_mc",
    "estimate_pfa_mc",
    "evaluate_metrics",
    "expected_detected_targets",
    "mean_signal_power",
    "network_throughput",
    "noise_power",
    "parse_config",
    "parse_config_file",
    "pd",
    "pfa",
    "position_resolved_gap",
    "resolution_cell_area",
    "sample_clutter_return",
    "sample_clutter_returns",
    "sweep_duty_cycle",
    "threshold_for_pfa",
    "wilson_interval",
    "__version__",
]
