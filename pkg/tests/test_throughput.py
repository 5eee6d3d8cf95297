import math

import numpy as np
import pytest

from isacrom.config import parse_config
from isacrom.errors import (ConfigurationError, InfeasibleDutyCycleError,
                            ParameterError)
from isacrom.scenario import (ClutterParams, RadarParams, Scenario,
                              TargetParams)
from isacrom.throughput import (expected_detected_targets, network_throughput,
                                sweep_duty_cycle)

# Exact value of rho_t * omega * r_t * c/(2 BW) at the defaults.
REF_BETA = 0.11772822295680334

# Transmit power at which detections transition inside the duty-cycle grid:
# the mean target return crosses the threshold margin near xi ~ 0.29.
LOW_POWER_W = 5e-14


class TestExpectedDetectedTargets:
    def test_zero_probability(self):
        assert expected_detected_targets(parse_config(""), 0.0) == 0.0

    def test_reference_value(self):
        got = expected_detected_targets(parse_config(""), 1.0)
        assert got == pytest.approx(REF_BETA, rel=1e-12)
        assert got == pytest.approx(0.1177185, rel=1e-3)

    def test_linear_in_target_density(self):
        base = parse_config("")
        doubled = parse_config("rho_t_per_m2 = 2e-3")
        assert expected_detected_targets(doubled, 0.7) == pytest.approx(
            2.0 * expected_detected_targets(base, 0.7), rel=1e-15)

    def test_requires_isac(self):
        scn = Scenario(radar=RadarParams(delta_psi=0.0174533),
                       clutter=ClutterParams(), target=TargetParams())
        with pytest.raises(ConfigurationError):
            expected_detected_targets(scn, 1.0)

    def test_rejects_bad_probability(self):
        with pytest.raises(ParameterError):
            expected_detected_targets(parse_config(""), 1.5)


class TestNetworkThroughput:
    def test_full_duty_kills_throughput(self):
        point = network_throughput(parse_config("duty_cycle = 1"))
        assert point.gamma == 0.0

    def test_zero_data_rate(self):
        point = network_throughput(parse_config("data_rate_bps = 0"))
        assert point.gamma == 0.0

    def test_reference_point(self):
        point = network_throughput(parse_config(""))
        assert point.p_d == 1.0
        assert point.beta == pytest.approx(REF_BETA, rel=1e-12)
        assert point.gamma == pytest.approx(1.177282e4, rel=1e-6)
        assert point.gamma == pytest.approx(1.177185e4, rel=1e-3)
        assert point.delta_psi == pytest.approx(0.017453292519943295,
                                                rel=1e-15)

    def test_product_law_is_exact(self):
        scenario = parse_config("")
        for xi in (0.02, 0.5, 0.9, 1.0):
            point = network_throughput(scenario, xi=xi)
            assert point.gamma == point.beta * (1.0 - point.xi) * 1e6


class TestSweepDutyCycle:
    def test_single_full_duty_point(self):
        points, best = sweep_duty_cycle(parse_config(""), [1.0])
        assert best == 0
        assert points[0].gamma == 0.0

    def test_argmax_prefers_smaller_duty_on_tie(self):
        points, best = sweep_duty_cycle(parse_config(""), [0.5, 1.0])
        assert best == 0
        assert points[1].gamma <= points[0].gamma

    def test_empty_grid_rejected(self):
        with pytest.raises(ParameterError):
            sweep_duty_cycle(parse_config(""), [])

    def test_infeasible_point_is_named(self):
        with pytest.raises(InfeasibleDutyCycleError, match="0.005"):
            sweep_duty_cycle(parse_config(""), [0.5, 0.005])

    def test_interior_argmax_for_low_power(self):
        scenario = parse_config(f"ptx_w = {LOW_POWER_W:g}")
        grid = [float(x) for x in np.linspace(0.02, 1.0, 50)]
        points, best = sweep_duty_cycle(scenario, grid)
        assert 0 < best < len(grid) - 1
        assert points[best].xi == pytest.approx(0.30, abs=0.05)
        assert points[-1].gamma == 0.0

    @pytest.mark.parametrize("config", ["", f"ptx_w = {LOW_POWER_W:g}"])
    def test_detection_monotone_in_duty(self, config):
        scenario = parse_config(config)
        grid = [float(x) for x in np.linspace(0.02, 1.0, 25)]
        points, _ = sweep_duty_cycle(scenario, grid)
        pds = [p.p_d for p in points]
        assert all(pds[i + 1] >= pds[i] - 2e-8 for i in range(len(pds) - 1))

    def test_beamwidth_duty_product_constant(self):
        points, _ = sweep_duty_cycle(
            parse_config(""), [float(x) for x in np.linspace(0.02, 1.0, 50)])
        products = [p.delta_psi * p.xi for p in points]
        spread = max(products) - min(products)
        assert spread <= 1e-15 * max(products)

    def test_invariants_hold_everywhere(self):
        points, _ = sweep_duty_cycle(
            parse_config(""), [float(x) for x in np.linspace(0.02, 1.0, 20)])
        for p in points:
            assert p.beta >= 0.0
            assert 0.0 <= p.p_d <= 1.0
            assert p.gamma == p.beta * (1.0 - p.xi) * 1e6
        assert points[-1].gamma == 0.0
