import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isacrom.errors import (InfeasibleDutyCycleError, ParameterError)
from isacrom.scenario import (BOLTZMANN, SPEED_OF_LIGHT, ClutterParams,
                              IsacParams, RadarParams, Scenario, TargetParams,
                              antenna_gain, beamwidth_from_duty,
                              mean_signal_power, noise_power,
                              resolution_cell_area)

ONE_DEGREE = 0.0174533  # rad, rounded


def default_scenario(**radar_kwargs):
    radar = RadarParams(delta_psi=ONE_DEGREE, **radar_kwargs)
    return Scenario(radar=radar, clutter=ClutterParams(),
                    target=TargetParams())


class TestNoisePower:
    def test_room_temperature_20mhz(self):
        got = noise_power(300.0, 20e6)
        assert got == BOLTZMANN * 300.0 * 20e6
        assert got == pytest.approx(8.283894e-14, rel=1e-9)

    def test_zero_temperature(self):
        assert noise_power(0.0, 20e6) == 0.0

    def test_linear_in_bandwidth(self):
        assert noise_power(300.0, 200e6) == pytest.approx(
            10.0 * noise_power(300.0, 20e6), rel=1e-15)
        assert noise_power(300.0, 200e6) == pytest.approx(8.283894e-13,
                                                          rel=1e-9)

    @given(t_s=st.floats(0.0, 1e4), bw=st.floats(1e3, 1e10))
    def test_linear_in_temperature(self, t_s, bw):
        assert noise_power(2.0 * t_s, bw) == pytest.approx(
            2.0 * noise_power(t_s, bw), rel=1e-15)


class TestAntennaGain:
    def test_identity(self):
        assert antenna_gain(1.0, 1.0) == 1.0

    def test_reciprocal_of_one_degree(self):
        assert antenna_gain(1.0, ONE_DEGREE) == pytest.approx(57.29578,
                                                              rel=1e-5)

    def test_proportionality(self):
        assert antenna_gain(2.0, 0.5) == 4.0

    def test_rejects_nonpositive_beamwidth(self):
        with pytest.raises(ParameterError):
            antenna_gain(1.0, 0.0)
        with pytest.raises(ParameterError):
            antenna_gain(1.0, -0.1)

    @given(g0=st.floats(1e-3, 1e3), dpsi=st.floats(1e-4, 6.28))
    def test_gain_times_beamwidth_recovers_g0(self, g0, dpsi):
        assert antenna_gain(g0, dpsi) * dpsi == pytest.approx(g0, rel=4e-16)


class TestResolutionCellArea:
    def test_reference_cell(self):
        got = resolution_cell_area(10.0, ONE_DEGREE, 20e6)
        assert got == pytest.approx(1.308085, rel=2e-5)
        assert got == 10.0 * ONE_DEGREE * SPEED_OF_LIGHT / (2.0 * 20e6)

    def test_rejects_zero_beamwidth(self):
        with pytest.raises(ParameterError):
            resolution_cell_area(10.0, 0.0, 20e6)

    def test_inverse_in_bandwidth(self):
        a1 = resolution_cell_area(10.0, ONE_DEGREE, 20e6)
        a2 = resolution_cell_area(10.0, ONE_DEGREE, 40e6)
        assert a2 == pytest.approx(a1 / 2.0, rel=1e-15)

    @given(r_c=st.floats(0.1, 1e4), dpsi=st.floats(1e-4, 6.28))
    def test_linear_in_range(self, r_c, dpsi):
        assert resolution_cell_area(2.0 * r_c, dpsi, 20e6) == pytest.approx(
            2.0 * resolution_cell_area(r_c, dpsi, 20e6), rel=1e-15)


class TestMeanSignalPower:
    def test_reference_point(self):
        got = mean_signal_power(default_scenario())
        assert got == pytest.approx(3.282806, rel=1e-5)

    def test_alpha_four(self):
        got = mean_signal_power(default_scenario(alpha=4.0))
        assert got == pytest.approx(3.282806e-4, rel=1e-5)

    def test_zero_rcs(self):
        scn = Scenario(radar=RadarParams(delta_psi=ONE_DEGREE),
                       clutter=ClutterParams(),
                       target=TargetParams(sigma_t_avg=0.0))
        assert mean_signal_power(scn) == 0.0

    @given(k=st.floats(1e-3, 1e3))
    @settings(max_examples=30)
    def test_power_rcs_tradeoff(self, k):
        base = mean_signal_power(default_scenario())
        scn = Scenario(radar=RadarParams(p_tx=1.0 / k, delta_psi=ONE_DEGREE),
                       clutter=ClutterParams(),
                       target=TargetParams(sigma_t_avg=10.0 * k))
        assert mean_signal_power(scn) == pytest.approx(base, rel=1e-12)


class TestBeamwidthFromDuty:
    def test_reference_timing(self):
        isac = IsacParams(t_total=0.1, t_dwell=1e-3, omega=math.pi / 2, xi=0.9)
        assert beamwidth_from_duty(isac) == pytest.approx(0.01745329,
                                                          rel=1e-6)

    def test_single_dwell_covers_sector(self):
        isac = IsacParams(t_total=0.1, t_dwell=0.1, omega=math.pi / 2, xi=1.0)
        assert beamwidth_from_duty(isac) == pytest.approx(math.pi / 2,
                                                          rel=1e-15)

    def test_vanishing_duty_is_infeasible(self):
        isac = IsacParams()
        with pytest.raises(InfeasibleDutyCycleError):
            beamwidth_from_duty(isac, xi=1e-6)

    def test_constructor_rejects_infeasible_duty(self):
        with pytest.raises(InfeasibleDutyCycleError):
            IsacParams(t_total=0.1, t_dwell=0.05, xi=0.1)

    def test_product_with_duty_is_constant(self):
        isac = IsacParams()
        values = [beamwidth_from_duty(isac, xi=x) * x
                  for x in (0.02, 0.1, 0.33, 0.7, 1.0)]
        assert max(values) - min(values) <= 1e-15 * max(values)


class TestValidation:
    @pytest.mark.parametrize("kwargs", [
        {"bw": 0.0}, {"p_tx": -1.0}, {"t_s": -1.0}, {"eta": 0.0},
        {"alpha": 0.5}, {"delta_psi": 0.0}, {"delta_psi": 7.0}, {"g0": 0.0},
    ])
    def test_radar_invariants(self, kwargs):
        with pytest.raises(ParameterError):
            RadarParams(**kwargs)

    @pytest.mark.parametrize("kwargs", [
        {"rho_c": -1.0}, {"sigma_c": 0.0}, {"g_c_avg": 0.0}, {"r_c": 0.0},
    ])
    def test_clutter_invariants(self, kwargs):
        with pytest.raises(ParameterError):
            ClutterParams(**kwargs)

    def test_beamwidth_must_come_from_somewhere(self):
        with pytest.raises(ParameterError):
            Scenario(radar=RadarParams(), clutter=ClutterParams(),
                     target=TargetParams())

    def test_consistent_dual_sources_accepted(self):
        isac = IsacParams()
        scn = Scenario(radar=RadarParams(delta_psi=beamwidth_from_duty(isac)),
                       clutter=ClutterParams(), target=TargetParams(),
                       isac=isac)
        assert scn.delta_psi == pytest.approx(0.017453292519943295, rel=1e-15)

    def test_inconsistent_dual_sources_rejected(self):
        with pytest.raises(ParameterError):
            Scenario(radar=RadarParams(delta_psi=ONE_DEGREE),
                     clutter=ClutterParams(), target=TargetParams(),
                     isac=IsacParams())
