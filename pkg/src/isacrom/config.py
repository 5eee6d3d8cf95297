"""Flat key = value config documents mapping onto Scenario.

Missing keys take the standard defaults: P_tx = 1 W, BW = 20 MHz,
sigma_c = 0.1 m^2, sigma_t_avg = 10 m^2, rho_c = 1 m^-2, g_c_avg = 1,
eta = 1e-13 W, r_c = r_t = 10 m, T_s = 300 K, xi = 0.9, alpha = 2, plus the
ISAC timing defaults t_total = 100 ms, t_dwell = 1 ms, omega = pi/2,
rho_t = 1e-3 m^-2, data_rate = 1 Mbit/s. The timing defaults make the
beamwidth about one degree at xi = 0.9.
"""

from __future__ import annotations

import math

from .errors import ConfigError, ParameterError
from .scenario import (ClutterParams, IsacParams, RadarParams, Scenario,
                       TargetParams)

DEFAULTS: dict[str, float] = {
    "f_c_hz": 60e9,
    "bw_hz": 20e6,
    "ptx_w": 1.0,
    "g0": 1.0,
    "sigma_c_m2": 0.1,
    "sigma_t_avg_m2": 10.0,
    "rho_c_per_m2": 1.0,
    "g_c_avg": 1.0,
    "eta_w": 1e-13,
    "r_c_m": 10.0,
    "r_t_m": 10.0,
    "t_s_k": 300.0,
    "alpha": 2.0,
    "duty_cycle": 0.9,
    "t_total_s": 0.1,
    "t_dwell_s": 1e-3,
    "omega_rad": math.pi / 2,
    "rho_t_per_m2": 1e-3,
    "data_rate_bps": 1e6,
}

# delta_psi_rad is optional and overrides the timing-derived beamwidth.
KNOWN_KEYS = frozenset(DEFAULTS) | {"delta_psi_rad"}

# Single-key range checks applied at parse time so violations report a line.
_RANGE_CHECKS: dict[str, tuple] = {
    "bw_hz": (lambda v: v > 0, "must be positive"),
    "ptx_w": (lambda v: v >= 0, "must be nonnegative"),
    "g0": (lambda v: v > 0, "must be positive"),
    "sigma_c_m2": (lambda v: v > 0, "must be positive"),
    "sigma_t_avg_m2": (lambda v: v >= 0, "must be nonnegative"),
    "rho_c_per_m2": (lambda v: v >= 0, "must be nonnegative"),
    "g_c_avg": (lambda v: v > 0, "must be positive"),
    "eta_w": (lambda v: v > 0, "must be positive"),
    "r_c_m": (lambda v: v > 0, "must be positive"),
    "r_t_m": (lambda v: v > 0, "must be positive"),
    "t_s_k": (lambda v: v >= 0, "must be nonnegative"),
    "alpha": (lambda v: v >= 1, "must be at least 1"),
    "duty_cycle": (lambda v: 0 < v <= 1, "must lie in (0, 1]"),
    "t_total_s": (lambda v: v > 0, "must be positive"),
    "t_dwell_s": (lambda v: v > 0, "must be positive"),
    "omega_rad": (lambda v: 0 < v <= 2 * math.pi, "must lie in (0, 2*pi]"),
    "rho_t_per_m2": (lambda v: v >= 0, "must be nonnegative"),
    "data_rate_bps": (lambda v: v >= 0, "must be nonnegative"),
    "delta_psi_rad": (lambda v: 0 < v <= 2 * math.pi, "must lie in (0, 2*pi]"),
}


def _parse_entries(text: str) -> dict[str, tuple[float, int]]:
    """key -> (value, line number) with syntax and range validation."""
    entries: dict[str, tuple[float, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}",
                              lineno)
        key, _, value_text = line.partition("=")
        key = key.strip()
        value_text = value_text.strip()
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise ConfigError(f"duplicate key {key!r} (first set on line "
                              f"{entries[key][1]})", lineno)
        try:
            value = float(value_text)
        except ValueError:
            raise ConfigError(
                f"malformed number {value_text!r} for key {key!r}", lineno
            ) from None
        if not math.isfinite(value):
            raise ConfigError(f"value for {key!r} must be finite", lineno)
        check = _RANGE_CHECKS.get(key)
        if check is not None and not check[0](value):
            raise ConfigError(f"{key} = {value:g} {check[1]}", lineno)
        entries[key] = (value, lineno)
    return entries


def parse_config(text: str) -> Scenario:
    """Parse a config document into a validated Scenario.

    ``#`` starts a comment, blank lines are ignored, unknown keys are errors.
    When ``delta_psi_rad`` is supplied it overrides the timing-derived
    beamwidth; the duty cycle is then re-derived from the timing so the
    scenario stays self-consistent, unless the document also pins
    ``duty_cycle`` to a conflicting value, which is an error.
    """
    entries = _parse_entries(text)
    values = dict(DEFAULTS)
    for key, (value, _) in entries.items():
        values[key] = value

    delta_psi = values.get("delta_psi_rad")
    duty = values["duty_cycle"]
    if delta_psi is not None:
        implied = (values["t_dwell_s"] * values["omega_rad"]
                   / (delta_psi * values["t_total_s"]))
        if "duty_cycle" in entries:
            if abs(duty - implied) / implied > 1e-9:
                raise ConfigError(
                    f"delta_psi_rad implies duty_cycle = {implied:.12g}, which "
                    f"conflicts with the configured duty_cycle = {duty:g}",
                    entries["duty_cycle"][1])
        else:
            if not 0 < implied <= 1:
                raise ConfigError(
                    f"delta_psi_rad = {delta_psi:g} implies an infeasible duty "
                    f"cycle {implied:.6g}; adjust t_dwell_s, t_total_s, or "
                    f"omega_rad", entries["delta_psi_rad"][1])
            duty = implied

    try:
        radar = RadarParams(
            f_c=values["f_c_hz"], bw=values["bw_hz"], p_tx=values["ptx_w"],
            g0=values["g0"], t_s=values["t_s_k"], eta=values["eta_w"],
            alpha=values["alpha"], delta_psi=delta_psi)
        clutter = ClutterParams(
            rho_c=values["rho_c_per_m2"], sigma_c=values["sigma_c_m2"],
            g_c_avg=values["g_c_avg"], r_c=values["r_c_m"])
        target = TargetParams(
            sigma_t_avg=values["sigma_t_avg_m2"], r_t=values["r_t_m"],
            rho_t=values["rho_t_per_m2"])
        isac = IsacParams(
            t_total=values["t_total_s"], t_dwell=values["t_dwell_s"],
            omega=values["omega_rad"], xi=duty,
            data_rate=values["data_rate_bps"])
        return Scenario(radar=radar, clutter=clutter, target=target, isac=isac)
    except ParameterError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config_file(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
