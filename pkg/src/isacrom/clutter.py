"""Compound-Poisson clutter return model.

The aggregate clutter power in one resolution cell is a compound Poisson sum:
a Poisson number of scatterers (mean ``lam``), each contributing an
exponentially distributed power with mean ``mark_scale``. The per-scatterer
mean collapses every radar constant into one number,
``mark_scale = p_tx * G^2 * sigma_c * r_c^(-2*alpha) * g_c_avg``; the surface
clutter coefficient form (sigma_o = rho_c * sigma_c in the prefactor) is
algebraically identical and accepted as an alternate constructor input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import OracleInfeasibleError, ParameterError
from .scenario import Scenario

# Series truncation cap: beyond this the oracle refuses rather than degrade.
SERIES_MAX_TERMS = 10_000


@dataclass(frozen=True)
class CompoundClutterSpec:
    lam: float         # expected scatterer count in the cell (rho_c * A_r)
    mark_scale: float  # mean per-scatterer return power [W]
    p0: float = 0.0    # radar constant p_tx * G^2 [W], kept for traceability

    def __post_init__(self):
        if self.lam < 0:
            raise ParameterError("expected scatterer count must be nonnegative")
        if self.lam > 0 and self.mark_scale <= 0:
            raise ParameterError(
                "mark scale must be positive when clutter is present")

    @property
    def atom_at_zero(self) -> float:
        """Point mass at zero return: the Poisson void probability."""
        return math.exp(-self.lam)


def clutter_spec_from_scenario(scenario: Scenario) -> CompoundClutterSpec:
    """Collapse a scenario into the canonical (lam, mark_scale) pair."""
    p0 = scenario.p0
    mark = (p0 * scenario.clutter.sigma_c
            * scenario.clutter.r_c ** (-2.0 * scenario.radar.alpha)
            * scenario.clutter.g_c_avg)
    lam = scenario.clutter.rho_c * scenario.cell_area
    if mark == 0.0:
        # Zero transmit power: every return is exactly zero, which is the
        # same distribution as an empty process.
        lam = 0.0
        mark = 1.0
    return CompoundClutterSpec(lam=lam, mark_scale=mark, p0=p0)


def clutter_spec_from_surface_coefficient(
        scenario: Scenario, sigma_o: float) -> CompoundClutterSpec:
    """Build the spec from the surface clutter coefficient sigma_o = rho_c*sigma_c.

    Delegates through rho_c = sigma_o / sigma_c so both parameterizations
    produce the same canonical spec.
    """
    if sigma_o < 0:
        raise ParameterError("surface clutter coefficient must be nonnegative")
    rho_c = sigma_o / scenario.clutter.sigma_c
    return clutter_spec_from_scenario(scenario.with_clutter(rho_c=rho_c))


def clutter_cf(spec: CompoundClutterSpec, omega):
    """Characteristic function exp(-lam * z/(z-1)) with z = 1j*omega*mark_scale.

    Accepts a scalar or ndarray frequency argument (units 1/W). Equals
    exp(-lam) * exp(lam/(1-z)), so the modulus never exceeds one and tends
    to the zero atom exp(-lam) as |omega| grows.
    """
    z = 1j * np.asarray(omega, dtype=float) * spec.mark_scale
    out = np.exp(-spec.lam * z / (z - 1.0))
    if np.ndim(omega) == 0:
        return complex(out)
    return out


def clutter_mean(spec: CompoundClutterSpec) -> float:
    """First moment lam * mark_scale in watts."""
    return spec.lam * spec.mark_scale


def clutter_second_moment(spec: CompoundClutterSpec) -> float:
    """Second raw moment 2*lam*s^2 + (lam*s)^2."""
    s = spec.mark_scale
    return 2.0 * spec.lam * s * s + (spec.lam * s) ** 2


def clutter_std(spec: CompoundClutterSpec) -> float:
    return math.sqrt(2.0 * spec.lam) * spec.mark_scale


def _poisson_truncation(lam: float, tol: float) -> int:
    """Smallest n with Poisson tail P(K > n) < tol, bounded by the series cap.

    Uses the geometric tail bound pmf(n) * r/(1-r), r = lam/(n+1), valid once
    n + 1 > lam.
    """
    if lam == 0.0:
        return 0
    pmf = math.exp(-lam)
    n = 0
    while n < SERIES_MAX_TERMS:
        if n + 1 > lam:
            r = lam / (n + 1)
            if pmf * r / (1.0 - r) < tol:
                return n
        n += 1
        pmf *= lam / n
    raise OracleInfeasibleError(
        f"series oracle cannot reach tolerance {tol:g} for lam={lam:g} "
        f"within {SERIES_MAX_TERMS} terms"
    )


def clutter_cdf_series(spec: CompoundClutterSpec, x, tol: float = 1e-10):
    """Series-form CDF oracle, independent of the characteristic function path.

    F(x) = exp(-lam) * [1_{x>=0} + sum_{n>=1} lam^n/n! * P(n, x/s)] where
    P(n, .) is the regularized lower incomplete gamma (the Erlang-n CDF).
    The Poisson tail beyond the truncation index is below ``tol``, so the
    absolute error is at most ``tol``. Accepts scalar or ndarray ``x``.
    """
    if tol <= 0:
        raise ParameterError("tolerance must be positive")
    scalar = np.ndim(x) == 0
    xa = np.asarray(x, dtype=float)
    out = np.zeros_like(xa)
    nonneg = xa >= 0
    if spec.lam == 0.0:
        out[nonneg] = 1.0
        return float(out) if scalar else out

    n_max = _poisson_truncation(spec.lam, tol)
    y = xa[nonneg] / spec.mark_scale
    total = np.ones_like(y)
    coeff = 1.0  # lam^n / n!
    for n in range(1, n_max + 1):
        coeff *= spec.lam / n
        total += coeff * special.gammainc(n, y)
    out[nonneg] = np.minimum(1.0, math.exp(-spec.lam) * total)
    return float(out) if scalar else out


def clutter_cf_handle(spec: CompoundClutterSpec):
    """Inversion handle for the clutter CF, routed to the specialized kernel."""
    from .gilpelaez import CfHandle

    return CfHandle(
        cf=lambda omega: clutter_cf(spec, omega),
        atom_at_zero=spec.atom_at_zero,
        mean_hint=clutter_mean(spec),
        scale=spec.mark_scale,
        cp_lam=spec.lam,
    )


def clutter_quantile_series(spec: CompoundClutterSpec, q: float,
                            tol: float = 1e-10) -> float:
    """Invert the series CDF by bisection; q must exceed the zero atom."""
    atom = spec.atom_at_zero
    if not atom < q < 1:
        raise ParameterError(
            f"quantile level must lie in (atom, 1) = ({atom:g}, 1)")
    lo = 0.0
    hi = clutter_mean(spec) + 60.0 * clutter_std(spec) + spec.mark_scale
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if clutter_cdf_series(spec, mid, tol) < q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
