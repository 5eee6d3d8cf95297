"""Numerical CDF evaluation from a characteristic function.

Implements the inversion
``F(x) = 1/2 - (1/pi) * int_0^inf Im[cf(w) exp(-j*w*x)] / w dw``
for distributions that may carry a point mass (atom) at zero. The atom makes
the CF non-decaying, so the constant part is integrated in closed form via
``int_0^inf sin(w x)/w dw = (pi/2) sign(x)`` and only the decaying remainder
``cf(w) - atom`` is quadratured:

``F(x) = 1/2 + (atom/2) sign(x)
        - (1/pi) * int_0^inf Im[(cf(w) - atom) exp(-j*w*x)] / w dw``.

The integral runs in the conditioned variable u = w * scale. Panels are one
oscillation half-period long (pi / |x/scale|) where the complex exponential
dominates, and grow geometrically where the envelope decay dominates; each
panel is evaluated by two embedded 15-point Gauss-Legendre rules. Panels
accumulate until the last two panel magnitudes and the envelope tail bound
(the smaller of the absolute 1/u^2 bound and the integration-by-parts
oscillatory bound) all drop below half the absolute error target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._kernels import impl as _impl
from .errors import ConvergenceError, ParameterError

GL_ORDER = 15
_GLX, _GLW = np.polynomial.legendre.leggauss(GL_ORDER)

# |x|/scale below this is treated as x = 0+, where F equals the atom mass.
ATOM_CUTOFF = 1e-12

_MIN_PANELS = 6
_MAX_BLOCK = 4096


@dataclass(frozen=True)
class QuadratureOptions:
    abs_tol: float = 1e-8          # target absolute CDF error
    panel_budget: int = 100_000    # max oscillation panels
    omega_max_factor: float = 1e4  # caps u at omega_max_factor / abs_tol

    def __post_init__(self):
        if self.abs_tol <= 0:
            raise ParameterError("abs_tol must be positive")
        if self.panel_budget < 1:
            raise ParameterError("panel_budget must be at least 1")
        if self.omega_max_factor < 1:
            raise ParameterError("omega_max_factor must be at least 1")


DEFAULT_QUADRATURE = QuadratureOptions()


@dataclass(frozen=True)
class CfHandle:
    """A characteristic function plus the facts the inversion needs.

    ``cf`` must be reentrant and accept scalar or ndarray frequencies.
    ``atom_at_zero`` is the known point mass at 0 (0 if none) and
    ``mean_hint`` the first moment, used for the w -> 0 integrand limit and
    as the default conditioning scale. ``scale`` overrides the conditioning
    scale (for a compound distribution the per-mark scale conditions better
    than the mean). ``cp_lam`` routes the evaluation to the specialized
    compound-Poisson kernel; generic callers leave it None.
    """

    cf: Callable
    atom_at_zero: float = 0.0
    mean_hint: float = 0.0
    scale: float | None = None
    cp_lam: float | None = None
    _vcf: Callable = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if not 0.0 <= self.atom_at_zero <= 1.0:
            raise ParameterError("atom mass must lie in [0, 1]")
        at0 = complex(np.asarray(self.cf(0.0)).reshape(())[()])
        if abs(at0 - 1.0) > 1e-12:
            raise ParameterError(
                f"characteristic function must equal 1 at the origin, got {at0}")
        try:
            vectorized = np.asarray(self.cf(np.array([0.25, 0.5]))).shape == (2,)
        except (TypeError, ValueError):
            vectorized = False
        vcf = self.cf if vectorized else np.vectorize(self.cf)
        object.__setattr__(self, "_vcf", vcf)

    @property
    def conditioning_scale(self) -> float:
        if self.scale is not None:
            return self.scale
        return self.mean_hint if self.mean_hint > 0 else 1.0


@dataclass(frozen=True)
class CdfDiagnostics:
    value: float           # clamped CDF estimate
    raw_value: float       # estimate before clamping to [0, 1]
    clamp_distance: float
    error_bound: float     # tail bound + last panel magnitude
    panels: int
    atom_shortcut: bool    # True when |x|/scale fell below ATOM_CUTOFF


def gil_pelaez_integrand(handle: CfHandle, x: float, omega,
                         extract_atom: bool = True):
    """Integrand Im[(cf(w) - atom) e^(-j w x)]/w, with its w -> 0 limit.

    With ``extract_atom=False`` returns the raw integrand whose limit at the
    origin is ``mean_hint - x``; the atom-extracted limit is
    ``mean_hint - (1 - atom) * x``. Near-zero frequencies use the limit
    instead of the 0/0 ratio.
    """
    atom = handle.atom_at_zero if extract_atom else 0.0
    limit = handle.mean_hint - (1.0 - atom) * x
    w = np.asarray(omega, dtype=float)
    tiny = w * handle.conditioning_scale < 1e-150
    wsafe = np.where(tiny, 1.0, w)
    psi = np.asarray(handle._vcf(wsafe)) - atom
    val = np.imag(psi * np.exp(-1j * wsafe * x)) / wsafe
    out = np.where(tiny, limit, val)
    return float(out) if np.ndim(omega) == 0 else out


def _panel_layout(axs: float, u0: float, count: int):
    """Next ``count`` panel starts/widths from u0 for scaled abscissa axs."""
    starts = np.empty(count)
    widths = np.empty(count)
    cap = math.pi / axs
    for i in range(count):
        h = min(cap, max(math.pi, 0.5 * u0))
        starts[i] = u0
        widths[i] = h
        u0 += h
    return starts, widths, u0


def _generic_panel_block(handle: CfHandle, xs: float, starts, widths):
    """Panel integrals for an arbitrary CF callable; mirrors the kernel."""
    atom = handle.atom_at_zero
    scale = handle.conditioning_scale
    sums = np.zeros(starts.shape[0])
    amax = np.zeros(starts.shape[0])
    half = widths * 0.5
    quarter = widths * 0.25
    for m in (0, 1):
        a = starts + m * half
        u = a[:, None] + (_GLX[None, :] + 1.0) * quarter[:, None]
        psi = np.asarray(handle._vcf(u / scale)) - atom
        integ = np.imag(psi * np.exp(-1j * u * xs)) / u
        sums += quarter * (integ @ _GLW)
        amax = np.maximum(amax, np.abs(psi).max(axis=1))
    return sums, amax


def _integrate(handle: CfHandle, xs: float, opts: QuadratureOptions):
    """Accumulate panels until the stopping rule fires.

    Returns (integral including the 1/pi factor, error bound, panels,
    converged).
    """
    axs = abs(xs)
    tol_half = 0.5 * opts.abs_tol
    u_max = opts.omega_max_factor / opts.abs_tol
    if handle.cp_lam is not None:
        def evaluate(starts, widths):
            return _impl.cp_panel_block(handle.cp_lam, xs, starts, widths,
                                        _GLX, _GLW)
    else:
        def evaluate(starts, widths):
            return _generic_panel_block(handle, xs, starts, widths)

    total = 0.0
    u0 = 0.0
    k = 0
    prev_small = False
    block = 32
    bound = math.inf
    while k < opts.panel_budget and u0 < u_max:
        count = min(block, opts.panel_budget - k)
        starts, widths, u_next = _panel_layout(axs, u0, count)
        sums, amax = evaluate(starts, widths)
        for j in range(count):
            p = sums[j] / math.pi
            total += p
            k += 1
            u_end = starts[j] + widths[j]
            tail = min(amax[j], 2.0 * amax[j] / (u_end * axs)) / math.pi
            small = abs(p) <= tol_half
            if k >= _MIN_PANELS and small and prev_small and tail <= tol_half:
                return total, tail + abs(p), k, True
            prev_small = small
        u0 = u_next
        block = min(2 * block, _MAX_BLOCK)
    return total, bound, k, False


def _evaluate(handle: CfHandle, x: float, opts: QuadratureOptions):
    if not math.isfinite(x):
        raise ParameterError("evaluation point must be finite")
    atom = handle.atom_at_zero
    xs = x / handle.conditioning_scale
    if abs(xs) <= ATOM_CUTOFF:
        value = min(1.0, max(0.0, atom))
        return CdfDiagnostics(value=value, raw_value=atom, clamp_distance=0.0,
                              error_bound=0.0, panels=0, atom_shortcut=True)
    integral, bound, panels, converged = _integrate(handle, xs, opts)
    raw = 0.5 + 0.5 * atom * math.copysign(1.0, xs) - integral
    value = min(1.0, max(0.0, raw))
    if not converged:
        raise ConvergenceError(
            "Gil-Pelaez quadrature did not converge within the panel budget",
            best_estimate=value, error_bound=bound, panels=panels)
    return CdfDiagnostics(value=value, raw_value=raw,
                          clamp_distance=abs(raw - value),
                          error_bound=bound, panels=panels,
                          atom_shortcut=False)


def cdf_from_cf(handle: CfHandle, x: float,
                opts: QuadratureOptions = DEFAULT_QUADRATURE) -> float:
    """CDF at ``x`` via Gil-Pelaez inversion, clamped to [0, 1].

    The absolute error stays within ``opts.abs_tol`` for characteristic
    functions whose non-atomic part decays at least as 1/omega. Raises
    ConvergenceError (carrying the best estimate and its bound) when the
    panel budget runs out first.
    """
    return _evaluate(handle, x, opts).value


def cdf_from_cf_detailed(handle: CfHandle, x: float,
                         opts: QuadratureOptions = DEFAULT_QUADRATURE
                         ) -> CdfDiagnostics:
    """Like ``cdf_from_cf`` but returns the full diagnostics record."""
    return _evaluate(handle, x, opts)
