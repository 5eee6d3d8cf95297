"""Command-line front end: metrics, sweeps, MC validation, threshold solving.

Numeric output formatting is pinned (scientific notation, 9 significant
digits, lowercase ``e``, LF line endings) so identical inputs produce
byte-identical files on every platform and thread count.

Exit codes: 0 success, 1 usage or config error, 2 computation or
convergence error, 3 validation failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .clutter import clutter_spec_from_scenario
from .config import DEFAULTS, parse_config, parse_config_file
from .detection import evaluate_metrics, pfa, threshold_for_pfa
from .errors import (ConfigurationError, ConvergenceError, IsacromError,
                     OracleInfeasibleError, ParameterError,
                     UnattainableTargetError)
from .gilpelaez import QuadratureOptions
from .montecarlo import McOptions, estimate_pd_mc, estimate_pfa_mc
from .scenario import Scenario, mean_signal_power
from .throughput import expected_detected_targets, network_throughput

SWEEP_PARAMS = ("ptx", "bw", "duty", "sigma0", "rcs_t")
CSV_HEADER = "param,value,alpha,pfa,pd,beta,gamma_bps"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_VALIDATION = 3


def _fmt(value: float) -> str:
    return format(value, ".8e")


@dataclass(frozen=True)
class SweepRequest:
    param: str
    start: float
    stop: float
    points: int
    alphas: tuple[float, ...]

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ParameterError(f"unknown sweep parameter {self.param!r}")
        if not self.start < self.stop:
            raise ParameterError("sweep range must satisfy from < to")
        if self.points < 2:
            raise ParameterError("sweep needs at least 2 points")
        if len(self.alphas) == 0 or any(a < 1 for a in self.alphas):
            raise ParameterError("alphas must be a nonempty list of values >= 1")

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[tuple[str, float, float, float, float, float, float], ...]

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for param, value, alpha, p_fa, p_d, beta, gamma in self.rows:
            lines.append(",".join((param, _fmt(value), _fmt(alpha),
                                   _fmt(p_fa), _fmt(p_d), _fmt(beta),
                                   _fmt(gamma))))
        return "\n".join(lines) + "\n"


def _apply_param(scenario: Scenario, param: str, value: float) -> Scenario:
    if param == "ptx":
        return scenario.with_radar(p_tx=value)
    if param == "bw":
        return scenario.with_radar(bw=value)
    if param == "rcs_t":
        return scenario.with_target(sigma_t_avg=value)
    if param == "sigma0":
        return scenario.with_clutter(rho_c=value / scenario.clutter.sigma_c)
    raise ParameterError(f"unknown sweep parameter {param!r}")


def _sweep_point(scenario: Scenario, request: SweepRequest, alpha: float,
                 value: float, eta_override: float | None,
                 opts: QuadratureOptions):
    scn = scenario.with_radar(alpha=alpha)
    if request.param == "duty":
        point = network_throughput(scn, opts, xi=value)
        p_fa = pfa(scn.with_duty_cycle(value), opts)
        return (request.param, value, alpha, p_fa, point.p_d, point.beta,
                point.gamma)
    scn = _apply_param(scn, request.param, value)
    if eta_override is not None:
        scn = scn.with_radar(eta=eta_override)
    isac = scn.require_isac()
    p_fa = pfa(scn, opts)
    metrics = evaluate_metrics(scn, opts)
    beta = expected_detected_targets(scn, metrics.p_d)
    gamma = beta * (1.0 - isac.xi) * isac.data_rate
    return (request.param, value, alpha, p_fa, metrics.p_d, beta, gamma)


def run_sweep(scenario: Scenario, request: SweepRequest,
              opts: QuadratureOptions, eta_mode: str = "fixed",
              pfa_ref: float = 0.5, threads: int = 1) -> SweepTable:
    """Evaluate the sweep grid; rows ordered by (alpha asc, value asc).

    With ``eta_mode="resolve"`` (bandwidth sweeps only) the threshold is
    re-solved once per alpha so the reference scenario operates at
    ``pfa_ref``, then held fixed across the sweep; ``fixed`` keeps the
    configured threshold everywhere.
    """
    if eta_mode not in ("fixed", "resolve"):
        raise ParameterError(f"unknown eta mode {eta_mode!r}")
    if eta_mode == "resolve" and request.param != "bw":
        raise ParameterError("--eta-mode resolve applies to bandwidth sweeps")
    alphas = tuple(sorted(set(request.alphas)))
    eta_by_alpha: dict[float, float | None] = {a: None for a in alphas}
    if eta_mode == "resolve":
        for a in alphas:
            result = threshold_for_pfa(scenario.with_radar(alpha=a), pfa_ref,
                                       opts)
            eta_by_alpha[a] = result.eta
    tasks = [(a, float(v)) for a in alphas for v in request.grid]

    def evaluate(task):
        a, v = task
        return _sweep_point(scenario, request, a, v, eta_by_alpha[a], opts)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, tasks))
    else:
        rows = [evaluate(t) for t in tasks]
    return SweepTable(rows=tuple(rows))


def _write_atomic(path: str, payload: str) -> None:
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        for leftover in (tmp, path):
            try:
                os.remove(leftover)
            except OSError:
                pass
        raise


@dataclass(frozen=True)
class ValidationRow:
    metric: str
    alpha: float
    ptx: float
    analytic: float
    mc_low: float
    mc_high: float
    mc_estimate: float
    passed: bool


def run_validation(scenario: Scenario, alphas, ptxs, trials: int, seed: int,
                   opts: QuadratureOptions,
                   threads: int = 1) -> tuple[list[ValidationRow], bool]:
    """Analytic-vs-MC calibration over the (alpha, ptx) grid.

    Grid point i seeds its trial substreams from ``seed + i`` so the checks
    are statistically independent even though the clutter intensity is
    shared across the grid. Passes when, per metric, at most
    ``max(1, n // 12)`` points fall outside their 99% Wilson interval.
    """
    grid = [(a, p) for a in sorted(set(alphas)) for p in sorted(set(ptxs))]

    def evaluate(item):
        idx, (alpha, ptx) = item
        scn = scenario.with_radar(alpha=alpha, p_tx=ptx)
        metrics = evaluate_metrics(scn, opts)
        mc_opts = McOptions(trials=trials, seed=seed + idx)
        mc_fa = estimate_pfa_mc(scn, mc_opts)
        mc_d = estimate_pd_mc(scn, mc_opts)
        return (
            ValidationRow("pfa", alpha, ptx, metrics.p_fa, mc_fa.ci_low,
                          mc_fa.ci_high, mc_fa.estimate,
                          mc_fa.contains(metrics.p_fa)),
            ValidationRow("pd", alpha, ptx, metrics.p_d, mc_d.ci_low,
                          mc_d.ci_high, mc_d.estimate,
                          mc_d.contains(metrics.p_d)),
        )

    items = list(enumerate(grid))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pairs = list(pool.map(evaluate, items))
    else:
        pairs = [evaluate(item) for item in items]
    rows = [row for pair in pairs for row in pair]
    allowed = max(1, len(grid) // 12)
    ok = all(
        sum(1 for r in rows if r.metric == m and not r.passed) <= allowed
        for m in ("pfa", "pd"))
    return rows, ok


def _load_scenario(args) -> Scenario:
    if args.config is None:
        return parse_config("")
    return parse_config_file(args.config)


def _quad_opts(args) -> QuadratureOptions:
    if args.quad_tol is None:
        return QuadratureOptions()
    return QuadratureOptions(abs_tol=args.quad_tol)


def _cmd_metrics(args) -> int:
    scenario = _load_scenario(args)
    opts = _quad_opts(args)
    metrics = evaluate_metrics(scenario, opts)
    point = network_throughput(scenario, opts)
    spec = clutter_spec_from_scenario(scenario)
    for name, value in (
        ("p_fa", metrics.p_fa),
        ("p_d", metrics.p_d),
        ("beta", point.beta),
        ("gamma_bps", point.gamma),
        ("delta_psi_rad", scenario.delta_psi),
        ("n_p_w", scenario.n_p),
        ("s0_w", mean_signal_power(scenario)),
        ("lambda", spec.lam),
        ("mark_scale_w", spec.mark_scale),
    ):
        print(f"{name:<13} = {_fmt(value)}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if args.out is None:
        raise ConfigurationError("sweep requires --out for the CSV file")
    scenario = _load_scenario(args)
    request = SweepRequest(
        param=args.param, start=args.start, stop=args.stop,
        points=args.points,
        alphas=tuple(float(a) for a in args.alphas.split(",")))
    table = run_sweep(scenario, request, _quad_opts(args),
                      eta_mode=args.eta_mode, pfa_ref=args.pfa_ref,
                      threads=args.threads)
    _write_atomic(args.out, table.to_csv())
    if request.param == "duty":
        for alpha in sorted(set(request.alphas)):
            rows = [r for r in table.rows if r[2] == alpha]
            top = max(r[6] for r in rows)
            best = min(i for i in range(len(rows)) if rows[i][6] == top)
            print(f"argmax gamma (alpha={_fmt(alpha)}): "
                  f"xi={_fmt(rows[best][1])} gamma_bps={_fmt(rows[best][6])}")
    print(f"wrote {len(table.rows)} rows to {args.out}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    scenario = _load_scenario(args)
    alphas = [float(a) for a in args.grid_alphas.split(",")]
    ptxs = [float(p) for p in args.grid_ptx.split(",")]
    rows, ok = run_validation(scenario, alphas, ptxs, args.trials, args.seed,
                              _quad_opts(args), threads=args.threads)
    for r in rows:
        verdict = "PASS" if r.passed else "FAIL"
        print(f"{r.metric:<3} alpha={_fmt(r.alpha)} ptx={_fmt(r.ptx)} "
              f"analytic={_fmt(r.analytic)} mc={_fmt(r.mc_estimate)} "
              f"ci=[{_fmt(r.mc_low)},{_fmt(r.mc_high)}] {verdict}")
    for metric in ("pfa", "pd"):
        n = sum(1 for r in rows if r.metric == metric)
        good = sum(1 for r in rows if r.metric == metric and r.passed)
        print(f"{metric}: {good}/{n} inside the Wilson interval")
    if not ok:
        print("validation FAILED", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


def _cmd_threshold(args) -> int:
    if not 0.0 < args.target < 1.0:
        raise _UsageError("--target must lie strictly between 0 and 1")
    scenario = _load_scenario(args)
    result = threshold_for_pfa(scenario, args.target, _quad_opts(args))
    print(f"eta_w = {_fmt(result.eta)}")
    print(f"achieved_pfa = {_fmt(result.achieved_pfa)}")
    if result.boundary:
        print(f"boundary: target sits at the attainable maximum "
              f"{_fmt(result.attainable_max)}; returned the noise floor")
    return EXIT_OK


class _UsageError(IsacromError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="path to a key = value config file")
    shared.add_argument("--seed", type=int, default=42,
                        help="base RNG seed (default 42)")
    shared.add_argument("--out", help="output file path")
    shared.add_argument("--quad-tol", type=float, default=None,
                        help="absolute CDF error target for the quadrature")
    shared.add_argument("--threads", type=int, default=1,
                        help="worker threads for grid evaluation")

    parser = _Parser(prog="isacrom",
                     description="Radar operating metrics and ISAC throughput "
                                 "in Poisson discrete clutter")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("metrics", parents=[shared],
                   help="print the operating point for one scenario"
                   ).set_defaults(func=_cmd_metrics)

    p_sweep = sub.add_parser("sweep", parents=[shared],
                             help="sweep one parameter and write a CSV")
    p_sweep.add_argument("--param", required=True, choices=SWEEP_PARAMS)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--points", type=int, required=True)
    p_sweep.add_argument("--alphas", default="2,3,4",
                         help="comma-separated path-loss exponents")
    p_sweep.add_argument("--eta-mode", choices=("fixed", "resolve"),
                         default="fixed",
                         help="hold the configured threshold, or re-solve it "
                              "per alpha at the reference P_fa (bw sweeps)")
    p_sweep.add_argument("--pfa-ref", type=float, default=0.5,
                         help="reference P_fa for --eta-mode resolve")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_val = sub.add_parser("validate", parents=[shared],
                           help="compare analytic metrics with Monte Carlo")
    p_val.add_argument("--trials", type=int, default=1_000_000)
    p_val.add_argument("--grid-alphas", default="2,3,4")
    p_val.add_argument("--grid-ptx", default="0.25,0.5,0.75,1.0")
    p_val.set_defaults(func=_cmd_validate)

    p_thr = sub.add_parser("threshold", parents=[shared],
                           help="solve the threshold for a target P_fa")
    p_thr.add_argument("--target", type=float, required=True)
    p_thr.set_defaults(func=_cmd_threshold)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"isacrom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigurationError as exc:
        print(f"isacrom: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnattainableTargetError as exc:
        print(f"isacrom: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (ConvergenceError, OracleInfeasibleError, ParameterError) as exc:
        print(f"isacrom: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
