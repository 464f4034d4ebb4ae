"""Benchmark command-line driver.

Subcommands
-----------
run                  method x step-size experiment matrix on a registered
                     problem; emits (h, method, abs_end_error, wall_time_s,
                     observed_order) as CSV or markdown.
sweep-coefficients   coefficient values over a v grid (CSV).
sweep-stability      characteristic pair, B/A and phase lag over a v grid.

Exit status is nonzero when any experiment cell failed.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .coefficients import MethodId, coefficient_sweep
from .context import make_context
from .errors import ObrechkoffError
from .integrator import StepperConfig, integrate
from .problems import PROBLEMS, get_problem
from .stability import stability_sweep


@dataclass
class ExperimentSpec:
    problem: str
    methods: list
    step_divisors: list
    omega: object = "default"          # "default" | float | None
    digits: int = 50
    startup: str = "exact"
    span: Optional[float] = None       # None: problem's own span

    def validate(self):
        if not self.methods:
            raise ObrechkoffError("at least one method is required")
        if any(d <= 0 for d in self.step_divisors):
            raise ObrechkoffError("step divisors must be positive")
        if list(self.step_divisors) != sorted(self.step_divisors):
            raise ObrechkoffError("step divisors must be increasing")


@dataclass
class ResultRow:
    method: str
    divisor: int
    h_text: str
    abs_end_error: Optional[str]   # 6-significant-digit scientific text
    wall_time_s: float
    observed_order: Optional[float]
    failed: bool = False
    message: str = ""


@dataclass
class ResultTable:
    spec: ExperimentSpec
    rows: list = field(default_factory=list)

    @property
    def any_failed(self):
        return any(r.failed for r in self.rows)


def _sci(x, sig=6):
    from mpmath import mpf, nstr
    return nstr(mpf(x) if not hasattr(x, "_mpf_") else x, sig,
                min_fixed=1, max_fixed=0, strip_zeros=False)


def _run_cell(problem_name, method_name, divisor, omega_opt, digits, startup_mode,
              span_opt, trajectory_every=0):
    """One (method, h) cell with a fresh context; picklable for worker pools."""
    ctx = make_context(digits)
    problem = get_problem(problem_name, ctx)
    method = MethodId.parse(method_name)
    x_end = ctx.mpf(str(span_opt)) + problem.x0 if span_opt is not None else problem.x_end
    span = x_end - problem.x0
    h = span / divisor
    if omega_opt == "default":
        omega = problem.default_omega
        if omega is None and method is not MethodId.CLASSICAL:
            raise ObrechkoffError(
                f"problem {problem_name!r} has no default fitting frequency; pass --omega"
            )
    elif omega_opt is None:
        omega = None
    else:
        omega = ctx.mpf(str(omega_opt))
    config = StepperConfig(method=method, h=h, omega=omega or 0,
                           startup=startup_mode)
    result = integrate(problem, config, ctx, x_end=x_end,
                       trajectory_every=trajectory_every)
    err = None
    if result.abs_end_error is not None:
        # recompute from the stored endpoint so the printed number can never
        # drift from the trajectory it claims to describe
        err = abs(result.y_end - problem.reference(x_end))
    return {
        "h_text": _sci(h),
        "err": None if err is None else _sci(err),
        "err_float": None if err is None else float(err),
        "wall": result.wall_time,
        "trajectory": [tuple("" if x is None else _sci(x) for x in row)
                       for row in result.trajectory],
    }


def trajectory_csv(rows) -> str:
    lines = ["x,y,y_reference,abs_error"]
    lines += [",".join(row) for row in rows]
    return "\n".join(lines) + "\n"


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> ResultTable:
    """All (method, divisor) cells; failures recorded in-row, run continues."""
    spec.validate()
    table = ResultTable(spec=spec)
    cells = [(m, d) for m in spec.methods for d in spec.step_divisors]
    args = [(spec.problem, m, d, spec.omega, spec.digits, spec.startup, spec.span)
            for m, d in cells]
    outcomes = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_cell, *a) for a in args]
            for fut in futures:
                try:
                    outcomes.append((fut.result(), None))
                except Exception as exc:  # cell failures stay in-row
                    outcomes.append((None, str(exc)))
    else:
        for a in args:
            try:
                outcomes.append((_run_cell(*a), None))
            except ObrechkoffError as exc:
                outcomes.append((None, str(exc)))

    by_method = {}
    for (m, d), (out, err_msg) in zip(cells, outcomes):
        if out is None:
            row = ResultRow(method=m, divisor=d, h_text="", abs_end_error=None,
                            wall_time_s=0.0, observed_order=None, failed=True,
                            message=err_msg)
        else:
            order = None
            prev = by_method.get(m)
            if prev is not None and prev[1] is not None and out["err_float"]:
                import math
                d_prev, e_prev = prev
                if e_prev > 0 and out["err_float"] > 0:
                    order = (math.log(e_prev / out["err_float"])
                             / math.log(d / d_prev))
            row = ResultRow(method=m, divisor=d, h_text=out["h_text"],
                            abs_end_error=out["err"], wall_time_s=out["wall"],
                            observed_order=order)
            by_method[m] = (d, out["err_float"])
        table.rows.append(row)
    return table


def emit(table: ResultTable, fmt: str = "csv") -> str:
    """Render the table; CSV rows sorted by (method, h descending)."""
    rows = sorted(table.rows, key=lambda r: (r.method, r.divisor))
    if fmt == "csv":
        lines = ["h,method,abs_end_error,wall_time_s,observed_order"]
        for r in rows:
            if r.failed:
                lines.append(f",{r.method},FAILED({r.message}),,")
                continue
            order = "" if r.observed_order is None else f"{r.observed_order:.2f}"
            err = "" if r.abs_end_error is None else r.abs_end_error
            lines.append(f"{r.h_text},{r.method},{err},{r.wall_time_s:.3f},{order}")
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        lines = ["| h | method | abs end error | wall time (s) | observed order |",
                 "|---|--------|---------------|---------------|----------------|"]
        for r in rows:
            if r.failed:
                lines.append(f"|  | {r.method} | FAILED: {r.message} |  |  |")
                continue
            order = "" if r.observed_order is None else f"{r.observed_order:.2f}"
            err = "" if r.abs_end_error is None else r.abs_end_error
            lines.append(f"| {r.h_text} | {r.method} | {err} | {r.wall_time_s:.3f} | {order} |")
        return "\n".join(lines) + "\n"
    raise ObrechkoffError(f"unknown format {fmt!r}")


def _grid(args):
    if args.v_grid:
        return [float(t) for t in args.v_grid.split(",") if t.strip()]
    if args.v_from is None or args.v_to is None or args.v_step is None:
        raise ObrechkoffError("pass either --v-grid or all of --v-from/--v-to/--v-step")
    grid = []
    v = args.v_from
    while v <= args.v_to + 1e-12:
        grid.append(v)
        v += args.v_step
    return grid


def sweep_coefficients_csv(method: MethodId, v_grid, digits: int) -> str:
    ctx = make_context(digits)
    lines = ["v,beta10,beta11,beta20,beta21,beta30,beta31,status"]
    for row in coefficient_sweep(method, v_grid, ctx):
        v, *betas, status = row
        cells = [_sci(v)] + ["" if b is None else _sci(b) for b in betas] + [status]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def sweep_stability_csv(method: MethodId, v_grid, digits: int) -> str:
    ctx = make_context(digits)
    lines = ["v,A,B,B_over_A,phase_lag,status"]
    for v, A, B, ratio, pl, status in stability_sweep(method, v_grid, ctx):
        cells = [_sci(v)] + ["" if x is None else _sci(x) for x in (A, B, ratio, pl)]
        lines.append(",".join(cells + [status]))
    return "\n".join(lines) + "\n"


def _write_out(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    p = argparse.ArgumentParser(
        prog="obrechkoff-bench",
        description="Benchmark driver for the two-step Obrechkoff methods.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a method x step-size experiment matrix")
    run_p.add_argument("--problem", required=True, choices=sorted(PROBLEMS))
    run_p.add_argument("--method", action="append", required=True,
                       help="classical | plprime | pldoubleprime (repeatable)")
    run_p.add_argument("--divisors", required=True,
                       help="comma list of step divisors, h = span/divisor")
    run_p.add_argument("--span", type=float, default=None,
                       help="integration span (default: the problem's own)")
    run_p.add_argument("--omega", default="default",
                       help='fitting frequency, or "default" for the problem value')
    run_p.add_argument("--digits", type=int, default=50)
    run_p.add_argument("--startup", choices=("exact", "taylor"), default="exact")
    run_p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    run_p.add_argument("--out", default=None)
    run_p.add_argument("--workers", type=int, default=1)
    run_p.add_argument("--trajectory-every", type=int, default=0,
                       help="dump every k-th node to --trajectory-out "
                            "(single-cell runs only)")
    run_p.add_argument("--trajectory-out", default=None)

    for name in ("sweep-coefficients", "sweep-stability"):
        sp = sub.add_parser(name, help=f"{name.replace('-', ' ')} over a v grid")
        sp.add_argument("--method", required=True)
        sp.add_argument("--v-grid", default=None, help="comma list of v values")
        sp.add_argument("--v-from", type=float, default=None)
        sp.add_argument("--v-to", type=float, default=None)
        sp.add_argument("--v-step", type=float, default=None)
        sp.add_argument("--digits", type=int, default=50)
        sp.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            divisors = [int(t) for t in args.divisors.split(",") if t.strip()]
            omega = args.omega
            if omega not in ("default",):
                omega = float(omega)
            spec = ExperimentSpec(
                problem=args.problem,
                methods=[MethodId.parse(m).value for m in args.method],
                step_divisors=divisors,
                omega=omega,
                digits=args.digits,
                startup=args.startup,
                span=args.span,
            )
            if args.trajectory_every:
                if len(spec.methods) * len(spec.step_divisors) != 1:
                    raise ObrechkoffError("--trajectory-every needs a single-cell run")
                cell = _run_cell(spec.problem, spec.methods[0], spec.step_divisors[0],
                                 spec.omega, spec.digits, spec.startup, spec.span,
                                 trajectory_every=args.trajectory_every)
                _write_out(trajectory_csv(cell["trajectory"]),
                           args.trajectory_out)
            table = run_experiment(spec, workers=args.workers)
            _write_out(emit(table, args.format), args.out)
            return 1 if table.any_failed else 0
        method = MethodId.parse(args.method)
        grid = _grid(args)
        if args.command == "sweep-coefficients":
            _write_out(sweep_coefficients_csv(method, grid, args.digits), args.out)
        else:
            _write_out(sweep_stability_csv(method, grid, args.digits), args.out)
        return 0
    except ObrechkoffError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
