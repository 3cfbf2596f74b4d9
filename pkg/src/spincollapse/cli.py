"""Command-line front end.

Subcommands: solve a single collapse instance, dump level-set polylines as
CSV, run the iterated-measurement automaton from a JSON config, and work with
boolean outcome policies.  All output on stdout is a pure function of the
flags and config; diagnostics go to stderr (verbosity via COLLAPSE_LOG).
Exit codes: 0 success (death points included), 1 usage error, 2 grid/closed
form disagreement beyond tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys

from .automaton import ObserverAutomaton
from .bloch import SpinState, canonicalize_axis
from .pfn import (
    CHART_UNIFORM,
    SPHERE_AREA,
    ExprArityError,
    ExprSyntaxError,
    TruthTable,
    outcome_probability,
    parse_expr,
    render,
    to_cnf,
    to_dnf,
    to_truth_table,
)
from .solver import (
    SolverConfig,
    Status,
    constraint_levels,
    solve_collapse,
    solve_collapse_closed_form,
    trace_level_sets,
)

log = logging.getLogger("spincollapse")

AXIS_AGREE_TOL = 1e-4
S_UP_AGREE_TOL = 1e-6


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _setup_logging():
    level = {"error": logging.ERROR, "info": logging.INFO,
             "debug": logging.DEBUG}.get(
        os.environ.get("COLLAPSE_LOG", "error").lower(), logging.ERROR)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(message)s")


def _instance(args) -> tuple:
    axis = canonicalize_axis(args.theta_i, args.phi_i)
    state = SpinState(args.rho, args.tau)
    return axis, state


def _config(args) -> SolverConfig:
    method = {"grid": "grid", "closed": "closed_form",
              "both": "both"}[args.method]
    return SolverConfig(grid_n=args.grid, method=method)


def _solution_dict(sol) -> dict:
    return {
        "status": sol.status.value,
        "theta_f": sol.axis_f.theta,
        "phi_f": sol.axis_f.phi,
        "s_up": sol.s_up,
        "s_i": sol.s_i,
        "candidates": [
            {"theta": c.axis.theta, "phi": c.axis.phi, "overlap": c.overlap,
             "s_up": c.s_up, "component": c.component_id,
             "is_boundary": c.is_boundary}
            for c in sol.candidates
        ],
    }


def cmd_solve(args) -> int:
    axis, state = _instance(args)
    cfg = _config(args)
    out = None
    agreement = None
    exit_code = 0
    if cfg.method in ("grid", "both"):
        out = solve_collapse(axis, state, cfg)
    if cfg.method in ("closed_form", "both"):
        closed = solve_collapse_closed_form(axis, state, cfg)
        if cfg.method == "closed_form":
            out = closed
        else:
            axis_dist = math.hypot(out.axis_f.theta - closed.axis_f.theta,
                                   out.axis_f.phi - closed.axis_f.phi)
            s_up_diff = abs(out.s_up - closed.s_up)
            agree = (out.status == closed.status
                     and axis_dist <= AXIS_AGREE_TOL
                     and s_up_diff <= S_UP_AGREE_TOL)
            agreement = {
                "status_match": out.status == closed.status,
                "axis_dist": axis_dist,
                "s_up_diff": s_up_diff,
                "within_tolerance": agree,
            }
            if not agree:
                log.error("grid and closed-form routes disagree: %s",
                          agreement)
                exit_code = 2
    payload = _solution_dict(out)
    payload["method_agreement"] = agreement
    print(json.dumps(payload))
    return exit_code


def cmd_trace(args) -> int:
    axis, state = _instance(args)
    cfg = _config(args)
    p_same, p_flip = constraint_levels(axis, state)
    rows = []
    if min(p_same, p_flip) <= cfg.eps_trivial:
        log.warning("trivial instance: level sets are degenerate, "
                    "writing header only")
        print("warning: trivial instance, no level curves", file=sys.stderr)
    else:
        edge = 1e-12
        curves = trace_level_sets(state, (p_same, p_flip), cfg, axis_i=axis)
        for cv in curves:
            for th, ph, overlap, s_up in cv.vertices:
                on_edge = (th < edge or th > math.pi - edge
                           or ph < edge or ph > math.pi - edge)
                rows.append([f"{th:.12g}", f"{ph:.12g}", f"{cv.level:.12g}",
                             cv.component_id, f"{overlap:.12g}",
                             f"{s_up:.12g}", int(on_edge)])
    try:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["theta", "phi", "level", "component",
                             "overlap", "s_up", "is_boundary"])
            writer.writerows(rows)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


RUN_FIELDS = {
    "theta_i": float, "phi_i": float, "rho": float, "tau": float,
    "pfn": str, "memory_depth": int, "max_steps": int, "grid_n": int,
    "method": str, "seed": int, "out": str,
}


def cmd_run(args) -> int:
    try:
        with open(args.config) as fh:
            raw = json.load(fh)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: config parse error at line {exc.lineno} "
              f"column {exc.colno}: {exc.msg}", file=sys.stderr)
        return 1
    cfgd = {}
    for name, typ in RUN_FIELDS.items():
        if name not in raw:
            print(f"error: config missing field {name!r}", file=sys.stderr)
            return 1
        try:
            cfgd[name] = typ(raw[name])
        except (TypeError, ValueError):
            print(f"error: config field {name!r} must be {typ.__name__}",
                  file=sys.stderr)
            return 1
    unknown = set(raw) - set(RUN_FIELDS)
    if unknown:
        print(f"error: unknown config fields: {sorted(unknown)}",
              file=sys.stderr)
        return 1

    method = {"grid": "grid", "closed": "closed_form", "both": "both",
              "closed_form": "closed_form"}.get(cfgd["method"])
    if method is None:
        print(f"error: config field 'method' must be grid|closed|both",
              file=sys.stderr)
        return 1
    axis = canonicalize_axis(cfgd["theta_i"], cfgd["phi_i"])
    state = SpinState(cfgd["rho"], cfgd["tau"])
    pfn = parse_expr(cfgd["pfn"], cfgd["memory_depth"])
    solver_cfg = SolverConfig(grid_n=cfgd["grid_n"],
                              method="grid" if method == "both" else method)
    machine = ObserverAutomaton(axis, pfn, cfgd["memory_depth"], solver_cfg)
    result = machine.run(state, cfgd["max_steps"])
    with open(cfgd["out"], "w") as fh:
        fh.write(result.to_jsonl())
    print(json.dumps({
        "steps": len(result.records),
        "halted": result.halted,
        "halt_reason": result.halt_reason,
        "death_step": result.death_step,
    }))
    return 0


def _parse_or_diagnose(text: str, n: int):
    try:
        return parse_expr(text, n)
    except ExprSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"  {text}", file=sys.stderr)
        print(f"  {' ' * exc.position}^", file=sys.stderr)
        raise SystemExit(1)
    except ExprArityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(1)


def cmd_pfn(args) -> int:
    if args.pfn_command == "table":
        expr = _parse_or_diagnose(args.expr, args.n)
        print(to_truth_table(expr, args.n).to_hex())
        return 0
    if args.pfn_command in ("dnf", "cnf"):
        table = TruthTable.from_hex(args.table, args.n)
        expr = to_dnf(table) if args.pfn_command == "dnf" else to_cnf(table)
        print(render(expr))
        return 0
    if args.pfn_command == "prob":
        expr = _parse_or_diagnose(args.expr, args.n)
        measure = CHART_UNIFORM if args.measure == "chart" else SPHERE_AREA
        method = "analytic" if args.method == "analytic" else "monte_carlo"
        prob = outcome_probability(expr, measure, method,
                                   samples=args.samples, seed=args.seed,
                                   n=args.n)
        payload = {"probability": prob, "method": method,
                   "measure": measure.kind}
        if method == "monte_carlo":
            payload["samples"] = args.samples
            payload["seed"] = args.seed
        print(json.dumps(payload))
        return 0
    raise AssertionError(args.pfn_command)


def _add_instance_flags(p):
    p.add_argument("--theta-i", type=float, required=True, dest="theta_i",
                   help="initial axis polar angle (radians)")
    p.add_argument("--phi-i", type=float, required=True, dest="phi_i",
                   help="initial axis azimuth (radians)")
    p.add_argument("--rho", type=float, required=True,
                   help="state weight of the first amplitude, in [0,1]")
    p.add_argument("--tau", type=float, required=True,
                   help="state phase (radians)")
    p.add_argument("--method", choices=["grid", "closed", "both"],
                   default="both")
    p.add_argument("--grid", type=int, default=1024,
                   help="grid samples per chart dimension")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spincollapse")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one collapse instance")
    _add_instance_flags(p_solve)
    p_solve.add_argument("--json", action="store_true",
                         help="accepted for compatibility; output is JSON")
    p_solve.set_defaults(func=cmd_solve)

    p_trace = sub.add_parser("trace", help="write level-set polylines as CSV")
    _add_instance_flags(p_trace)
    p_trace.add_argument("--out", required=True, help="output CSV path")
    p_trace.set_defaults(func=cmd_trace)

    p_run = sub.add_parser("run", help="run the measurement automaton")
    p_run.add_argument("config", help="JSON run-config path")
    p_run.set_defaults(func=cmd_run)

    p_pfn = sub.add_parser("pfn", help="outcome-policy utilities")
    pfn_sub = p_pfn.add_subparsers(dest="pfn_command", required=True)
    p_table = pfn_sub.add_parser("table", help="truth table of an expression")
    p_table.add_argument("--expr", required=True)
    p_table.add_argument("--n", type=int, default=0)
    p_dnf = pfn_sub.add_parser("dnf", help="canonical DNF of a hex table")
    p_dnf.add_argument("--table", required=True)
    p_dnf.add_argument("--n", type=int, default=0)
    p_cnf = pfn_sub.add_parser("cnf", help="canonical CNF of a hex table")
    p_cnf.add_argument("--table", required=True)
    p_cnf.add_argument("--n", type=int, default=0)
    p_prob = pfn_sub.add_parser("prob", help="up-outcome probability")
    p_prob.add_argument("--expr", required=True)
    p_prob.add_argument("--n", type=int, default=0)
    p_prob.add_argument("--measure", choices=["chart", "sphere"],
                        default="chart")
    p_prob.add_argument("--method", choices=["analytic", "mc"],
                        default="analytic")
    p_prob.add_argument("--samples", type=int, default=1_000_000)
    p_prob.add_argument("--seed", type=int, default=0)
    p_pfn.set_defaults(func=cmd_pfn)

    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, ExprSyntaxError, ExprArityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
