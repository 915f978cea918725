"""Command-line surface: validate and classify pairs, run flows, report
lifespans and curvature, and execute the verification suites.

Exit codes: 0 success, 1 invalid pair, 2 numeric or assertion failure,
3 I/O or schema failure.  All floats print as %.12e so identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from .errors import (InvalidPair, NotApplicable, OutOfDomain, SingularTime,
                     SpinorFlowError, StepFailure)
from .exact import frame_exact, hamiltonian_exact, lifespan, theta_exact
from .lapse import LapseProfile
from .lorentz import curvature_report
from .numeric import FlowState, flow_residuals, hamiltonian_of, integrate_to
from .pairs import CauchyPair, DEFAULT_TOL, classify, constraints, invariants, \
    is_constrained_ricci_flat, validate
from .verify import SUITES, run_suite, sample_window

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


def _fmt(x: float) -> str:
    return "%.12e" % float(x)


def _load_input(path: str) -> dict | list:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_pair(data: dict) -> tuple[CauchyPair, LapseProfile]:
    pair = CauchyPair.from_json_dict(data)
    if "beta" in data:
        profile = LapseProfile.from_json_dict(data)
    else:
        profile = LapseProfile.constant(1.0)
    return pair, profile


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


FLOW_COLUMNS = (
    ["t", "B"]
    + ["theta_" + k for k in ("uu", "ul", "un", "ll", "ln", "nn")]
    + ["U_" + a + b for a in "uln" for b in "uln"]
    + ["h_" + k for k in ("uu", "ul", "un", "ll", "ln", "nn")]
    + ["H", "r1", "r2", "r3", "r4"]
)


def _flow_row(pair, profile, state: FlowState) -> list[float]:
    res = flow_residuals(state, pair)
    return (
        [state.t, profile.b_integral(state.t)]
        + list(state.theta.as_array())
        + list(state.U.ravel())
        + list(state.metric.as_array())
        + [state.hamiltonian, res.frame_evolution, res.structure,
           res.theta_u_constancy, res.closedness]
    )


def _exact_state(pair, profile, t, tol) -> FlowState:
    th = theta_exact(pair, profile, t, tol)
    u = frame_exact(pair, profile, t, tol).U
    from .frames import Sym3

    return FlowState(t=float(t), theta=th, U=u,
                     metric=Sym3.from_matrix(u.T @ u),
                     hamiltonian=hamiltonian_of(th))


def _clip_window(pair, profile, t0, t1, tol) -> tuple[float, float]:
    span = lifespan(pair, profile, tol)
    lo = -math.inf if span.t_minus is None else span.t_minus
    hi = math.inf if span.t_plus is None else span.t_plus
    if profile.kind == "tabulated":
        dlo, dhi = profile.domain()
        lo, hi = max(lo, dlo), min(hi, dhi)
    margin = 1e-6 * max(1.0, abs(t0), abs(t1))
    c0 = max(t0, lo + margin) if math.isfinite(lo) else t0
    c1 = min(t1, hi - margin) if math.isfinite(hi) else t1
    if (c0, c1) != (t0, t1):
        print(
            f"warning: window [{t0}, {t1}] clipped to [{c0}, {c1}] "
            "to stay inside the lifespan",
            file=sys.stderr,
        )
    if c0 >= c1:
        raise SingularTime("requested window lies outside the lifespan")
    return c0, c1


def _render_table(columns, rows, fmt) -> str:
    if fmt == "json":
        payload = [dict(zip(columns, [_fmt(v) for v in row])) for row in rows]
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def cmd_validate(args, data) -> int:
    pair, _ = _parse_pair(data)
    report = validate(pair, args.tol)
    if not report.valid:
        print("invalid pair:")
        for v in report.violations:
            print(f"  {v}")
        return EXIT_INVALID
    inv = invariants(pair)
    group = classify(pair, args.tol)
    con = constraints(pair, args.tol)
    print(f"row: {report.row}")
    print(f"lambda: {_fmt(inv.lam)}  T: {_fmt(inv.T)}  Delta: {_fmt(inv.Delta)}")
    label = group.tag.value
    if group.mu is not None:
        label += f" (mu = {_fmt(group.mu)})"
    print(f"group: {label}")
    print(f"H0: {_fmt(con.hamiltonian)}")
    print(f"momentum_residual: {_fmt(float(np.max(np.abs(con.momentum_residual))))}")
    print(f"constrained_ricci_flat: {str(con.is_vacuum_admissible).lower()}")
    return EXIT_OK


def cmd_classify(args, data) -> int:
    pair, _ = _parse_pair(data)
    group = classify(pair, args.tol)
    if group.mu is None:
        print(group.tag.value)
    else:
        print(f"{group.tag.value} mu={_fmt(group.mu)}")
    return EXIT_OK


def cmd_lifespan(args, data) -> int:
    pair, profile = _parse_pair(data)
    span = lifespan(pair, profile, args.tol)
    payload = {
        "t_minus": None if span.t_minus is None else (
            "-inf" if math.isinf(span.t_minus) else _fmt(span.t_minus)),
        "t_plus": None if span.t_plus is None else (
            "inf" if math.isinf(span.t_plus) else _fmt(span.t_plus)),
        "immortal": span.immortal,
    }
    if span.note:
        payload["note"] = span.note
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_flow(args, data) -> int:
    pair, profile = _parse_pair(data)
    t0, t1 = _clip_window(pair, profile, args.t0, args.t1, args.tol)
    times = np.linspace(t0, t1, args.samples)
    if args.method == "exact":
        states = [_exact_state(pair, profile, t, args.tol) for t in times]
    else:
        states = integrate_to(pair, profile, times, tol=args.tol)
    rows = [_flow_row(pair, profile, st) for st in states]
    _emit(_render_table(FLOW_COLUMNS, rows, args.format), args.out)
    return EXIT_OK


def cmd_curvature(args, data) -> int:
    pair, profile = _parse_pair(data)
    t0, t1 = _clip_window(pair, profile, args.t0, args.t1, args.tol)
    times = np.linspace(t0, t1, args.samples)
    span = lifespan(pair, profile, args.tol)
    reports = [curvature_report(pair, profile, t, args.tol) for t in times]
    payload = {
        "lifespan": {
            "t_minus": None if span.t_minus is None else float(span.t_minus),
            "t_plus": None if span.t_plus is None else float(span.t_plus),
            "immortal": span.immortal,
        },
        "samples": reports,
    }
    _emit(json.dumps(payload, indent=2, default=float) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args, data) -> int:
    pair, profile = _parse_pair(data)
    rows = run_suite(pair, profile, args.suite, samples=args.samples, tol=args.tol)
    failed = False
    for row in rows:
        mark = "pass" if row.passed else "FAIL"
        print(f"[{mark}] {row.name}: max residual {_fmt(row.residual)} "
              f"(tol {_fmt(row.tol)})")
        failed = failed or not row.passed
    return EXIT_NUMERIC if failed else EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "lifespan": cmd_lifespan,
    "flow": cmd_flow,
    "curvature": cmd_curvature,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinorflow",
        description="Left-invariant parallel spinor flows on 3D Lie groups",
    )
    default_tol = float(os.environ.get("SPINORFLOW_TOL", DEFAULT_TOL))
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, window=False, method=False, suite=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="JSON file with the pair (and optional lapse)")
        p.add_argument("--tol", type=float, default=default_tol,
                       help="tolerance for validation and branch selection")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--sweep", action="store_true",
                       help="treat the input as a JSON array of pairs")
        if window:
            p.add_argument("--t0", type=float, default=0.0)
            p.add_argument("--t1", type=float, default=1.0)
            p.add_argument("--samples", type=int, default=50)
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        if method:
            p.add_argument("--method", choices=("exact", "rk4"), default="exact")
        if suite:
            p.add_argument("--suite", choices=("all",) + SUITES, default="all")
            p.add_argument("--samples", type=int, default=None)
        return p

    add("validate", "check admissibility and report invariants")
    add("classify", "print the isomorphism type of the underlying group")
    add("lifespan", "print the maximal interval of definition")
    add("flow", "sample the flow and write a trajectory table",
        window=True, method=True)
    add("curvature", "sample the 4D curvature and identity residuals", window=True)
    add("verify", "run a verification suite", suite=True)
    return parser


def _run_single(args, data) -> int:
    if args.command in ("flow", "curvature") and args.samples < 2:
        raise ValueError("--samples must be at least 2")
    if args.command in ("flow", "curvature") and not args.t0 < args.t1:
        raise ValueError("--t0 must be below --t1")
    return _COMMANDS[args.command](args, data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data = _load_input(args.input)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        if args.sweep:
            if not isinstance(data, list):
                raise ValueError("--sweep expects a JSON array of pairs")
            worst = EXIT_OK
            base_out = args.out
            for i, element in enumerate(data):
                if base_out:
                    root, ext = os.path.splitext(base_out)
                    args.out = f"{root}.{i:03d}{ext}"
                print(f"# pair {i}")
                try:
                    code = _run_single(args, element)
                except InvalidPair as exc:
                    print(f"invalid pair: {'; '.join(exc.violations)}")
                    code = EXIT_INVALID
                worst = max(worst, code)
            return worst
        return _run_single(args, data)
    except InvalidPair as exc:
        print("invalid pair:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INVALID
    except (SingularTime, StepFailure, OutOfDomain, NotApplicable) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
