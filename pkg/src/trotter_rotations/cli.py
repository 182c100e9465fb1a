"""Command-line surface: one verb per module.

Verbs: compose, kinematics, wigner, state, error, oracle-check, certify,
scan, fit.  Flags may be preloaded from a JSON config file (--config);
explicit flags win.  Exit codes: 0 success, 2 config error, 3 numerical
guard (degenerate t, quality gate), 4 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import analysis, figures, states, wigner
from .exceptions import (
    DegenerateTimeError,
    DenseCapError,
    InsufficientPointsError,
    QualityGateError,
)
from .kinematics import (
    Ordering,
    TrotterParams,
    chi_asymptote,
    effective_rotation,
    step_rotation,
)
from .rotations import EulerZYZ, axis_angle, compose, euler_from_axis_angle
from .trotter_error import (
    lower_bound_m0,
    lower_bound_top,
    trotter_error_exact,
    trotter_error_oracle,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_GUARD = 3
EXIT_IO = 4

#: Thread-count hint; the engine is single-threaded for bit-reproducibility,
#: so the value is accepted and recorded but does not change results.
THREADS_ENV = "TROTTER_ROTATIONS_THREADS"


def _parse_axis(text: str) -> np.ndarray:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad axis {text!r}: {exc}") from exc
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("axis needs three comma-separated components")
    return np.array(parts)


def _ordering(text: str) -> Ordering:
    return Ordering.Y_THEN_X if text == "yx" else Ordering.X_THEN_Y


def _add_ordering_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ordering", choices=["yx", "xy"], default="yx",
                   help="per-step factor order (default yx: x applied first)")


def _add_state_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--law", choices=["basis", "m0", "top"], required=True)
    p.add_argument("--ell", type=int, help="basis law: degree l")
    p.add_argument("--m", type=int, help="basis law: order m")
    p.add_argument("--C", type=float, default=1.0, help="power laws: coefficient C")
    p.add_argument("--gamma", type=float, help="power laws: exponent gamma in (0,2)")
    p.add_argument("--L-max", type=int, dest="L_max", help="power laws: truncation degree")


def _build_state(args) -> states.SphericalState:
    if args.law == "basis":
        if args.ell is None or args.m is None:
            raise ValueError("basis law needs --ell and --m")
        return states.make_basis_state(args.ell, args.m)
    if args.gamma is None or args.L_max is None:
        raise ValueError(f"{args.law} law needs --gamma and --L-max")
    maker = states.make_power_law_m0 if args.law == "m0" else states.make_power_law_top
    return maker(args.C, args.gamma, args.L_max)


def _emit_rows(fields, rows, fmt: str, path: str | None) -> None:
    if fmt == "json":
        text = json.dumps([dict(zip(fields, row)) for row in rows], indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([analysis._fmt(v) for v in row])
        text = buf.getvalue()
    analysis.emit(text, path)


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------

def _cmd_compose(args) -> int:
    r1 = axis_angle(args.angle1, _parse_axis(args.axis1))
    r2 = axis_angle(args.angle2, _parse_axis(args.axis2))
    r = compose(r1, r2)
    e = euler_from_axis_angle(r)
    doc = {
        "angle": r.angle,
        "axis": list(r.axis),
        "near_identity": r.near_identity,
        "euler": {"alpha": e.alpha, "beta": e.beta, "gamma": e.gamma},
    }
    analysis.emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_kinematics(args) -> int:
    ordering = _ordering(args.ordering)
    grid = analysis.geometric_grid(args.n_lo, args.n_hi, args.points)
    fields = ("n", "omega_n", "n_omega_n", "chi_n", "n_chi_n", "beta_n",
              "nu_x", "nu_y", "nu_z")
    rows = []
    for n in grid:
        p = TrotterParams(args.t, n, ordering)
        step = step_rotation(p)
        eff = effective_rotation(p)
        rows.append((n, step.omega_n, n * step.omega_n, eff.chi_n, n * eff.chi_n,
                     eff.euler.beta, eff.nu_n[0], eff.nu_n[1], eff.nu_n[2]))
    _emit_rows(fields, rows, args.format, args.output)
    return EXIT_OK


def _cmd_wigner(args) -> int:
    e = EulerZYZ(args.alpha, args.beta, args.gamma)
    if args.element is not None:
        m, mp = (int(v) for v in args.element.split(","))
        z = wigner.wigner_D(args.ell, e).element(m, mp)
        analysis.emit(json.dumps({"re": z.real, "im": z.imag}) + "\n", args.output)
        return EXIT_OK
    block = wigner.wigner_D(args.ell, e).entries
    doc = [[[z.real, z.imag] for z in row] for row in block]
    analysis.emit(json.dumps(doc) + "\n", args.output)
    return EXIT_OK


def _cmd_state(args) -> int:
    state = _build_state(args)
    if args.action == "generate":
        analysis.emit(states.state_to_json(state) + "\n", args.output)
        return EXIT_OK
    report = {
        "norm": state.norm(),
        "norm_sq": state.norm_sq(),
        "populated_blocks": (len(state.blocks)
                             if isinstance(state.law, states.FiniteSupport)
                             else state.law.L_max),
        "max_ell": state.max_ell(),
        "tail_mass": state.tail_mass(),
    }
    if not isinstance(state.law, states.FiniteSupport):
        summ = states.domain_summability(state.law, args.s)
        report["summability"] = {
            "s": args.s,
            "finite": summ.finite,
            "critical_exponent": summ.critical_exponent,
        }
    analysis.emit(json.dumps(report, indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_error(args) -> int:
    state = _build_state(args)
    ordering = _ordering(args.ordering)
    curve = analysis.scan_n(state, args.t, [args.n], ordering,
                            allow_degenerate=args.allow_degenerate)
    text = (analysis.curve_to_json(curve) + "\n" if args.format == "json"
            else analysis.curve_to_csv(curve))
    analysis.emit(text, args.output)
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    state = _build_state(args)
    ordering = _ordering(args.ordering)
    exact = trotter_error_exact(state, args.t, args.n, ordering).xi
    oracle = trotter_error_oracle(state, args.t, args.n, ordering)
    doc = {"n": args.n, "t": args.t, "exact": exact, "oracle": oracle,
           "abs_diff": abs(exact - oracle)}
    analysis.emit(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK


def _cmd_certify(args) -> int:
    ordering = _ordering(args.ordering)
    grid = analysis.geometric_grid(args.n_lo, args.n_hi, args.points)
    if args.family == "m0":
        state = states.make_power_law_m0(args.C, args.gamma, args.L_max)
    else:
        state = states.make_power_law_top(args.C, args.gamma, args.L_max)
    curve = analysis.scan_n(state, args.t, grid, ordering)
    text = (analysis.curve_to_json(curve) + "\n" if args.format == "json"
            else analysis.curve_to_csv(curve))
    analysis.emit(text, args.output)
    violations = [r.point.n for r in curve.rows
                  if r.cert is not None and r.point.xi < r.cert.value]
    if violations:
        print(f"certificate exceeded xi at n={violations}", file=sys.stderr)
        return EXIT_GUARD
    return EXIT_OK


def _cmd_scan(args) -> int:
    state = _build_state(args)
    ordering = _ordering(args.ordering)
    grid = analysis.geometric_grid(args.n_lo, args.n_hi, args.points)
    curve = analysis.scan_n(state, args.t, grid, ordering,
                            allow_degenerate=args.allow_degenerate)
    text = (analysis.curve_to_json(curve) + "\n" if args.format == "json"
            else analysis.curve_to_csv(curve))
    analysis.emit(text, args.output)
    if args.plot is not None:
        path = args.plot or figures.sibling_figure_path(args.output, "scan")
        figures.plot_error_curve(curve, path)
        print(f"figure written to {path}", file=sys.stderr)
    return EXIT_OK


def _cmd_fit(args) -> int:
    curve = analysis.read_curve_csv(args.input)
    n_lo = args.n_lo if args.n_lo is not None else curve.rows[0].point.n
    n_hi = args.n_hi if args.n_hi is not None else curve.rows[-1].point.n
    fit = analysis.fit_exponent(curve, (n_lo, n_hi))
    text = (analysis.fit_to_json(fit) + "\n" if args.format == "json"
            else analysis.fit_to_csv(fit))
    analysis.emit(text, args.output)
    if args.plot is not None:
        path = args.plot or figures.sibling_figure_path(args.output, "fit")
        figures.plot_error_curve(curve, path, fit=fit)
        print(f"figure written to {path}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trotter-rotations",
        description="State-dependent Trotter error for the angular momentum pair (L_x, L_y).",
    )
    parser.add_argument("--config", help="JSON file with default flag values (flags win)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        if output:
            p.add_argument("--output", "-o", help="output path (default stdout)")
            p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("compose", help="compose two axis-angle rotations")
    p.add_argument("--angle1", type=float, required=True)
    p.add_argument("--axis1", required=True, help="x,y,z")
    p.add_argument("--angle2", type=float, required=True)
    p.add_argument("--axis2", required=True, help="x,y,z")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_compose)

    p = sub.add_parser("kinematics", help="step and mismatch rotation scan over n")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-lo", type=int, required=True)
    p.add_argument("--n-hi", type=int, required=True)
    p.add_argument("--points", type=int)
    _add_ordering_flag(p)
    common(p)
    p.set_defaults(func=_cmd_kinematics)

    p = sub.add_parser("wigner", help="print a rotation block or element")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--element", help="m,mp single element")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_wigner)

    p = sub.add_parser("state", help="generate or inspect a state")
    p.add_argument("action", choices=["generate", "inspect"])
    _add_state_flags(p)
    p.add_argument("--s", type=float, default=1.0,
                   help="inspect: summability exponent s for |L|^s")
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_state)

    p = sub.add_parser("error", help="single Trotter-error point")
    _add_state_flags(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--allow-degenerate", action="store_true")
    _add_ordering_flag(p)
    common(p)
    p.set_defaults(func=_cmd_error)

    p = sub.add_parser("oracle-check", help="compare exact path against the brute-force oracle")
    _add_state_flags(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_ordering_flag(p)
    p.add_argument("--output", "-o")
    p.set_defaults(func=_cmd_oracle_check)

    p = sub.add_parser("certify", help="lower-bound certificate sweep for a power-law family")
    p.add_argument("--family", choices=["m0", "top"], required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--L-max", type=int, dest="L_max", required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-lo", type=int, required=True)
    p.add_argument("--n-hi", type=int, required=True)
    p.add_argument("--points", type=int)
    _add_ordering_flag(p)
    common(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("scan", help="error curve over a geometric n grid")
    _add_state_flags(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-lo", type=int, required=True)
    p.add_argument("--n-hi", type=int, required=True)
    p.add_argument("--points", type=int)
    p.add_argument("--allow-degenerate", action="store_true")
    p.add_argument("--plot", nargs="?", const="", default=None,
                   help="also render a log-log figure (optional path)")
    _add_ordering_flag(p)
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("fit", help="log-log exponent fit of a scanned curve")
    p.add_argument("--input", required=True, help="curve CSV from `scan`")
    p.add_argument("--n-lo", type=float, help="fit window lower edge")
    p.add_argument("--n-hi", type=float, help="fit window upper edge")
    p.add_argument("--plot", nargs="?", const="", default=None,
                   help="also render the curve with the fitted line (optional path)")
    common(p)
    p.set_defaults(func=_cmd_fit)

    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> list[str]:
    """Load JSON config defaults; explicit flags still win at parse time."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        with open(argv[idx + 1], encoding="utf-8") as fh:
            defaults = json.load(fh)
    except IndexError:
        parser.error("--config needs a path")
    except (OSError, json.JSONDecodeError) as exc:
        parser.error(f"cannot load config: {exc}")
    injected = []
    for key, value in defaults.items():
        flag = f"--{key.replace('_', '-')}"
        if flag in argv:
            continue
        if isinstance(value, bool):
            if value:
                injected.append(flag)
        else:
            injected.extend([flag, str(value)])
    head = argv[:idx] + argv[idx + 2:]
    # Subcommand flags must follow the subcommand token.
    return head + injected


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = _apply_config(parser, argv)
    args = parser.parse_args(argv)

    threads = os.environ.get(THREADS_ENV)
    if threads:
        print(f"{THREADS_ENV}={threads} noted (single-threaded engine)", file=sys.stderr)

    try:
        return args.func(args)
    except (DegenerateTimeError, QualityGateError, InsufficientPointsError) as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (DenseCapError, ValueError, IndexError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
