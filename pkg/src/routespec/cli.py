"""Command-line front end.

Exit codes: 0 success, 1 parse or validation error, 2 path budget exceeded,
3 numerical failure.  Errors are written to stderr as a JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings

import numpy as np

from . import __version__
from .errors import (NumericalError, ParseError, PathBudgetExceeded, RouteSpecError,
                     ValidationError)
from .lp import export_lp
from .network import load_project
from .paths import enumerate_paths
from .report import AnalysisOptions, analyze, round_floats
from .schedule import project_stress
from .spectral import (least_squares_durations, minimal_spectral_order, nullspace_basis,
                       pseudoinverse, reachability, spectral_networks, svd,
                       threshold_reconstruct)


def _float_list(text):
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _p_value(text):
    if text.lower() in ("inf", "infinity"):
        return float("inf")
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be a number or 'inf', got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help="network file (.json or edge .csv)")
    common.add_argument("--input-format", choices=["json", "edge-csv"],
                        help="input format (default: from file suffix)")
    common.add_argument("--format", choices=["json", "text", "csv"], default="json",
                        help="output format")
    common.add_argument("--max-paths", type=int,
                        help="path budget (default: $ROUTESPEC_MAX_PATHS or 100000)")
    common.add_argument("--rank-tol", type=float, help="singular value cutoff for numerical rank")
    common.add_argument("--tie-tol", type=float, help="tolerance for critical-path ties")
    common.add_argument("--add-virtual-terminals", action="store_true",
                        help="join multiple start/finish nodes with zero-duration dummies")

    parser = argparse.ArgumentParser(prog="routespec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full report")
    p.add_argument("--target-tau", type=_float_list, help="target path durations, comma separated")
    p.add_argument("-p", dest="p", type=_p_value, default=2.0, help="norm order for stress")
    p.add_argument("--threshold", type=float, default=0.5, help="spectral reconstruction threshold")

    sub.add_parser("paths", parents=[common], help="route matrix")
    sub.add_parser("svd", parents=[common], help="singular value decomposition")
    sub.add_parser("nullspace", parents=[common], help="exact nullspace basis")

    p = sub.add_parser("pinv", parents=[common], help="pseudoinverse")
    p.add_argument("--target-tau", type=_float_list, help="also solve for these path durations")

    p = sub.add_parser("stress", parents=[common], help="project stress")
    p.add_argument("-p", dest="p", type=_p_value, default=2.0, help="norm order (>= 1 or inf)")

    p = sub.add_parser("lp-export", parents=[common], help="longest-path LP in LP file format")
    p.add_argument("-o", "--output", help="write to file instead of stdout")

    p = sub.add_parser("spectral", parents=[common], help="spectral networks")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--order", type=int, help="also print the thresholded k-term reconstruction")
    return parser


def _dump(doc, digits=None):
    if digits is not None:
        doc = round_floats(doc, digits)
    return json.dumps(doc, indent=2) + "\n"


def _matrix_text(M, fmt="{:.4g}"):
    return "\n".join(" ".join(fmt.format(float(x)) for x in row) for row in np.atleast_2d(M)) + "\n"


def _csv(rows, header=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header is not None:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def run(args) -> str:
    network = load_project(args.input, args.input_format, args.add_virtual_terminals)
    fmt = args.format
    if args.command == "lp-export":
        return export_lp(network)

    R = enumerate_paths(network, args.max_paths)
    ids = list(network.activity_ids)

    if args.command == "analyze":
        opts = AnalysisOptions(max_paths=args.max_paths, rank_tol=args.rank_tol,
                               tie_tol=args.tie_tol, threshold=args.threshold,
                               stress_p=args.p, target_tau=args.target_tau)
        report = analyze(network, opts, route=R)
        return report.to_text() if fmt == "text" else report.to_json()

    if args.command == "paths":
        if fmt == "csv":
            return R.to_csv()
        if fmt == "text":
            return "".join(f"R{p.index + 1}: {' -> '.join(p.activity_sequence)}\n" for p in R.paths)
        return R.to_json()

    if args.command == "nullspace":
        ns = nullspace_basis(R)
        if fmt == "csv":
            return _csv(ns.vectors, ids)
        if fmt == "text":
            return f"dimension {ns.dimension}\n" + "".join(f"{tuple(v)}\n" for v in ns.vectors)
        return _dump({"activities": ids, "dimension": ns.dimension, "basis": [list(v) for v in ns.vectors]})

    dec = svd(R, args.rank_tol)

    if args.command == "svd":
        if fmt == "text":
            return ("singular values: " + " ".join(f"{s:.4g}" for s in dec.sigma) + "\n"
                    + "U:\n" + _matrix_text(dec.U) + "Vt:\n" + _matrix_text(dec.Vt))
        doc = {"U": dec.U.tolist(), "sigma": dec.sigma.tolist(), "Vt": dec.Vt.tolist(),
               "numerical_rank": dec.numerical_rank, "rank_tol": dec.rank_tol}
        if fmt == "csv":
            return _csv([[s] for s in dec.sigma.tolist()], ["sigma"])
        return _dump(doc)

    if args.command == "pinv":
        P = pseudoinverse(dec)
        doc = {"activities": ids, "pseudoinverse": P.tolist()}
        if args.target_tau is not None:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                t_star = least_squares_durations(dec, args.target_tau)
            reach = reachability(dec, args.target_tau)
            doc.update(durations=t_star.tolist(), has_negative=bool((t_star < 0).any()),
                       reachable=reach.reachable, residual=reach.residual)
        if fmt == "csv":
            return _csv(P.tolist())
        if fmt == "text":
            text = _matrix_text(P)
            if args.target_tau is not None:
                text += "durations: " + " ".join(f"{x:.4g}" for x in doc["durations"]) + "\n"
                text += f"reachable: {'yes' if doc['reachable'] else 'no'}\n"
            return text
        return _dump(doc)

    if args.command == "stress":
        value = project_stress(R, network.durations, network.max_durations, args.p)
        if fmt == "text":
            return f"{value:.4g}\n"
        return _dump({"p": args.p, "stress": value}, digits=12)

    if args.command == "spectral":
        exp = spectral_networks(dec)
        k_min = minimal_spectral_order(exp, args.threshold)
        doc = {"threshold": args.threshold, "minimal_order": k_min,
               "singular_values": dec.sigma.tolist()}
        if args.order is not None:
            doc["order"] = args.order
            doc["reconstruction"] = threshold_reconstruct(exp, args.order, args.threshold).tolist()
        if fmt == "text":
            text = f"minimal order at threshold {args.threshold:.4g}: {k_min}\n"
            if args.order is not None:
                text += _matrix_text(doc["reconstruction"], "{:.0f}")
            return text
        return _dump(doc, digits=12)

    raise AssertionError(args.command)


def _exit_code(exc):
    if isinstance(exc, PathBudgetExceeded):
        return 2
    if isinstance(exc, NumericalError):
        return 3
    return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = run(args)
    except (RouteSpecError, OSError, ValueError, ZeroDivisionError) as exc:
        err = {"kind": getattr(exc, "kind", type(exc).__name__), "message": str(exc)}
        if isinstance(exc, ParseError) and exc.line is not None:
            err["line"] = exc.line
        if isinstance(exc, ValidationError) and exc.violations:
            err["violations"] = exc.violations
        if isinstance(exc, PathBudgetExceeded):
            err.update(count=exc.count, budget=exc.budget)
        sys.stderr.write(json.dumps({"error": err}) + "\n")
        return _exit_code(exc)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
