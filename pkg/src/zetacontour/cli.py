"""Command-line front end.

Subcommands: zeros, integrate, decompose, telescope, probe, suite, export.
The zero table defaults to the ZC_ZERO_TABLE environment variable when
--zeros is not given. Exit status is nonzero only when a pass/fail check
fails or an error aborts a command; measured-only records never fail.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .contour import Rectangle, decompose, integrate_rectangle
from .errors import MissingTable, ZetaContourError
from .precision import PrecisionConfig
from .reporting import (
    RunConfig,
    export_report,
    load_report_json,
    run_suite,
)
from .telescope import h_functions, riccati_iterate
from .universality import SegmentK, scan
from .zero_finder import ZeroTable, find_zeros_up_to, load_table, save_table


def _global_flags(p: argparse.ArgumentParser, digits_default: int):
    p.add_argument("--precision-digits", type=int, default=digits_default,
                   help="working decimal digits (<=15 selects the double engine)")
    p.add_argument("--tol", type=float, default=None,
                   help="target absolute tolerance per scalar evaluation")
    p.add_argument("--zeros", default=os.environ.get("ZC_ZERO_TABLE"),
                   help="zero-table file (default: $ZC_ZERO_TABLE)")
    p.add_argument("--out", required=False, help="output file")
    p.add_argument("--threads", type=int, default=1)


def _precision(args) -> PrecisionConfig:
    digits = args.precision_digits
    if args.tol is not None:
        tol = args.tol
    else:
        tol = 1e-11 if digits <= 15 else 10.0 ** (-(digits - 12))
    terms = 14 if digits <= 15 else 16
    return PrecisionConfig(working_digits=digits, target_abs_tol=tol,
                           euler_maclaurin_terms=terms,
                           cutoff_N=16 if digits <= 15 else 24)


def _load_or_build_table(args, needed_height: float) -> ZeroTable:
    if args.zeros and Path(args.zeros).exists():
        table = load_table(args.zeros)
        if table.max_height >= needed_height:
            return table
        print(f"note: table height {table.max_height} below {needed_height}; "
              f"rebuilding", file=sys.stderr)
    table = find_zeros_up_to(max(needed_height, 10.0), threads=args.threads)
    if args.zeros:
        save_table(table, args.zeros)
    return table


def _rect_from_args(args) -> Rectangle:
    if getattr(args, "general", None):
        x0, x1, y0, y1 = args.general
        return Rectangle.box(x0, x1, y0, y1)
    return Rectangle.paper_mode(args.alpha, args.beta, args.T)


def cmd_zeros(args) -> int:
    table = find_zeros_up_to(args.up_to, threads=args.threads)
    out = args.out or args.zeros
    if not out:
        raise MissingTable("give --out (or --zeros) to store the table")
    save_table(table, out)
    print(f"{len(table.gammas)} zeros up to {args.up_to} -> {out}")
    return 0


def cmd_integrate(args) -> int:
    rect = _rect_from_args(args)
    table = _load_or_build_table(args, rect.y1 + 10.0)
    rep = integrate_rectangle(rect, table, _precision(args), tol=args.quad_tol)
    payload = rep.to_json_dict()
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_decompose(args) -> int:
    rect = _rect_from_args(args)
    if not rect.paper:
        raise ZetaContourError("decompose requires a paper-mode rectangle")
    # the eps2 certification typically needs a table far above T
    table = _load_or_build_table(args, max(rect.T * 52.0, rect.T + 10.0))
    cfg = _precision(args)
    contour = integrate_rectangle(rect, table, cfg, tol=args.quad_tol)
    dec = decompose(rect, table, cfg, eps2=args.eps2, quad_tol=args.quad_tol)
    payload = contour.to_json_dict()
    payload["decomposition"] = dec.to_json_dict()
    text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_telescope(args) -> int:
    rect = Rectangle.paper_mode(args.alpha, args.beta, args.T)
    table = _load_or_build_table(args, args.T + 60.0)
    n = min(args.N, len(table.gammas))
    tr_f = riccati_iterate("f", n, rect, table)
    tr_g = riccati_iterate("g", n, rect, table)
    out = args.out or "trace.csv"
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "gamma_k", "h1", "h2", "f", "g",
                    "wrap_f", "wrap_g", "step_residual"])
        wf = wg = 0
        wrapsets_f = dict(tr_f.wrap_steps)
        wrapsets_g = dict(tr_g.wrap_steps)
        for k in range(1, n + 1):
            h1, h2 = h_functions(k, rect, table)
            wf += wrapsets_f.get(k, 0)
            wg += wrapsets_g.get(k, 0)
            w.writerow([k, repr(table.gammas[k - 1]), repr(h1), repr(h2),
                        repr(tr_f.iterates[k - 1]), repr(tr_g.iterates[k - 1]),
                        wf, wg,
                        repr(max(tr_f.step_residuals[k - 1],
                                 tr_g.step_residuals[k - 1]))])
    print(f"trace with N={n} -> {out}")
    return 0


def _parse_range(text: str, parts: int):
    vals = [float(v) for v in text.split(":")]
    if len(vals) != parts:
        raise ZetaContourError(f"expected {parts} colon-separated values in {text!r}")
    return vals


def cmd_probe(args) -> int:
    lo, hi, step = _parse_range(args.tau, 3)
    klo, khi = _parse_range(args.K, 2)
    K = SegmentK(klo, khi, t_offset=args.t_offset, samples=args.samples)
    table = _load_or_build_table(args, abs(args.t_offset) + hi + 10.0)
    summary = scan(lo, hi, step, K, args.U, args.V, args.eps, table,
                   _precision(args))
    out = args.out or "scan.csv"
    rows = sorted(
        [(r.tau, r.sup_distance, 0) for r in summary.results]
        + [(t, None, 1) for t in summary.skipped])
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["tau", "sup_distance", "skipped_flag"])
        for tau, sd, flag in rows:
            w.writerow([repr(tau), "" if sd is None else repr(sd), flag])
    best = summary.best
    print(f"scanned {len(summary.results)} shifts (skipped {len(summary.skipped)}); "
          f"good_fraction={summary.good_fraction:.6f}; "
          f"best sup_distance={best.sup_distance:.6f} at tau={best.tau}")
    return 0


def cmd_suite(args) -> int:
    cfg = RunConfig(precision=_precision(args),
                    zero_table_path=args.zeros,
                    output_dir=str(Path(args.out).parent) if args.out else ".",
                    threads=args.threads)
    report = run_suite(args.name, cfg)
    if args.out:
        export_report(report, "json", args.out)
    for c in report.checks:
        status = ("measured" if c.kind == "measured"
                  else ("pass" if c.passed else "FAIL"))
        bound = "" if c.bound is None else f" (bound {c.bound:g})"
        print(f"[{status}] {c.name}: {c.measured:.6g}{bound}")
    return 0 if report.ok else 1


def cmd_export(args) -> int:
    report = load_report_json(args.report)
    export_report(report, args.format, args.out)
    print(f"{args.report} -> {args.out} ({args.format})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="zc", description=__doc__)
    top.add_argument("--version", action="version", version=f"zc {__version__}")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="build a zero table")
    _global_flags(p, digits_default=15)
    p.add_argument("--up-to", dest="up_to", type=float, required=True)
    p.set_defaults(func=cmd_zeros)

    for name, func in (("integrate", cmd_integrate), ("decompose", cmd_decompose)):
        p = sub.add_parser(name, help=f"{name} zeta'/zeta over a rectangle")
        _global_flags(p, digits_default=15)
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--T", type=float)
        p.add_argument("--general", type=float, nargs=4,
                       metavar=("X0", "X1", "Y0", "Y1"))
        p.add_argument("--quad-tol", type=float, default=1e-8)
        if name == "decompose":
            p.add_argument("--eps2", type=float, default=None,
                           help="tail threshold (default 1/T^2)")
        p.set_defaults(func=func)

    p = sub.add_parser("telescope", help="emit Riccati traces as CSV")
    _global_flags(p, digits_default=15)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_telescope)

    p = sub.add_parser("probe", help="universality shift scan")
    _global_flags(p, digits_default=15)
    p.add_argument("--tau", required=True, help="lo:hi:step")
    p.add_argument("--K", required=True, help="sigma_lo:sigma_hi")
    p.add_argument("--U", type=float, default=0.0)
    p.add_argument("--V", type=float, default=-math.pi)
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=33)
    p.add_argument("--t-offset", type=float, default=0.0)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("suite", help="run a verification suite")
    _global_flags(p, digits_default=30)
    p.add_argument("name", help="suite id or 'all'")
    p.set_defaults(func=cmd_suite)

    p = sub.add_parser("export", help="re-export a JSON report")
    _global_flags(p, digits_default=30)
    p.add_argument("--report", required=True)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=cmd_export)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ZetaContourError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
