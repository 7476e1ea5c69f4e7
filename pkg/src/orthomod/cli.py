"""Command-line front end.

Subcommands: verdict, scan, census, jacobi, bernoulli, hmdim, ingredients.
Machine output (--json / --csv) never renders exact scalars as floats;
human tables show 6-significant-digit approximations marked with "~".
Exit codes: 0 success, 2 flag error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import OrthomodError
from .exactnum import QuadSurd, bernoulli, format_rational
from .hmvol import (
    BRACKETS,
    DELTA1_READINGS,
    MODES,
    dim_mk_KII_leading,
    ingredients,
    obstruction_sum_unimodular_leading,
)
from .jacobi import SERIES, cusp_weight_menu, dim_jacobi_cusp
from .lattice import orbit_census
from .verdict import scan_threshold, verdict_for

MAX_D = 10**8
MAX_M = 32


def _bounded_int(lo: int, hi: int, name: str):
    def parse(text: str) -> int:
        try:
            val = int(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from exc
        if not lo <= val <= hi:
            raise argparse.ArgumentTypeError(f"{name} must be in [{lo}, {hi}]")
        return val

    return parse


class _VersionToStderr(argparse.Action):
    def __init__(self, option_strings, dest, **kwargs):
        super().__init__(option_strings, dest, nargs=0, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        print(f"orthomod {__version__}", file=sys.stderr)
        parser.exit(0)


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _table(rows: list[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def _surd_human(x: QuadSurd) -> str:
    return f"~{x.approx_str(6)}"


# --------------------------------------------------------------------------
# subcommand handlers

def _cmd_verdict(args) -> int:
    v = verdict_for(args.series, args.m, args.d, mode=args.mode, bracket=args.bracket)
    if args.json:
        _emit_json(v.to_json_dict())
        return 0
    rows = [
        ("series", v.series),
        ("m", str(v.m)),
        ("d", str(v.d)),
        ("status", v.status),
        ("source", v.source or "-"),
    ]
    if v.witness is not None:
        wit = v.witness
        parts = []
        if wit.a is not None:
            parts.append(f"a={wit.a}")
        if wit.w is not None:
            parts.append(f"w={wit.w}")
        if wit.beta is not None:
            parts.append(f"beta{_surd_human(wit.beta)}")
        if wit.predicate is not None:
            parts.append(f"predicate={wit.predicate}")
        rows.append(("witness", " ".join(parts) or "-"))
    if v.reason:
        rows.append(("reason", v.reason))
    for c in v.citations:
        rows.append(("citation", c))
    sys.stdout.write(_table(rows))
    return 0


def _cmd_scan(args) -> int:
    report = scan_threshold(
        args.series, args.m, args.w, args.d_max,
        mode=args.mode, bracket=args.bracket, threads=args.threads,
    )
    if args.csv:
        with open(args.csv, "w", encoding="ascii") as fh:
            fh.write("d,predicate\n")
            for i, bit in enumerate(report.bits):
                fh.write(f"{i + 2},{bit}\n")
    if args.json:
        _emit_json(report.to_json_dict())
        return 0
    rows = [
        ("series", report.series),
        ("m", str(report.m)),
        ("w", str(report.w)),
        ("cusp weight a", str(report.a)),
        ("d_max", str(report.d_max)),
        ("last_failure_d", str(report.last_failure_d)),
        ("first_stable_d", str(report.first_stable_d)),
    ]
    if report.literature_threshold is not None:
        rows.append(("recorded constant", str(report.literature_threshold)))
        rows.append(("note", report.note or ""))
    sys.stdout.write(_table(rows))
    return 0


def _cmd_census(args) -> int:
    census = orbit_census(args.m, args.d)
    payload = [
        {"complement": e.complement, "orbits": e.orbits, "divisors": e.divisors}
        for e in census.entries
    ]
    if args.json:
        _emit_json(payload)
        return 0
    lines = [f"{'complement'.ljust(16)}{'orbits'.rjust(8)}{'divisors'.rjust(10)}"]
    for e in census.entries:
        lines.append(f"{e.complement.ljust(16)}{str(e.orbits).rjust(8)}{str(e.divisors).rjust(10)}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_jacobi(args) -> int:
    if args.weight2_set:
        from .jacobi import WEIGHT2_ALWAYS_POSITIVE_BOUND, weight2_positive_small_indices

        payload = {
            "positive_below_bound": list(weight2_positive_small_indices()),
            "always_positive_above": WEIGHT2_ALWAYS_POSITIVE_BOUND,
        }
        if args.json:
            _emit_json(payload)
        else:
            sys.stdout.write(
                " ".join(str(d) for d in payload["positive_below_bound"])
                + f"\n(and every d > {WEIGHT2_ALWAYS_POSITIVE_BOUND})\n"
            )
        return 0
    if args.menu:
        if args.series is None:
            raise OrthomodError("jacobi --menu needs --series")
        menu = cusp_weight_menu(args.series, args.m, args.d)
        if args.json:
            _emit_json(menu.to_json_dict())
        else:
            rows = [(f"weight {a}", "exists" if ok else "-") for a, ok in menu.available_weights]
            sys.stdout.write(_table(rows))
        return 0
    if args.table:
        out = sys.stdout if args.csv is None else open(args.csv, "w", encoding="ascii")
        try:
            out.write("k,d,dim\n")
            for k in range(2, args.k_max + 1):
                for d in range(1, args.d_max + 1):
                    out.write(f"{k},{d},{dim_jacobi_cusp(k, d)}\n")
        finally:
            if out is not sys.stdout:
                out.close()
        return 0
    if args.k is None or args.index is None:
        raise OrthomodError("jacobi needs --k and --index (or --menu / --table)")
    value = dim_jacobi_cusp(args.k, args.index)
    if args.json:
        _emit_json({"k": args.k, "d": args.index, "dim": value})
    else:
        sys.stdout.write(f"{value}\n")
    return 0


def _cmd_bernoulli(args) -> int:
    value = bernoulli(args.n)
    if args.json:
        _emit_json({"n": args.n, "value": format_rational(value)})
    else:
        sys.stdout.write(format_rational(value) + "\n")
    return 0


def _cmd_hmdim(args) -> int:
    est = dim_mk_KII_leading(args.m)
    payload = {"m": args.m, "dim_mk_KII": est.to_json_dict(), "obstruction_sum": None}
    if args.m >= 3:
        payload["obstruction_sum"] = obstruction_sum_unimodular_leading(args.m).to_json_dict()
    if args.json:
        _emit_json(payload)
        return 0
    rows = [
        ("m", str(args.m)),
        ("dim coeff", f"{_surd_human(est.coeff)} (degree {est.degree})"),
    ]
    if payload["obstruction_sum"] is not None:
        obs = obstruction_sum_unimodular_leading(args.m)
        rows.append(("obstruction coeff", f"{_surd_human(obs.coeff)} (degree {obs.degree})"))
    sys.stdout.write(_table(rows))
    return 0


def _cmd_ingredients(args) -> int:
    rec = ingredients(
        args.m, args.d, args.w, k1=args.k1,
        mode=args.mode, bracket=args.bracket, delta1_reading=args.delta1,
    )
    if args.json:
        _emit_json(rec.to_json_dict())
        return 0
    rows = [
        ("m / d / w / k1", f"{rec.m} / {rec.d} / {rec.w} / {rec.k1}"),
        ("mode", rec.mode),
        ("bracket", rec.bracket),
        ("E_w", format_rational(rec.e_w)),
        ("h_d", str(rec.h_d)),
        ("b_minus2", _surd_human(rec.b_minus2)),
        ("b_minus2d", _surd_human(rec.b_minus2d) if rec.b_minus2d else "-"),
        ("C leading", _surd_human(rec.c_leading)),
        ("beta", _surd_human(rec.beta)),
        ("predicate", str(rec.predicate)),
    ]
    sys.stdout.write(_table(rows))
    return 0


# --------------------------------------------------------------------------
# parser assembly

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orthomod",
        description="Exact-arithmetic verdicts for two series of orthogonal modular varieties.",
    )
    parser.add_argument("--version", action=_VersionToStderr, help="print version to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, mode_flags: bool = True) -> None:
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if mode_flags:
            p.add_argument("--mode", choices=MODES, default="bound")
            p.add_argument("--bracket", choices=BRACKETS, default="sharp")

    p = sub.add_parser("verdict", help="Kodaira-type verdict for one series point")
    p.add_argument("--series", choices=SERIES, required=True)
    p.add_argument("--m", type=_bounded_int(0, MAX_M, "m"), required=True)
    p.add_argument("--d", type=_bounded_int(1, MAX_D, "d"), default=1)
    common(p)
    p.set_defaults(func=_cmd_verdict)

    p = sub.add_parser("scan", help="fixed-w predicate scan over 2 <= d <= d_max")
    p.add_argument("--series", choices=SERIES, default="k3")
    p.add_argument("--m", type=_bounded_int(1, MAX_M, "m"), required=True)
    p.add_argument("--w", type=_bounded_int(1, 8 * MAX_M + 2, "w"), required=True)
    p.add_argument("--d-max", dest="d_max", type=_bounded_int(2, MAX_D, "d-max"), required=True)
    p.add_argument("--threads", type=_bounded_int(1, 64, "threads"), default=1)
    p.add_argument("--csv", help="write per-d bits as CSV to this path")
    common(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("census", help="branch-divisor census for the K3-type series")
    p.add_argument("--d", type=_bounded_int(1, MAX_D, "d"), required=True)
    p.add_argument("--m", type=_bounded_int(0, MAX_M, "m"), default=1)
    common(p, mode_flags=False)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("jacobi", help="Jacobi cusp-form dimensions and the weight menu")
    p.add_argument("--k", type=_bounded_int(2, 10**6, "k"))
    p.add_argument("--index", type=_bounded_int(1, MAX_D, "index"))
    p.add_argument("--menu", action="store_true", help="emit the cusp-weight menu")
    p.add_argument("--series", choices=SERIES)
    p.add_argument("--m", type=_bounded_int(0, MAX_M, "m"), default=1)
    p.add_argument("--d", type=_bounded_int(1, MAX_D, "d"), default=1)
    p.add_argument("--table", action="store_true", help="emit a CSV table of dimensions")
    p.add_argument("--weight2-set", dest="weight2_set", action="store_true",
                   help="list the indices d <= 180 with a weight-2 cusp form")
    p.add_argument("--k-max", dest="k_max", type=_bounded_int(2, 1000, "k-max"), default=12)
    p.add_argument("--d-max", dest="d_max", type=_bounded_int(1, 10**4, "d-max"), default=25)
    p.add_argument("--csv", help="CSV output path for --table (default: stdout)")
    common(p, mode_flags=False)
    p.set_defaults(func=_cmd_jacobi)

    p = sub.add_parser("bernoulli", help="exact Bernoulli number")
    p.add_argument("--n", type=_bounded_int(0, 10**4, "n"), required=True)
    common(p, mode_flags=False)
    p.set_defaults(func=_cmd_bernoulli)

    p = sub.add_parser("hmdim", help="leading dimension coefficients (unimodular side)")
    p.add_argument("--m", type=_bounded_int(1, MAX_M, "m"), required=True)
    common(p, mode_flags=False)
    p.set_defaults(func=_cmd_hmdim)

    p = sub.add_parser("ingredients", help="all obstruction ingredients at one (m, d, w, k1)")
    p.add_argument("--m", type=_bounded_int(1, MAX_M, "m"), required=True)
    p.add_argument("--d", type=_bounded_int(1, MAX_D, "d"), required=True)
    p.add_argument("--w", type=_bounded_int(1, 8 * MAX_M + 2, "w"), required=True)
    p.add_argument("--k1", type=_bounded_int(1, 10**6, "k1"), default=1)
    p.add_argument("--delta1", choices=DELTA1_READINGS, default="d1")
    common(p)
    p.set_defaults(func=_cmd_ingredients)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OrthomodError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
