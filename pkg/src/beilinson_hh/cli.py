"""Command line interface: single-point computation, resolution audit, K0 report,
case-table sweep, and block-dimension checks, with table or JSON output.

Exit codes: 0 success/agreement, 1 verified disagreement, 2 usage error,
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .grothendieck import happel_check
from .hochschild import (
    InternalCheckError,
    case_representatives,
    hochschild_report,
)
from .quiver import DownUpParams, block_basis, hilbert_coeff, quotient_oracle
from .resolution import verify_resolution
from .scalar import ScalarError, parse_scalar

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

_DEFAULT_MAX_N = 5


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beilinson-hh",
        description=(
            "Exact Hochschild cohomology of the Beilinson algebra of a graded "
            "down-up algebra with weights (1, n)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_n=True):
        if with_n:
            sp.add_argument("--n", type=int, required=True, help="weight of y (>= 1)")
        sp.add_argument("--alpha", default="1", help="scalar string, e.g. -3/4 or 1+2*sqrt(5)")
        sp.add_argument("--beta", default="1", help="scalar string; must be nonzero")
        sp.add_argument("--d", type=int, default=None, help="quadratic field tag (squarefree)")
        sp.add_argument("--format", choices=("table", "json"), default="table")
        sp.add_argument("--out", default=None, help="write output to this path")

    add_common(sub.add_parser("compute", help="brute-force vs closed-form dimensions"))
    add_common(sub.add_parser("resolution", help="audit the bimodule resolution"))
    add_common(sub.add_parser("grothendieck", help="K0 matrices and the trace identity"))
    add_common(sub.add_parser("hilbert", help="block dimensions vs both oracles"))
    sweep = sub.add_parser("sweep", help="run every reachable case branch per n")
    sweep.add_argument("--n-min", type=int, default=1)
    sweep.add_argument("--n-max", type=int, default=_DEFAULT_MAX_N)
    sweep.add_argument("--format", choices=("table", "json"), default="table")
    sweep.add_argument("--out", default=None)
    return parser


def _parse_point(args) -> DownUpParams:
    try:
        alpha = parse_scalar(args.alpha, args.d)
        beta = parse_scalar(args.beta, args.d)
        return DownUpParams(args.n, alpha, beta)
    except (ScalarError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, out_path) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(data) -> str:
    return json.dumps(data, indent=2)


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_compute(args) -> int:
    p = _parse_point(args)
    report = hochschild_report(p)
    if args.format == "json":
        _emit(_json(report.to_json_dict()), args.out)
    else:
        lines = [
            f"n: {p.n}",
            f"alpha: {p.alpha}",
            f"beta: {p.beta}",
            f"d: {p.d if p.d is not None else 'rational-only'}",
            f"case: {report.case}",
            f"delta: {report.delta}",
            f"disc: {report.disc}",
            f"brute: {report.brute}",
            f"closed: {report.closed}",
            f"rank L1: {report.rank_l1}",
            f"rank L2: {report.rank_l2}",
            f"euler: {report.euler}",
            f"agree: {_yesno(report.agree)}",
        ]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if report.agree else EXIT_DISAGREE


def cmd_resolution(args) -> int:
    p = _parse_point(args)
    report = verify_resolution(p)
    if args.format == "json":
        _emit(_json(report.to_json_dict()), args.out)
    else:
        dims = report.dims
        lines = [
            f"n: {p.n}",
            f"alpha: {p.alpha}",
            f"beta: {p.beta}",
            f"dims: P0={dims['P0']} P1={dims['P1']} P2={dims['P2']} Lambda={dims['Lambda']}",
            f"ranks: D0={report.ranks['D0']} D1={report.ranks['D1']} D2={report.ranks['D2']}",
            f"complex: {_yesno(report.complex_ok)}",
            f"exact: {_yesno(report.exact)}",
            f"euler: {_yesno(report.euler_ok)}",
            f"minimal: {_yesno(report.minimal)}",
            f"ok: {_yesno(report.ok)}",
        ]
        for failure in report.failures:
            lines.append(f"failure: {failure}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if report.ok else EXIT_DISAGREE


def cmd_grothendieck(args) -> int:
    p = _parse_point(args)
    report = happel_check(p)
    if args.format == "json":
        _emit(_json(report.to_json_dict()), args.out)
    else:
        lines = [
            f"n: {p.n}",
            f"alpha: {p.alpha}",
            f"beta: {p.beta}",
            f"k0 rank: {report.k0_rank}",
            f"unipotent: {_yesno(report.unipotent)}",
            f"-tr coxeter: {report.neg_trace_coxeter}",
            f"euler HH: {report.euler_hh}",
            f"happel: {_yesno(report.happel_ok)}",
        ]
        _emit("\n".join(lines), args.out)
    return EXIT_OK if report.happel_ok else EXIT_DISAGREE


def cmd_hilbert(args) -> int:
    p = _parse_point(args)
    size = p.vertex_count
    dims = [[0] * size for _ in range(size)]
    agree = True
    for i in range(1, size + 1):
        for j in range(i, size + 1):
            basis = len(block_basis(i, j, p))
            coeff = hilbert_coeff(p.n, j - i)
            oracle = quotient_oracle(i, j, p)
            dims[i - 1][j - 1] = basis
            if not (basis == coeff == oracle):
                agree = False
    if args.format == "json":
        data = {
            "n": p.n,
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "d": p.d,
            "dims": dims,
            "agree": agree,
        }
        _emit(_json(data), args.out)
    else:
        width = max(len(str(v)) for row in dims for v in row)
        lines = [f"n: {p.n} (blocks = normal basis = weighted count = quotient oracle)"]
        for row in dims:
            lines.append("  " + " ".join(str(v).rjust(width) for v in row))
        lines.append(f"agree: {_yesno(agree)}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_sweep(args) -> int:
    try:
        max_n = int(os.environ.get("BEILINSON_HH_MAX_N", str(_DEFAULT_MAX_N)))
    except ValueError as exc:
        raise UsageError("BEILINSON_HH_MAX_N must be an integer") from exc
    n_min, n_max = args.n_min, args.n_max
    if not 1 <= n_min <= n_max <= max_n:
        raise UsageError(f"sweep range must satisfy 1 <= n-min <= n-max <= {max_n}")

    rows = []
    all_agree = True
    unexercised = []
    for n in range(n_min, n_max + 1):
        for case, point in case_representatives(n):
            if point is None:
                rows.append({"n": n, "case": case, "exercised": False})
                unexercised.append({"n": n, "case": case})
                continue
            report = hochschild_report(point)
            row = report.to_json_dict()
            row["exercised"] = True
            row["euler"] = report.euler
            rows.append(row)
            if not report.agree or report.case != case:
                all_agree = False
    data = {
        "n_min": n_min,
        "n_max": n_max,
        "rows": rows,
        "all_agree": all_agree,
        "unexercised": unexercised,
    }
    if args.format == "json":
        _emit(_json(data), args.out)
    else:
        header = f"{'n':>2}  {'case':<15} {'alpha':>8} {'beta':>16} {'brute':>12} {'closed':>12} {'euler':>5}  agree"
        lines = [header, "-" * len(header)]
        for row in rows:
            if not row["exercised"]:
                lines.append(
                    f"{row['n']:>2}  {row['case']:<15} {'-':>8} {'-':>16} "
                    f"{'-':>12} {'-':>12} {'-':>5}  not exercised"
                )
                continue
            brute = "(" + ",".join(str(v) for v in row["brute"]) + ")"
            closed = "(" + ",".join(str(v) for v in row["closed"]) + ")"
            lines.append(
                f"{row['n']:>2}  {row['case']:<15} {row['alpha']:>8} {row['beta']:>16} "
                f"{brute:>12} {closed:>12} {row['euler']:>5}  {_yesno(row['agree'])}"
            )
        lines.append(f"all agree: {_yesno(all_agree)}")
        if unexercised:
            lines.append(f"branches not exercised: {len(unexercised)}")
        _emit("\n".join(lines), args.out)
    return EXIT_OK if all_agree else EXIT_DISAGREE


_COMMANDS = {
    "compute": cmd_compute,
    "resolution": cmd_resolution,
    "grothendieck": cmd_grothendieck,
    "hilbert": cmd_hilbert,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return EXIT_OK if code == 0 else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InternalCheckError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
