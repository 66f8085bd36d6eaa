"""Command-line front end ``ngon-xc``.

Exit codes: 0 success, 1 verification failure, 2 usage / input error,
3 rectangle cover search stopped by its node budget.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .bounds import BoundsRow, bounds_row, minimize_fkz
from .dump import DumpFormatError, read_factorization, read_matrix, write_factorization, write_matrix
from .factorize import ConstructionError, recursive_factorize, verify_factorization
from .ngon import slack_matrix
from .rectcover import DEFAULT_BUDGET, slack_rectangle_cover

log = logging.getLogger("ngon_xc")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CSV_COLUMNS = ["n", "lb_log", "lb_sperner", "lb_improved", "lb_geometric",
               "rcb", "lb_best", "ub", "gap"]

CSV_HEADER = f"""\
# ngon-xc {__version__}: bounds on the nonnegative rank of the slack matrix S_n of the regular n-gon
# lb_log       ceil(log2(2n+2))
# lb_sperner   min r with C(r, floor(r/2)) >= n (rectangle covering bound from antichains)
# lb_improved  min r with n(r-1) <= (r - floor(r/2)) C(r, floor(r/2)) (rectangle covering, n-gon zero pattern)
# lb_geometric min r with n <= max_(3<=d<=r-1) min(faces(r,d-1,d-3), faces(r,d-1,d-2))
# rcb          exact rectangle covering number; blank if not computed, "k+" if only rc >= k was proven
# lb_best      max of all lower bounds above; rectangle covering bounds count because rc(S_n) <= rank_+(S_n)
# ub           inner dimension of the explicit recursive factorization
# gap          ub - lb_best
"""


def _rcb_cell(row: BoundsRow) -> str:
    if row.rcb_lower is None:
        return ""
    if row.rcb_optimal:
        return str(row.rcb)
    return f"{row.rcb_lower}+"


def _row_dict(row: BoundsRow) -> dict:
    d = {col: getattr(row, col) for col in CSV_COLUMNS if col != "rcb"}
    d["rcb"] = _rcb_cell(row)
    return d


def compute_rows(n_from: int, n_to: int, include_rcb: bool = False,
                 budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[BoundsRow]:
    ns = list(range(n_from, n_to + 1))
    args = [(n, include_rcb, budget) for n in ns]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(bounds_row, *zip(*args)))
    return [bounds_row(*a) for a in args]


def format_csv(rows: list[BoundsRow]) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER)
    writer = csv.DictWriter(buf, CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(_row_dict(row))
    return buf.getvalue()


def format_markdown(rows: list[BoundsRow]) -> str:
    """Bounds as rows, ``n`` as columns, in the layout of the published table."""
    labels = [("lb_log", "log"), ("lb_sperner", "Sperner"),
              ("lb_improved", "improved boolean"), ("lb_geometric", "geometric"),
              ("rcb", "RCB"), ("lb_best", "best lower"), ("ub", "upper (recursive)"),
              ("gap", "gap")]
    if all(r.rcb_lower is None for r in rows):
        labels = [lab for lab in labels if lab[0] != "rcb"]
    lines = ["| n | " + " | ".join(str(r.n) for r in rows) + " |",
             "|---|" + "---|" * len(rows)]
    for key, name in labels:
        cells = []
        for r in rows:
            value = _rcb_cell(r) if key == "rcb" else str(getattr(r, key))
            tight = key != "gap" and value == str(r.ub) and r.gap == 0
            cells.append(f"**{value}**" if tight else value)
        lines.append(f"| {name} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


def cmd_bounds_table(args) -> int:
    if args.n_from < 3 or args.n_to < args.n_from:
        log.error("need 3 <= --from <= --to")
        return EXIT_USAGE
    rows = compute_rows(args.n_from, args.n_to, args.rcb, args.budget, args.jobs)
    text = format_markdown(rows) if args.markdown else format_csv(rows)
    try:
        _emit(text, args.out)
    except OSError as exc:
        log.error("cannot write %s: %s", args.out, exc)
        return EXIT_USAGE
    return EXIT_OK


def cmd_factorize(args) -> int:
    if args.n < 3:
        log.error("--n must be >= 3")
        return EXIT_USAGE
    try:
        F = recursive_factorize(args.n, normalized=args.normalized)
    except ConstructionError as exc:
        log.error("construction failed for n=%d: %s", args.n, exc)
        return EXIT_FAIL
    S = slack_matrix(args.n, normalized=args.normalized)
    report = verify_factorization(S, F, args.tol)
    try:
        if args.out:
            write_factorization(args.out, F)
        if args.matrix_out:
            write_matrix(args.matrix_out, args.n, S.entries)
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_USAGE
    print(f"n={args.n}")
    print(f"r={F.r}")
    print(f"max_residual={report.max_abs_residual:.3e}")
    print(f"max_rel_residual={report.max_rel_residual:.3e}")
    print(f"min_entry={report.min_entry:.3e}")
    print("verified" if report.passed else "NOT verified")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    try:
        _, M = read_matrix(args.matrix)
        F = read_factorization(args.facto)
        report = verify_factorization(M, F, args.tol)
    except (OSError, DumpFormatError, ValueError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_rcb(args) -> int:
    if args.n < 3:
        log.error("--n must be >= 3")
        return EXIT_USAGE
    res = slack_rectangle_cover(args.n, args.budget)
    if res.optimal:
        print(f"rc(S_{args.n}) = {res.value} (optimal)")
    else:
        print(f"{res.lower_bound} <= rc(S_{args.n}) <= {res.value} (node budget exhausted)")
    print(f"nodes={res.nodes_explored}")
    for rect in res.cover:
        print(f"rows={list(rect.row_set)} cols={list(rect.col_set)}")
    return EXIT_OK if res.optimal else EXIT_BUDGET


def cmd_minfkz(args) -> int:
    if args.r < 2:
        log.error("--r must be >= 2")
        return EXIT_USAGE
    res = minimize_fkz(args.r)
    print(f"r={res.r}")
    print(f"min f = {res.min_f} (= {res.min_value} * r!)")
    print("minimizers (k, z): " + ", ".join(f"({k}, {z})" for k, z in res.all_minimizers))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngon-xc",
        description="Extension complexity of regular n-gons: bounds and explicit factorizations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds-table", help="lower and upper bounds for a range of n")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--rcb", action="store_true", help="also compute the exact rectangle covering number")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node budget per rcb search")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--markdown", action="store_true")
    p.set_defaults(func=cmd_bounds_table)

    p = sub.add_parser("factorize", help="explicit nonnegative factorization of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--normalized", action="store_true", help="divide S_n by c(1)")
    p.add_argument("--out", help="factorization dump path")
    p.add_argument("--matrix-out", help="also dump S_n here")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("verify", help="check a factorization dump against a matrix dump")
    p.add_argument("--matrix", required=True)
    p.add_argument("--facto", required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rcb", help="exact rectangle covering number of the support of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_rcb)

    p = sub.add_parser("minfkz", help="brute-force minimizers of the permutation-count function")
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_minfkz)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="ngon-xc: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
