"""Command-line interface.

Exit codes: 0 success, 2 argument error, 3 budget/regime violation,
4 numeric failure.  Configuration precedence is flags, then ``PARTLAB_*``
environment variables, then built-in defaults.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
from typing import Sequence

from . import asymptotics as asy
from . import distributions as dist
from . import exact
from .errors import BudgetError, NumericError
from .graphical import (
    ENUMERATION_CAP,
    PartitionSampler,
    graphical_fraction_exact,
    graphical_fraction_sampled,
)
from .partitions import format_partition
from .report import Budget, CompareRow, compare_rows, decay_curve, rank_census, ranks_table

ENV_PREFIX = "PARTLAB_"


class UsageError(Exception):
    pass


def _env(name: str, default):
    return os.environ.get(ENV_PREFIX + name.upper(), default)


def _nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {v}")
    return v


def _pos_int(text: str) -> int:
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {v}")
    return v


def _u64(text: str) -> int:
    v = _nonneg_int(text)
    if v >= 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def _pos_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0: {v}")
    return v


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _int_list(text: str) -> list[int]:
    return [_nonneg_int(t) for t in text.split(",") if t.strip()]


# --------------------------------------------------------------- output


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None if math.isnan(v) else ("inf" if v > 0 else "-inf")
    return v


class Writer:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self._csv = csv.writer(self.stream, lineterminator="\n")

    def header(self, cols: Sequence[str]) -> None:
        self.cols = list(cols)
        if self.fmt == "csv":
            self._csv.writerow(self.cols)

    def row(self, values: Sequence) -> None:
        if self.fmt == "csv":
            self._csv.writerow([_fmt(v) for v in values])
        else:
            obj = {c: _json_value(v) for c, v in zip(self.cols, values)}
            self.stream.write(json.dumps(obj) + "\n")


# ------------------------------------------------------------- commands


def cmd_count(args, out: Writer) -> None:
    fam = args.family
    need = {"P": (), "A": ("j", "r"), "B": ("k", "r"), "C": ("k", "r")}[fam]
    missing = [name for name in need if getattr(args, name) is None]
    if missing:
        raise UsageError(f"count {fam} requires " + ", ".join("--" + m for m in missing))
    if fam == "P":
        value = exact.partitions_total(args.n)
    elif fam == "A":
        value = exact.count_box(args.n, args.j, args.r)
    elif fam == "B":
        if args.r < 1:
            raise UsageError("--r must be >= 1")
        value = exact.count_largest_exact(args.n, args.k, args.r)
    else:
        if args.r < 1 or args.k < 1:
            raise UsageError("--k and --r must be >= 1")
        value = exact.count_exact_both(args.n, args.k, args.r)
    if out.fmt == "csv":
        out.stream.write(f"{value}\n")
    else:
        out.stream.write(json.dumps({"family": fam, "n": args.n, "count": value}) + "\n")


def _pn_source(args):
    return asy.hardy_ramanujan_pn(args.n) if args.pn == "hr" else None


def cmd_estimate(args, out: Writer) -> None:
    kind, n = args.kind, args.n

    def need(*names):
        missing = [m for m in names if getattr(args, m) is None]
        if missing:
            raise UsageError(f"estimate {kind} requires " + ", ".join("--" + m for m in missing))

    if kind != "hr" and n < 2:
        raise UsageError("--n must be >= 2")
    pn = _pn_source(args)
    if kind == "hr":
        if n < 1:
            raise UsageError("--n must be >= 1")
        est = asy.hardy_ramanujan_pn(n)
    elif kind == "theorem1":
        need("j", "r")
        est = asy.theorem1_estimate(n, args.j, args.r, pn)
    elif kind in ("saddle", "saddle-fixed"):
        need("j", "r")
        est = asy.saddlepoint_estimate(n, args.j, args.r,
                                       alpha="fixed" if kind == "saddle-fixed" else "solve")
    elif kind == "b":
        need("k", "r")
        est = asy.b_estimate(n, args.k, args.r, pn)
    elif kind == "c":
        need("k", "r")
        est = asy.c_estimate(n, args.k, args.r, pn)
    elif kind == "rank":
        need("k", "t")
        est = asy.rank_count_estimate(n, args.k, args.t, pn)
    else:
        need("x", "y")
        est = asy.theorem3_estimate(n, args.x, args.y, pn)
    rec = est.record()
    out.header(list(rec))
    out.row(list(rec.values()))


def cmd_compare(args, out: Writer) -> None:
    if not args.n_grid:
        raise UsageError("--n-grid must list at least one n")
    x1 = 0.0 if args.central else args.x1
    y1 = 0.0 if args.central else args.y1
    budget = Budget(max_n=args.budget_n, max_jr=args.budget_jr)
    rows = compare_rows(args.family, args.n_grid, x1, y1, budget)
    out.header(CompareRow.HEADER)
    for row in rows:
        out.row([getattr(row, c) for c in CompareRow.HEADER])


def cmd_graphical(args, out: Writer) -> None:
    cols = ("n", "fraction", "stderr", "method", "samples")
    if args.sweep is not None:
        if args.sweep > args.enum_cap:
            raise BudgetError(f"sweep bound {args.sweep} exceeds the enumeration cap {args.enum_cap}")
        est, fit = decay_curve(args.sweep)
        out.header(cols)
        for e in est:
            out.row([e.row()[c] for c in cols])
        fit_text = json.dumps(fit, sort_keys=True)
        if args.fit_out:
            with open(args.fit_out, "w", encoding="utf-8") as fh:
                fh.write(fit_text + "\n")
        else:
            sys.stderr.write(fit_text + "\n")
        return
    if args.n is None:
        raise UsageError("graphical requires --n or --sweep")
    if args.n % 2:
        raise UsageError("graphical fraction defined for even n")
    if args.samples is not None:
        e = graphical_fraction_sampled(args.n, args.samples, args.seed)
    else:
        e = graphical_fraction_exact(args.n, args.enum_cap)
    out.header(cols)
    out.row([e.row()[c] for c in cols])


def cmd_ranks(args, out: Writer) -> None:
    try:
        census = rank_census(args.n, args.k, samples=args.samples, seed=args.seed,
                             cap=args.enum_cap)
    except ValueError as exc:
        if isinstance(exc, BudgetError):
            raise
        raise UsageError(str(exc)) from None
    rows, ks = ranks_table(census, args.n, args.k)
    out.header(("t", "empirical_cdf", "theoretical_cdf", "ks"))
    for t, emp, theo in rows:
        out.row([t, emp, theo, None])
    out.row([None, None, None, ks])


def cmd_sample(args, out: Writer) -> None:
    sampler = PartitionSampler(args.n)
    rng = random.Random(args.seed)
    out.header(("partition",))
    for _ in range(args.count):
        out.row([format_partition(sampler.draw(rng).parts)])


def _quad(args) -> dist.QuadratureSpec:
    return dist.QuadratureSpec(args.quad_abs_tol, args.quad_rel_tol, args.quad_max_subdivisions)


def cmd_dist(args, out: Writer) -> None:
    f = args.function
    if f in ("yk", "rank-cdf", "rank-pdf", "rank-moment") and args.k is None:
        raise UsageError(f"dist {f} requires --k")
    out.header(("function", "k", "x", "value"))
    if f == "rank-moment":
        out.row([f"{f}-p{args.p}", args.k, None, dist.rank_moment(args.k, args.p, _quad(args))])
        return
    if not args.x:
        raise UsageError(f"dist {f} requires --x")
    fn = {
        "gumbel": lambda x: dist.gumbel_cdf(x),
        "yk": lambda x: dist.yk_cdf(args.k, x),
        "rank-cdf": lambda x: dist.rank_cdf(args.k, x),
        "rank-pdf": lambda x: dist.rank_pdf(args.k, x),
        "normal-tail": lambda x: dist.normal_tail(x),
    }[f]
    for x in args.x:
        out.row([f, args.k, x, fn(x)])


def cmd_esseen(args, out: Writer) -> None:
    table = dist.moment_table(args.K, _quad(args))
    out.header(("k", "sigma2", "rho", "s2_cum", "r_cum", "bound"))
    for row in table.rows:
        out.row([row.k, row.sigma2, row.rho, row.s2_cum, row.r_cum, row.bound])
    sys.stderr.write(f"k0={dist.esseen_k0(table)}\n")


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partlab", description=__doc__.splitlines()[0])
    p.add_argument("--out", choices=("csv", "json"), default=_env("out", "csv"))
    p.add_argument("--cache", default=_env("cache", None), metavar="PATH",
                   help="P(n) table cache (n<TAB>count lines)")
    p.add_argument("--seed", type=_u64, default=_env("seed", "0"), metavar="U64")
    p.add_argument("--quad-abs-tol", type=_pos_float, default=_env("quad_abs_tol", "1e-12"))
    p.add_argument("--quad-rel-tol", type=_pos_float, default=_env("quad_rel_tol", "1e-10"))
    p.add_argument("--quad-max-subdivisions", type=_pos_int,
                   default=_env("quad_max_subdivisions", "200"))
    p.add_argument("--enum-cap", type=_nonneg_int, default=_env("enum_cap", str(ENUMERATION_CAP)))
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="exact counts P, A, B, C")
    c.add_argument("family", choices=("P", "A", "B", "C"))
    c.add_argument("--n", type=_nonneg_int, required=True)
    c.add_argument("--j", type=_nonneg_int)
    c.add_argument("--r", type=_nonneg_int)
    c.add_argument("--k", type=_nonneg_int)
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("estimate", help="one asymptotic estimate")
    e.add_argument("kind", choices=("hr", "theorem1", "saddle", "saddle-fixed", "b", "c",
                                    "rank", "theorem3"))
    e.add_argument("--n", type=_nonneg_int, required=True)
    e.add_argument("--j", type=_nonneg_int)
    e.add_argument("--r", type=_nonneg_int)
    e.add_argument("--k", type=_pos_int)
    e.add_argument("--t", type=float)
    e.add_argument("--x", type=_float_list)
    e.add_argument("--y", type=_float_list)
    e.add_argument("--pn", choices=("exact", "hr"), default="exact")
    e.set_defaults(func=cmd_estimate)

    m = sub.add_parser("compare", help="exact vs estimators over an n-grid")
    m.add_argument("family", choices=("A", "B", "C", "P"))
    m.add_argument("--n-grid", type=_int_list, required=True)
    g = m.add_mutually_exclusive_group()
    g.add_argument("--central", action="store_true")
    g.add_argument("--x1", type=float, default=0.0)
    m.add_argument("--y1", type=float, default=0.0)
    m.add_argument("--budget-n", type=_pos_int, default=_env("budget_n", "5000"))
    m.add_argument("--budget-jr", type=_pos_int, default=_env("budget_jr", "2000"))
    m.set_defaults(func=cmd_compare)

    r = sub.add_parser("ranks", help="empirical vs limiting k-th rank law")
    r.add_argument("--n", type=_pos_int, required=True)
    r.add_argument("--k", type=_pos_int, default=1)
    src = r.add_mutually_exclusive_group()
    src.add_argument("--enumerate", action="store_true")
    src.add_argument("--samples", type=_pos_int)
    r.set_defaults(func=cmd_ranks)

    gr = sub.add_parser("graphical", help="graphical fraction of partitions of even n")
    gr.add_argument("--n", type=_nonneg_int)
    mode = gr.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--samples", type=_pos_int)
    mode.add_argument("--sweep", type=_nonneg_int, metavar="NMAX",
                      help="exact fractions for every even n <= NMAX, with decay fits")
    gr.add_argument("--fit-out", metavar="PATH")
    gr.set_defaults(func=cmd_graphical)

    s = sub.add_parser("sample", help="uniform random partitions")
    s.add_argument("--n", type=_nonneg_int, required=True)
    s.add_argument("--count", type=_pos_int, default=1)
    s.set_defaults(func=cmd_sample)

    d = sub.add_parser("dist", help="evaluate a limit law")
    d.add_argument("function", choices=("gumbel", "yk", "rank-cdf", "rank-pdf",
                                        "rank-moment", "normal-tail"))
    d.add_argument("--k", type=_pos_int)
    d.add_argument("--x", type=_float_list,
                   help="comma-separated points; write --x=-1,0,1 when the first is negative")
    d.add_argument("--p", type=int, choices=(2, 3), default=2)
    d.set_defaults(func=cmd_dist)

    es = sub.add_parser("esseen", help="moment table and normal-approximation bound")
    es.add_argument("--K", type=_pos_int, required=True)
    es.set_defaults(func=cmd_esseen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache and os.path.exists(args.cache):
        try:
            exact.load_cache(args.cache)
        except (OSError, exact.CacheFormatError) as exc:
            parser.exit(2, f"partlab: error: bad cache file: {exc}\n")
    out = Writer(args.out)
    try:
        args.func(args, out)
    except UsageError as exc:
        parser.exit(2, f"partlab: error: {exc}\n")
    except BudgetError as exc:
        parser.exit(3, f"partlab: budget exceeded: {exc}\n")
    except NumericError as exc:
        parser.exit(4, f"partlab: numeric failure: {exc}\n")
    except ValueError as exc:
        parser.exit(2, f"partlab: error: {exc}\n")
    if args.cache:
        exact.save_cache(args.cache)
    return 0


if __name__ == "__main__":
    sys.exit(main())
