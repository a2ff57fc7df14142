"""Grid sweeps and censuses that compare exact counts with the estimators."""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, asdict
from typing import Iterable, Sequence

from . import asymptotics as asy
from .distributions import gumbel_cdf, ks_statistic, rank_cdf
from .errors import BudgetError
from .exact import (
    count_box,
    count_exact_both,
    count_largest_exact,
    log_count,
    partitions_total,
)
from .graphical import (
    ENUMERATION_CAP,
    FractionEstimate,
    PartitionSampler,
    decay_fit,
    graphical_fraction_exact,
)
from .partitions import conjugate_parts, iter_parts

__all__ = [
    "Budget",
    "CompareRow",
    "nearest_index",
    "central_index",
    "compare_rows",
    "largest_part_census",
    "rank_census",
    "ks_largest_part",
    "ks_rank",
    "ranks_table",
    "rank_count_census",
    "theorem3_census",
    "decay_curve",
]


@dataclass(frozen=True)
class Budget:
    max_n: int = 5000
    max_jr: int = 2000
    enum_cap: int = ENUMERATION_CAP


def nearest_index(n: int, x1: float = 0.0) -> int:
    """Integer nearest ``s (ln s + x1)``; exact halves round down."""
    target = asy.scale(n) * (math.log(asy.scale(n)) + x1)
    lo = math.floor(target)
    return lo if target - lo <= 0.5 else lo + 1


def central_index(n: int) -> int:
    return nearest_index(n, 0.0)


@dataclass(frozen=True)
class CompareRow:
    family: str
    estimator: str
    n: int
    j: int
    r: int
    exact: int
    estimate_log: float
    ratio: float
    regime: str
    x1: float
    y1: float

    HEADER = (
        "family", "estimator", "n", "j", "r", "exact",
        "estimate_log", "ratio", "regime", "x1", "y1",
    )

    def as_dict(self) -> dict:
        return asdict(self)


def _ratio(est_log: float, exact: int) -> float:
    if exact <= 0:
        return math.nan
    return math.exp(est_log - log_count(exact))


_ESTIMATORS = {
    "A": ("theorem1", "saddlepoint"),
    "B": ("b_estimate",),
    "C": ("c_estimate",),
    "P": ("hardy_ramanujan",),
}


def compare_rows(
    family: str,
    ns: Sequence[int],
    x1: float = 0.0,
    y1: float = 0.0,
    budget: Budget = Budget(),
) -> list[CompareRow]:
    """Exact count versus each estimator of ``family`` over an n-grid.

    j (or k) and r are placed at the integers nearest the requested scaled
    coordinates; ``x1 = y1 = 0`` is the central placement.  The rows'
    ``x1``/``y1`` are recomputed from the integers actually used.
    """
    family = family.upper()
    if family not in _ESTIMATORS:
        raise ValueError(f"unknown family {family!r}")
    if not ns:
        raise ValueError("empty n-grid")
    bad = [n for n in ns if n < 2 or n > budget.max_n]
    if family != "P":
        bad += [
            n for n in ns
            if n not in bad
            and max(nearest_index(n, x1), nearest_index(n, y1)) > budget.max_jr
        ]
    if bad:
        raise BudgetError(f"n outside the exact-computation budget: {sorted(set(bad))}")

    rows = []
    for n in ns:
        if family == "P":
            exact = partitions_total(n)
            est = asy.hardy_ramanujan_pn(n)
            rows.append(CompareRow("P", "hardy_ramanujan", n, n, n, exact,
                                   est.log_value, _ratio(est.log_value, exact),
                                   est.regime, math.nan, math.nan))
            continue
        r = nearest_index(n, x1)
        j = nearest_index(n, y1)
        if family == "A":
            exact = count_box(n, j, r)
            ests = [("theorem1", asy.theorem1_estimate(n, j, r)),
                    ("saddlepoint", asy.saddlepoint_estimate(n, j, r))]
        elif family == "B":
            exact = count_largest_exact(n, j, r)
            ests = [("b_estimate", asy.b_estimate(n, j, r))]
        else:
            exact = count_exact_both(n, j, r)
            ests = [("c_estimate", asy.c_estimate(n, j, r))]
        for name, est in ests:
            rows.append(CompareRow(family, name, n, j, r, exact, est.log_value,
                                   _ratio(est.log_value, exact), est.regime,
                                   est.x1, est.y1))
    return rows


# ---------------------------------------------------------------- censuses


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise BudgetError(f"n={n} exceeds the enumeration cap {cap}")


def largest_part_census(n: int, cap: int = ENUMERATION_CAP) -> Counter:
    """Count of partitions of ``n`` by largest part, by enumeration."""
    _check_cap(n, cap)
    c: Counter = Counter()
    for parts in iter_parts(n):
        c[parts[0] if parts else 0] += 1
    return c


def _kth_rank(parts: tuple[int, ...], k: int) -> int | None:
    if len(parts) < k or parts[k - 1] < k:
        return None
    if k == 1:
        return parts[0] - len(parts)
    # s_k = number of parts >= k
    lo, hi = 0, len(parts)
    while lo < hi:
        mid = (lo + hi) // 2
        if parts[mid] >= k:
            lo = mid + 1
        else:
            hi = mid
    return parts[k - 1] - lo


def rank_census(
    n: int,
    k: int,
    samples: int | None = None,
    seed: int = 0,
    cap: int = ENUMERATION_CAP,
) -> Counter:
    """Counts of the k-th rank over partitions whose Durfee size is >= k.

    Full enumeration by default; with ``samples`` uses that many uniform
    draws from ``seed`` instead.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    c: Counter = Counter()
    if samples is None:
        _check_cap(n, cap)
        stream: Iterable[tuple[int, ...]] = iter_parts(n)
    else:
        sampler = PartitionSampler(n)
        rng = random.Random(seed)
        stream = (sampler.draw(rng).parts for _ in range(samples))
    for parts in stream:
        v = _kth_rank(parts, k)
        if v is not None:
            c[v] += 1
    if not c:
        raise ValueError("no partitions attain rank index k")
    return c


def ks_largest_part(n: int, cap: int = ENUMERATION_CAP) -> float:
    """KS distance of the scaled largest part from the Gumbel law."""
    census = largest_part_census(n, cap)
    s = asy.scale(n)
    ls = math.log(s)
    keys = sorted(census)
    return ks_statistic([r / s - ls for r in keys], gumbel_cdf, [census[r] for r in keys])


def ranks_table(census: Counter, n: int, k: int) -> tuple[list[tuple[float, float, float]], float]:
    """Empirical vs limiting CDF of the scaled k-th rank ``t = r_k / s``.

    Returns one ``(t, empirical, theoretical)`` row per distinct rank and
    the KS statistic.
    """
    s = asy.scale(n)
    keys = sorted(census)
    total = sum(census.values())
    rows = []
    acc = 0
    for v in keys:
        acc += census[v]
        t = v / s
        rows.append((t, acc / total, rank_cdf(k, t)))
    ks = ks_statistic([v / s for v in keys], lambda t: rank_cdf(k, t),
                      [census[v] for v in keys])
    return rows, ks


def ks_rank(n: int, k: int = 1, cap: int = ENUMERATION_CAP) -> float:
    return ranks_table(rank_census(n, k, cap=cap), n, k)[1]


def rank_count_census(n: int, k: int, t: float, cap: int = ENUMERATION_CAP) -> int:
    """Exact number of partitions with k-th rank ``floor(s t)``."""
    target = math.floor(asy.scale(n) * t)
    return rank_census(n, k, cap=cap).get(target, 0)


def theorem3_census(
    n: int, x: Sequence[float], y: Sequence[float], cap: int = ENUMERATION_CAP
) -> int:
    """Partitions with ``d_i <= s(ln s + x_i)`` and ``s_i <= s(ln s + y_i)``
    for every i (missing parts count as 0)."""
    _check_cap(n, cap)
    s = asy.scale(n)
    ls = math.log(s)
    dmax = [s * (ls + xi) for xi in x]
    smax = [s * (ls + yi) for yi in y]
    K = len(x)
    hits = 0
    for parts in iter_parts(n):
        conj = conjugate_parts(parts)
        ok = True
        for i in range(K):
            d = parts[i] if i < len(parts) else 0
            c = conj[i] if i < len(conj) else 0
            if d > dmax[i] or c > smax[i]:
                ok = False
                break
        hits += ok
    return hits


def decay_curve(cap: int = ENUMERATION_CAP, n_min: int = 2) -> tuple[list[FractionEstimate], dict]:
    """Exact graphical fractions for even n in [n_min, cap] plus the fits."""
    start = n_min + (n_min % 2)
    est = [graphical_fraction_exact(n, cap) for n in range(start, cap + 1, 2)]
    fit = decay_fit([e.n for e in est], [e.value for e in est])
    return est, fit
