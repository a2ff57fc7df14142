"""Graphical partitions: Erdős–Gallai oracle, exact and sampled fractions,
and an exactly uniform random partition sampler."""

from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import BudgetError
from .exact import box_slices, partitions_total
from .partitions import Partition, iter_parts

__all__ = [
    "ENUMERATION_CAP",
    "FractionEstimate",
    "EnumerationCapError",
    "erdos_gallai_graphical",
    "graphical_fraction_exact",
    "graphical_fraction_sampled",
    "sample_partition_uniform",
    "PartitionSampler",
    "decay_fit",
]

ENUMERATION_CAP = 60


class EnumerationCapError(BudgetError):
    """n is too large for full enumeration."""


@dataclass(frozen=True)
class FractionEstimate:
    value: float
    stderr: float
    method: str  # "exact" | "sampled"
    n: int
    samples: int
    hits: int = 0
    total: int = 0

    def row(self) -> dict:
        return {
            "n": self.n,
            "fraction": self.value,
            "stderr": self.stderr,
            "method": self.method,
            "samples": self.samples,
        }


def erdos_gallai_graphical(degrees: Sequence[int]) -> bool:
    """Is the weakly decreasing sequence the degree sequence of a simple graph?

    Checks parity and, for every k,
    ``sum(d[:k]) <= k(k-1) + sum(min(d_i, k) for i > k)``.
    """
    d = list(degrees)
    for i, x in enumerate(d):
        if x < 0:
            raise ValueError("degrees must be nonnegative")
        if i and d[i - 1] < x:
            raise ValueError("degrees must be weakly decreasing")
    if sum(d) % 2:
        return False
    L = len(d)
    suffix = [0] * (L + 1)
    for i in range(L - 1, -1, -1):
        suffix[i] = suffix[i + 1] + d[i]
    lhs = 0
    p = L  # number of entries >= k
    for k in range(1, L + 1):
        lhs += d[k - 1]
        while p and d[p - 1] < k:
            p -= 1
        # entries k+1..p are capped at k, the rest contribute themselves
        rhs = k * (k - 1) + k * max(0, p - k) + suffix[max(p, k)]
        if lhs > rhs:
            return False
    return True


def _require_even(n: int) -> None:
    if n < 0 or n % 2:
        raise ValueError("graphical fraction defined for even n")


def graphical_fraction_exact(n: int, cap: int = ENUMERATION_CAP) -> FractionEstimate:
    """Fraction of partitions of even ``n`` that are graphical, by enumeration."""
    _require_even(n)
    if n > cap:
        raise EnumerationCapError(
            f"n={n} exceeds the enumeration cap {cap}; use sampled mode"
        )
    hits = 0
    total = 0
    for parts in iter_parts(n):
        total += 1
        if erdos_gallai_graphical(parts):
            hits += 1
    assert total == partitions_total(n)
    return FractionEstimate(hits / total, 0.0, "exact", n, 0, hits, total)


class PartitionSampler:
    """Exactly uniform sampler over partitions of ``n``.

    Holds the columns ``P(m, <= r)`` for all m <= n, r <= n (one Gauss
    binomial slice per r).  A draw picks ``u`` uniformly below
    ``P(m, <= c)`` and takes the smallest largest-part ``r`` with
    ``P(m, <= r) > u``; then recurses on ``m - r`` with cap ``r``.
    Memory is quadratic in n.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("n must be >= 0")
        self.n = n
        # cols[r][m - r] = P(m, <= r) for m >= r
        self._cols: list[tuple[int, ...]] = []
        for r, c in box_slices(n, n, n):
            self._cols.append(tuple(c[r:]))

    def count_capped(self, m: int, r: int) -> int:
        """P(m, <= r)."""
        r = min(r, m)
        return self._cols[r][m - r]

    def draw(self, rng: random.Random) -> Partition:
        parts = []
        m, c = self.n, self.n
        cols = self._cols
        while m:
            c = min(c, m)
            u = rng.randrange(cols[c][m - c])
            r = bisect_right(range(c + 1), u, key=lambda t: cols[t][m - t])
            parts.append(r)
            m -= r
            c = r
        return Partition._trusted(tuple(parts), self.n)


@lru_cache(maxsize=8)
def _sampler(n: int) -> PartitionSampler:
    return PartitionSampler(n)


def sample_partition_uniform(n: int, seed: int) -> Partition:
    """One uniformly random partition of ``n``, determined by ``seed``."""
    return _sampler(n).draw(random.Random(seed))


def graphical_fraction_sampled(n: int, samples: int, seed: int) -> FractionEstimate:
    """Monte Carlo graphical fraction with binomial standard error."""
    _require_even(n)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    sampler = _sampler(n)
    rng = random.Random(seed)
    hits = 0
    for _ in range(samples):
        if erdos_gallai_graphical(sampler.draw(rng).parts):
            hits += 1
    v = hits / samples
    return FractionEstimate(v, math.sqrt(v * (1 - v) / samples), "sampled", n, samples, hits, samples)


def decay_fit(ns: Sequence[int], fractions: Sequence[float]) -> dict:
    """Compare a decay curve with ``c n^-1/2`` and ``c ln^-1/2 n``.

    For each reference returns the best constant (log-space least squares
    with the exponent pinned at -1/2), the rms log residual, and the free
    exponent from a two-parameter fit.
    """
    ns_a = np.asarray(ns, dtype=float)
    f = np.asarray(fractions, dtype=float)
    keep = (f > 0) & (ns_a > 1)
    ns_a, f = ns_a[keep], f[keep]
    logf = np.log(f)
    out = {}
    for name, scale in (("n", np.log(ns_a)), ("ln_n", np.log(np.log(ns_a)))):
        logc = float(np.mean(logf + 0.5 * scale))
        resid = logf - (logc - 0.5 * scale)
        slope, _ = np.polyfit(scale, logf, 1)
        out[name] = {
            "c": math.exp(logc),
            "rms_log_residual": float(np.sqrt(np.mean(resid**2))),
            "fitted_exponent": float(slope),
        }
    return out
