"""Exact big-integer partition counts.

``partitions_total`` uses Euler's pentagonal-number recurrence over a dense,
module-level table that can be persisted to a text cache.  Box-restricted
counts come from coefficient extraction of the Gauss binomial

    sum_n A(n, j, r) x^n = prod_{v=1..r} (1 - x^(j+v)) / (1 - x^v)

truncated at the requested degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Iterator

__all__ = [
    "CountTable",
    "CacheFormatError",
    "partitions_total",
    "partitions_table",
    "load_cache",
    "save_cache",
    "box_table",
    "box_slices",
    "count_box",
    "count_largest_exact",
    "count_exact_both",
    "log_count",
]

_P: list[int] = [1]


class CacheFormatError(ValueError):
    """Raised when a P(n) cache file is malformed."""


def _check_nonneg(**kw: int) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"{name} must be an int, got {type(v).__name__}")
        if v < 0:
            raise ValueError(f"{name} must be >= 0, got {v}")


def _extend(n: int) -> None:
    p = _P
    for m in range(len(p), n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            g2 = g1 + k
            term = p[m - g1]
            if g2 <= m:
                term += p[m - g2]
            total += term if k & 1 else -term
            k += 1
        p.append(total)


def partitions_total(n: int) -> int:
    """Number of partitions of ``n`` (exact)."""
    _check_nonneg(n=n)
    if n >= len(_P):
        _extend(n)
    return _P[n]


def partitions_table(n_max: int) -> tuple[int, ...]:
    """``(P(0), ..., P(n_max))``."""
    _check_nonneg(n_max=n_max)
    _extend(n_max)
    return tuple(_P[: n_max + 1])


def save_cache(path: str | Path, n_max: int | None = None) -> None:
    """Write the P(n) table as ``n<TAB>count`` lines, ascending n."""
    if n_max is not None:
        _extend(n_max)
    upto = len(_P) - 1 if n_max is None else n_max
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for n in range(upto + 1):
            fh.write(f"{n}\t{_P[n]}\n")


def load_cache(path: str | Path, verify: bool = True) -> int:
    """Load a P(n) cache file into the in-memory table.

    Records must start at n = 0 and ascend without gaps.  With ``verify``
    every loaded value is checked against the recurrence before use.
    Returns the largest n loaded.
    """
    values: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.endswith("\n"):
                raise CacheFormatError(f"line {lineno}: missing line terminator")
            fields = line[:-1].split("\t")
            if len(fields) != 2:
                raise CacheFormatError(f"line {lineno}: expected 2 tab-separated fields")
            try:
                n, count = int(fields[0]), int(fields[1])
            except ValueError as exc:
                raise CacheFormatError(f"line {lineno}: {exc}") from None
            if n != len(values):
                raise CacheFormatError(
                    f"line {lineno}: index {n} breaks ascending gap-free order "
                    f"(expected {len(values)})"
                )
            if count < 0:
                raise CacheFormatError(f"line {lineno}: negative count")
            values.append(count)
    if not values:
        return -1
    if verify:
        _extend(len(values) - 1)
        for n, v in enumerate(values):
            if _P[n] != v:
                raise CacheFormatError(f"record n={n} disagrees with the recurrence")
    elif len(values) > len(_P):
        _P[len(_P):] = values[len(_P):]
    return len(values) - 1


@dataclass(frozen=True)
class CountTable:
    """Coefficient table of a counting series.

    ``family`` is ``"P"`` for unrestricted counts (parameters ``()``) or
    ``"A-slice"`` for a Gauss-binomial slice (parameters ``(j, r)``).
    ``coefficients[n]`` is the count for ``n``.
    """

    family: str
    parameters: tuple[int, ...]
    coefficients: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if n < 0 or n >= len(self.coefficients):
            return 0
        return self.coefficients[n]

    def __len__(self) -> int:
        return len(self.coefficients)


def _times_one_minus(c: list[int], m: int) -> None:
    # c <- c * (1 - x^m), truncated to len(c)
    if m < len(c):
        c[m:] = [a - b for a, b in zip(c[m:], c[: len(c) - m])]


def _div_one_minus(c: list[int], m: int) -> None:
    # c <- c / (1 - x^m): running sums along each residue class mod m
    for res in range(min(m, len(c))):
        c[res::m] = list(accumulate(c[res::m]))


def box_slices(j: int, r_max: int, n_max: int) -> Iterator[tuple[int, list[int]]]:
    """Yield ``(r, coeffs)`` for r = 0..r_max, where ``coeffs[n] = A(n, j, r)``.

    Each step multiplies one more factor into the running product, so a
    full sweep over r costs the same as the single largest slice.  The
    yielded list is reused between steps; copy it if you keep it.
    """
    _check_nonneg(j=j, r_max=r_max, n_max=n_max)
    c = [1] + [0] * n_max
    yield 0, c
    for v in range(1, r_max + 1):
        _times_one_minus(c, j + v)
        _div_one_minus(c, v)
        yield v, c


def box_table(j: int, r: int, n_max: int | None = None) -> CountTable:
    """The slice ``A(., j, r)`` as a :class:`CountTable`.

    Without ``n_max`` the full polynomial of degree ``j*r`` is returned.
    """
    _check_nonneg(j=j, r=r)
    deg = j * r
    cap = deg if n_max is None else min(n_max, deg)
    # symmetric roles: iterate over the smaller of j, r
    a, b = (j, r) if r <= j else (r, j)
    coeffs: list[int] = []
    for _, coeffs in box_slices(a, b, cap):
        pass
    return CountTable("A-slice", (j, r), tuple(coeffs))


def count_box(n: int, j: int, r: int) -> int:
    """A(n, j, r): partitions of ``n`` into at most ``j`` parts, each <= ``r``."""
    _check_nonneg(n=n, j=j, r=r)
    if n == 0:
        return 1
    if n > j * r:
        return 0
    if j >= n and r >= n:
        return partitions_total(n)
    # complement inside the j x r box keeps the truncation degree small
    n = min(n, j * r - n)
    return box_table(j, r, n)[n]


def count_largest_exact(n: int, k: int, r: int) -> int:
    """B(n, k, r): largest part exactly ``r``, at most ``k`` parts."""
    _check_nonneg(n=n, k=k, r=r)
    if r < 1:
        raise ValueError("r must be >= 1")
    if r > n:
        return 0
    return count_box(n, k, r) - count_box(n, k, r - 1)


def count_exact_both(n: int, k: int, r: int) -> int:
    """C(n, k, r): largest part exactly ``r`` and exactly ``k`` parts."""
    _check_nonneg(n=n, k=k, r=r)
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if n < r + k - 1:
        return 0
    # remove the first row and column of the Ferrers diagram
    return count_box(n - r - k + 1, k - 1, r - 1)


def log_count(value: int) -> float:
    """Natural log of a positive big integer without float overflow."""
    if value <= 0:
        raise ValueError("log of non-positive count")
    return math.log(value)
