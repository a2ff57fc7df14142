"""Independent reference implementations used only by the tests."""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import mpmath


def brute_partitions(n: int, cap: int | None = None):
    """All partitions of n with parts <= cap, as tuples (order unspecified)."""
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in brute_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def shape_histogram(n: int) -> Counter:
    """Counter keyed by (number of parts, largest part)."""
    return Counter((len(p), p[0] if p else 0) for p in brute_partitions(n))


def brute_box(n: int, j: int, r: int) -> int:
    return sum(c for (length, top), c in shape_histogram(n).items() if length <= j and top <= r)


def takacs_table(n_max: int, j_max: int, r_max: int) -> list[list[list[int]]]:
    """A[r][j][n] from A(n,j,r) = A(n-r, j-1, r) + A(n, j, r-1)."""
    A = [[[0] * (n_max + 1) for _ in range(j_max + 1)] for _ in range(r_max + 1)]
    for r in range(r_max + 1):
        for j in range(j_max + 1):
            row = A[r][j]
            row[0] = 1
            if r == 0 or j == 0:
                continue
            below = A[r - 1][j]
            left = A[r][j - 1]
            for n in range(1, n_max + 1):
                row[n] = below[n] + (left[n - r] if n >= r else 0)
    return A


def yk_quad(k: int, x: float) -> float:
    """Y_k(x) as the integral of exp(-e^-v - k v) / Gamma(k) over (-inf, x]."""
    with mpmath.workdps(30):
        f = lambda v: mpmath.exp(-mpmath.exp(-v) - k * v) / mpmath.gamma(k)
        # below v = -7 the integrand is under e^-1000
        lo = min(x - 1, -7)
        pts = [lo] + [v for v in (-3, 0, 3, 10) if lo < v < x] + [x]
        return float(mpmath.quad(f, pts))


def normal_tail_quad(x: float) -> float:
    with mpmath.workdps(30):
        return float(mpmath.quad(lambda t: mpmath.npdf(t), [x, mpmath.inf]))


def trigamma(k: int) -> float:
    return float(mpmath.psi(1, k))


def rank_pdf_mp(k: int, t: float) -> float:
    with mpmath.workdps(30):
        t = mpmath.mpf(t)
        return float(
            mpmath.gamma(2 * k) / mpmath.gamma(k) ** 2 * mpmath.exp(-k * t) / (1 + mpmath.exp(-t)) ** (2 * k)
        )
