"""Partitions as values: enumeration, conjugation, ranks, dominance."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Partition",
    "RankVector",
    "iter_parts",
    "enumerate_partitions",
    "conjugate",
    "conjugate_parts",
    "successive_ranks",
    "nash_williams_graphical",
    "dominates",
    "parse_partition",
    "format_partition",
]


def conjugate_parts(parts: Sequence[int]) -> tuple[int, ...]:
    """Transpose of a weakly decreasing part sequence."""
    if not parts:
        return ()
    out = []
    k = len(parts)
    for i in range(1, parts[0] + 1):
        while parts[k - 1] < i:
            k -= 1
        out.append(k)
    return tuple(out)


class Partition:
    """An immutable integer partition.

    ``d(k)`` is the k-th largest part and ``s(k)`` the number of parts
    ``>= k`` (both 0 past the end).  The conjugate is built on first use.
    """

    __slots__ = ("parts", "n", "_conj")

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or isinstance(p, bool) or p < 1:
                raise ValueError(f"parts must be positive integers, got {p!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {list(parts)}")
        self.parts = parts
        self.n = sum(parts)
        self._conj: tuple[int, ...] | None = None

    @classmethod
    def _trusted(cls, parts: tuple[int, ...], n: int) -> "Partition":
        obj = cls.__new__(cls)
        obj.parts = parts
        obj.n = n
        obj._conj = None
        return obj

    @property
    def conjugate_parts(self) -> tuple[int, ...]:
        if self._conj is None:
            self._conj = conjugate_parts(self.parts)
        return self._conj

    def d(self, k: int) -> int:
        return self.parts[k - 1] if k <= len(self.parts) else 0

    def s(self, k: int) -> int:
        c = self.conjugate_parts
        return c[k - 1] if k <= len(c) else 0

    @property
    def durfee(self) -> int:
        parts = self.parts
        k = 0
        while k < len(parts) and parts[k] >= k + 1:
            k += 1
        return k

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Partition):
            return self.parts == other.parts
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    def __str__(self) -> str:
        return format_partition(self.parts)


@dataclass(frozen=True)
class RankVector:
    ranks: tuple[int, ...]
    durfee: int


_LITERAL = re.compile(r"^\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*$")


def parse_partition(text: str) -> Partition:
    """Parse a literal such as ``[3,1]`` or ``[]``."""
    if not _LITERAL.match(text):
        raise ValueError(f"not a partition literal: {text!r}")
    body = text.strip()[1:-1].strip()
    if not body:
        return Partition()
    return Partition(int(tok) for tok in body.split(","))


def format_partition(parts: Iterable[int]) -> str:
    return "[" + ",".join(str(p) for p in parts) + "]"


def iter_parts(
    n: int, max_parts: int | None = None, max_part: int | None = None
) -> Iterator[tuple[int, ...]]:
    """Yield part tuples of every partition of ``n`` in reverse-lex order.

    Successor step: take the rightmost part that can shrink, decrement it,
    and refill the tail greedily.  Bounds are respected by skipping to the
    next position to the left when the greedy refill would need too many
    parts.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    L = n if max_parts is None else max_parts
    cap = n if max_part is None else min(max_part, n)
    if n == 0:
        yield ()
        return
    if cap < 1 or L < 1 or cap * L < n:
        return
    q, rem = divmod(n, cap)
    a = [cap] * q + ([rem] if rem else [])
    while True:
        yield tuple(a)
        # prefix sums let us evaluate refill feasibility at each position
        i = len(a) - 1
        tail = 0
        while True:
            while i >= 0 and a[i] == 1:
                tail += 1
                i -= 1
            if i < 0:
                return
            v = a[i] - 1
            R = tail + 1
            need = -(-R // v)
            if i + 1 + need <= L:
                break
            tail += a[i]
            i -= 1
        del a[i:]
        a.append(v)
        q, rem = divmod(R, v)
        a.extend([v] * q)
        if rem:
            a.append(rem)


def enumerate_partitions(
    n: int, max_parts: int | None = None, max_part: int | None = None
) -> Iterator[Partition]:
    """Every partition of ``n`` within the bounds, once, in reverse-lex order."""
    for parts in iter_parts(n, max_parts, max_part):
        yield Partition._trusted(parts, n)


def conjugate(p: Partition) -> Partition:
    return Partition._trusted(p.conjugate_parts, p.n)


def successive_ranks(p: Partition) -> RankVector:
    """Successive ranks ``d_k - s_k`` for k up to the Durfee size."""
    if p.n == 0:
        raise ValueError("successive ranks are undefined for n = 0")
    K = p.durfee
    conj = p.conjugate_parts
    return RankVector(tuple(p.parts[k] - conj[k] for k in range(K)), K)


def nash_williams_graphical(p: Partition) -> bool:
    """Graphicality via prefix sums of successive ranks.

    The empty partition counts as graphical (the empty graph).
    """
    if p.n == 0:
        return True
    if p.n % 2:
        return False
    parts, conj = p.parts, p.conjugate_parts
    total = 0
    k = 0
    while k < len(parts) and parts[k] > k:
        total += parts[k] - conj[k]
        k += 1
        if total > -k:
            return False
    return True


def dominates(p: Partition, q: Partition) -> bool:
    """True if every prefix sum of ``p`` is >= that of ``q``."""
    if p.n != q.n:
        raise ValueError("dominance requires equal weight")
    sp = sq = 0
    for i in range(max(len(p.parts), len(q.parts))):
        sp += p.parts[i] if i < len(p.parts) else 0
        sq += q.parts[i] if i < len(q.parts) else 0
        if sp < sq:
            return False
    return True
