"""Dyadic intervals, shifted dyadic grids, and finite interval collections.

The combinatorial atom is the half-open interval [(j-1)*2^-m, j*2^-m) indexed
by the scale exponent m and the index j.  Any two such intervals are nested or
disjoint, which every decomposition in this package leans on.  All endpoint
arithmetic is integer arithmetic at a common scale, so comparisons are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import PreconditionError


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """Half-open dyadic interval [(j-1)*2^-m, j*2^-m)."""

    m: int
    j: int

    @property
    def left(self) -> Fraction:
        return Fraction(self.j - 1, 1) * _pow2(-self.m)

    @property
    def right(self) -> Fraction:
        return Fraction(self.j, 1) * _pow2(-self.m)

    @property
    def length(self) -> Fraction:
        return _pow2(-self.m)

    def scaled_endpoints(self, scale: int) -> tuple[int, int]:
        """Integer endpoints at resolution 2^-scale; requires scale >= m."""
        if scale < self.m:
            raise ValueError("requested scale is coarser than the interval")
        shift = scale - self.m
        return (self.j - 1) << shift, self.j << shift

    def parent(self) -> "DyadicInterval":
        """The unique dyadic interval of twice the length containing this one."""
        return DyadicInterval(self.m - 1, (self.j + 1) // 2)

    def ancestor(self, m: int) -> "DyadicInterval":
        """The unique containing dyadic interval at coarser scale m <= self.m."""
        if m > self.m:
            raise ValueError("ancestor scale must not be finer")
        shift = self.m - m
        return DyadicInterval(m, ((self.j - 1) >> shift) + 1)

    def contains(self, other: "DyadicInterval") -> bool:
        if self.m > other.m:
            return False
        return other.ancestor(self.m) == self

    def contains_fraction_interval(self, lo: Fraction, hi: Fraction) -> bool:
        return self.left <= lo and hi <= self.right

    def __str__(self) -> str:
        return f"[{self.left}, {self.right})"


def _pow2(e: int) -> Fraction:
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def parent(interval: DyadicInterval) -> DyadicInterval:
    return interval.parent()


def relation(a: DyadicInterval, b: DyadicInterval) -> str:
    """Classify a pair as 'equal', 'inside' (a in b), 'contains', or 'disjoint'.

    The classification is exhaustive: dyadic intervals never partially overlap.
    """
    if a == b:
        return "equal"
    if a.m >= b.m and b.contains(a):
        return "inside"
    if a.m <= b.m and a.contains(b):
        return "contains"
    return "disjoint"


@dataclass(frozen=True)
class ShiftedGrid:
    """The grid of cells [tau + (j-1)*2^-m, tau + j*2^-m), j in Z.

    tau must be dyadic so that cell endpoints stay exactly representable.
    Two grids with equal m whose shifts differ by a multiple of the cell width
    define the same partition of the line.
    """

    m: int
    tau: Fraction = Fraction(0)

    def __post_init__(self):
        den = self.tau.denominator
        if den & (den - 1):
            raise PreconditionError(f"grid shift {self.tau} is not dyadic")

    @property
    def width(self) -> Fraction:
        return _pow2(-self.m)

    def cell_index(self, x: Fraction) -> int:
        """Index i of the cell [tau + i*w, tau + (i+1)*w) containing x."""
        return ((x - self.tau) / self.width).__floor__()

    def cell(self, i: int) -> tuple[Fraction, Fraction]:
        lo = self.tau + i * self.width
        return lo, lo + self.width

    def breakpoints(self, lo: Fraction, hi: Fraction) -> list[Fraction]:
        """All cell boundaries in [lo, hi]."""
        first = -((self.tau - lo) / self.width).__floor__()
        out = []
        x = self.tau + first * self.width
        while x <= hi:
            out.append(x)
            x += self.width
        return out

    def same_partition(self, other: "ShiftedGrid") -> bool:
        if self.m != other.m:
            return False
        return ((self.tau - other.tau) / self.width).denominator == 1


@dataclass(frozen=True)
class IntervalCollection:
    """Finite sequence of dyadic intervals; duplicates allowed unless distinct."""

    items: tuple[DyadicInterval, ...]
    distinct: bool = False

    def __post_init__(self):
        if self.distinct and len(set(self.items)) != len(self.items):
            raise PreconditionError("collection declared distinct but has duplicates")

    @staticmethod
    def of(items: Iterable[DyadicInterval], distinct: bool = False) -> "IntervalCollection":
        return IntervalCollection(tuple(items), distinct)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[DyadicInterval]:
        return iter(self.items)

    def canonical(self) -> "IntervalCollection":
        """Deterministic order: by left endpoint, then scale ascending."""
        return IntervalCollection(
            tuple(sorted(self.items, key=lambda i: (i.left, i.m, i.j))), self.distinct
        )

    def scale_range(self) -> tuple[int, int]:
        if not self.items:
            raise PreconditionError("empty collection")
        ms = [i.m for i in self.items]
        return min(ms), max(ms)


def merged_union(intervals: Sequence[DyadicInterval]) -> list[tuple[int, int, int]]:
    """Union of the intervals as disjoint integer ranges (lo, hi, scale).

    All ranges share the finest scale among the inputs.
    """
    if not intervals:
        return []
    scale = max(i.m for i in intervals)
    spans = sorted(i.scaled_endpoints(scale) for i in intervals)
    out: list[tuple[int, int, int]] = []
    cur_lo, cur_hi = spans[0]
    for lo, hi in spans[1:]:
        if lo > cur_hi:
            out.append((cur_lo, cur_hi, scale))
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    out.append((cur_lo, cur_hi, scale))
    return out


def _maximal_dyadic_blocks(lo: int, hi: int, scale: int) -> list[DyadicInterval]:
    """Greedy decomposition of [lo*2^-scale, hi*2^-scale) into maximal dyadic intervals."""
    out = []
    a = lo
    while a < hi:
        size = hi - a
        t = size.bit_length() - 1
        if a != 0:
            # alignment caps the block: 2^t must divide a
            align = (a & -a).bit_length() - 1
            t = min(t, align)
        block = 1 << t
        out.append(DyadicInterval(scale - t, (a >> t) + 1))
        a += block
    return out


def dmax(collection: IntervalCollection) -> IntervalCollection:
    """Pairwise disjoint maximal dyadic intervals with the same union.

    The result need not consist of members of the input.
    """
    if not collection.items:
        raise PreconditionError("dmax of an empty collection")
    pieces: list[DyadicInterval] = []
    for lo, hi, scale in merged_union(collection.items):
        pieces.extend(_maximal_dyadic_blocks(lo, hi, scale))
    return IntervalCollection.of(pieces).canonical()


def dmin(collection: IntervalCollection) -> IntervalCollection:
    """Members that contain no other member properly (duplicates both survive)."""
    minimal = dmin_set(collection)
    result = [it for it in collection.items if it in minimal]
    return IntervalCollection.of(result, collection.distinct).canonical()


def dmin_set(collection: IntervalCollection) -> set[DyadicInterval]:
    """Set of minimal members (ancestor-walk, O(N * scale range))."""
    if not collection.items:
        raise PreconditionError("dmin of an empty collection")
    present = set(collection.items)
    coarsest = min(i.m for i in collection.items)
    non_minimal: set[DyadicInterval] = set()
    for it in present:
        anc = it
        while anc.m > coarsest:
            anc = anc.parent()
            if anc in present:
                non_minimal.add(anc)
    return present - non_minimal


def nested_in(inner: IntervalCollection, outer: IntervalCollection) -> bool:
    """True iff every member of `inner` lies inside some minimal member of `outer`.

    Vacuously true for an empty `inner`.
    """
    if not outer.items:
        raise PreconditionError("outer collection must be nonempty")
    minimal = dmin_set(outer)
    coarsest = min(i.m for i in minimal)
    for it in inner:
        anc = it
        ok = False
        while True:
            if anc in minimal:
                ok = True
                break
            if anc.m <= coarsest:
                break
            anc = anc.parent()
        if not ok:
            return False
    return True
