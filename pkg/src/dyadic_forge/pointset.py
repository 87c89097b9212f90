"""Finite unions of half-open intervals with rational endpoints.

Canonical form: pairwise disjoint, sorted, no empty and no touching pieces.
These carry the signed support sets of tree systems and all exact measure
bookkeeping for level sets.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator


class PointSet:
    __slots__ = ("pieces",)

    def __init__(self, pieces: tuple[tuple[Fraction, Fraction], ...]):
        self.pieces = pieces

    @staticmethod
    def of(intervals: Iterable[tuple[Fraction, Fraction]]) -> "PointSet":
        """Normalize arbitrary intervals: drop empties, sort, merge touching."""
        items = sorted((Fraction(a), Fraction(b)) for a, b in intervals if a < b)
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return PointSet(tuple(merged))

    @staticmethod
    def empty() -> "PointSet":
        return PointSet(())

    @staticmethod
    def interval(lo, hi) -> "PointSet":
        return PointSet.of([(Fraction(lo), Fraction(hi))])

    # -- queries ---------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.pieces

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self.pieces), Fraction(0))

    def measure_between(self, lo: Fraction, hi: Fraction) -> Fraction:
        total = Fraction(0)
        for a, b in self.pieces:
            if b <= lo:
                continue
            if a >= hi:
                break
            total += min(b, hi) - max(a, lo)
        return total

    def contains_point(self, x: Fraction) -> bool:
        for a, b in self.pieces:
            if a <= x < b:
                return True
            if a > x:
                return False
        return False

    def bounding(self) -> tuple[Fraction, Fraction] | None:
        if not self.pieces:
            return None
        return self.pieces[0][0], self.pieces[-1][1]

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(self.pieces)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        return "PointSet(" + " u ".join(f"[{a},{b})" for a, b in self.pieces) + ")"

    # -- set algebra -------------------------------------------------------

    def union(self, other: "PointSet") -> "PointSet":
        return PointSet.of(list(self.pieces) + list(other.pieces))

    def intersect(self, other: "PointSet") -> "PointSet":
        out = []
        i = j = 0
        a, b = self.pieces, other.pieces
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return PointSet(tuple(out))

    def difference(self, other: "PointSet") -> "PointSet":
        out = []
        j = 0
        b = other.pieces
        for lo, hi in self.pieces:
            cur = lo
            while j < len(b) and b[j][1] <= cur:
                j += 1
            k = j
            while k < len(b) and b[k][0] < hi:
                if b[k][0] > cur:
                    out.append((cur, b[k][0]))
                cur = max(cur, b[k][1])
                k += 1
            if cur < hi:
                out.append((cur, hi))
        return PointSet.of(out)

    def contains_set(self, other: "PointSet") -> bool:
        return other.difference(self).is_empty()

    def intersects(self, other: "PointSet") -> bool:
        return not self.intersect(other).is_empty()

    def clip(self, lo: Fraction, hi: Fraction) -> "PointSet":
        return self.intersect(PointSet.interval(lo, hi))
