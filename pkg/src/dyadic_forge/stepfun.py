"""Piecewise-constant functions with exact rational breakpoints.

A StepFunction is zero outside its first/last breakpoint and takes a Quad2
value on each bounded piece [b_i, b_{i+1}).  Adjacent pieces may carry equal
values; nothing is merged behind the caller's back, so outputs stay
bit-reproducible.  Integrals and norms are exact Quad2 quantities.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError
from .intervals import DyadicInterval, IntervalCollection
from .pointset import PointSet
from .quadfield import Quad2, Quad2Like


class StepFunction:
    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Sequence[Fraction], values: Sequence[Quad2Like]):
        bps = [Fraction(b) for b in breakpoints]
        vals = [Quad2.coerce(v) for v in values]
        if len(bps) != len(vals) + 1:
            raise PreconditionError("need exactly one value per bounded piece")
        for a, b in zip(bps, bps[1:]):
            if not a < b:
                raise PreconditionError("breakpoints must be strictly increasing")
        self.breakpoints = bps
        self.values = vals

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "StepFunction":
        return StepFunction([Fraction(0), Fraction(1)], [Quad2(0)])

    @staticmethod
    def indicator(lo: Fraction, hi: Fraction, value: Quad2Like = 1) -> "StepFunction":
        return StepFunction([Fraction(lo), Fraction(hi)], [value])

    @staticmethod
    def from_pieces(pieces: Iterable[tuple[Fraction, Fraction, Quad2Like]]) -> "StepFunction":
        """Build from possibly overlapping weighted pieces by summation."""
        events: dict[Fraction, Quad2] = {}
        for lo, hi, v in pieces:
            q = Quad2.coerce(v)
            events[lo] = events.get(lo, Quad2(0)) + q
            events[hi] = events.get(hi, Quad2(0)) - q
        if not events:
            return StepFunction.zero()
        bps = sorted(events)
        vals = []
        run = Quad2(0)
        for x in bps[:-1]:
            run = run + events[x]
            vals.append(run)
        return StepFunction(bps, vals)

    # -- evaluation --------------------------------------------------------

    def value_at(self, x: Fraction) -> Quad2:
        bps = self.breakpoints
        if x < bps[0] or x >= bps[-1]:
            return Quad2(0)
        lo, hi = 0, len(bps) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if bps[mid] <= x:
                lo = mid
            else:
                hi = mid
        return self.values[lo]

    def pieces(self) -> Iterable[tuple[Fraction, Fraction, Quad2]]:
        for i, v in enumerate(self.values):
            yield self.breakpoints[i], self.breakpoints[i + 1], v

    # -- algebra -------------------------------------------------------------

    def __add__(self, other: "StepFunction") -> "StepFunction":
        merged = sorted(set(self.breakpoints) | set(other.breakpoints))
        vals = []
        for a in merged[:-1]:
            vals.append(self.value_at(a) + other.value_at(a))
        return StepFunction(merged, vals)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self + other.scaled(-1)

    def scaled(self, c: Quad2Like) -> "StepFunction":
        q = Quad2.coerce(c)
        return StepFunction(self.breakpoints, [v * q for v in self.values])

    # -- exact integrals ------------------------------------------------------

    def integral(self) -> Quad2:
        total = Quad2(0)
        for lo, hi, v in self.pieces():
            total = total + v * (hi - lo)
        return total

    def l1_norm(self) -> Quad2:
        total = Quad2(0)
        for lo, hi, v in self.pieces():
            total = total + abs(v) * (hi - lo)
        return total

    def l2_norm_sq(self) -> Quad2:
        total = Quad2(0)
        for lo, hi, v in self.pieces():
            total = total + v * v * (hi - lo)
        return total

    def inner(self, other: "StepFunction") -> Quad2:
        merged = sorted(set(self.breakpoints) | set(other.breakpoints))
        total = Quad2(0)
        for a, b in zip(merged, merged[1:]):
            total = total + self.value_at(a) * other.value_at(a) * (b - a)
        return total

    def l2_norm_sq_on(self, where: PointSet) -> Quad2:
        total = Quad2(0)
        for lo, hi, v in self.pieces():
            if v:
                total = total + v * v * where.measure_between(lo, hi)
        return total

    # -- structure -----------------------------------------------------------

    def support(self) -> PointSet:
        return PointSet.of((lo, hi) for lo, hi, v in self.pieces() if v)

    def positive_set(self) -> PointSet:
        return PointSet.of((lo, hi) for lo, hi, v in self.pieces() if v.sign() > 0)

    def negative_set(self) -> PointSet:
        return PointSet.of((lo, hi) for lo, hi, v in self.pieces() if v.sign() < 0)

    def level_set_eq(self, level: Quad2Like) -> PointSet:
        q = Quad2.coerce(level)
        return PointSet.of((lo, hi) for lo, hi, v in self.pieces() if v == q)

    def max_value(self) -> Quad2:
        best = Quad2(0)
        for v in self.values:
            if v > best:
                best = v
        return best

    def min_over(self, lo: Fraction, hi: Fraction) -> tuple[Quad2, Fraction]:
        """Exact minimum of the function over [lo, hi) and a witness point."""
        if not lo < hi:
            raise PreconditionError("empty window")
        best: Quad2 | None = None
        witness = lo
        covered_to = lo
        for a, b, v in self.pieces():
            if b <= lo or a >= hi:
                continue
            if a > covered_to:
                best, witness = self._consider(best, witness, Quad2(0), covered_to)
            best, witness = self._consider(best, witness, v, max(a, lo))
            covered_to = min(b, hi)
        if covered_to < hi:
            best, witness = self._consider(best, witness, Quad2(0), covered_to)
        if best is None:
            return Quad2(0), lo
        return best, witness

    @staticmethod
    def _consider(best, witness, value, point):
        if best is None or value < best:
            return value, point
        return best, witness

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        merged = sorted(set(self.breakpoints) | set(other.breakpoints))
        return all(self.value_at(a) == other.value_at(a) for a in merged[:-1])

    def __hash__(self):
        raise TypeError("StepFunction is not hashable")

    def __repr__(self) -> str:
        inner = ", ".join(f"[{lo},{hi}):{v}" for lo, hi, v in self.pieces())
        return f"StepFunction({inner})"


def indicator_sum(collection: IntervalCollection) -> StepFunction:
    """S(x) = sum of indicators of the members, duplicates with multiplicity."""
    if not collection.items:
        return StepFunction.zero()
    return StepFunction.from_pieces((it.left, it.right, 1) for it in collection)


def indicator_of(interval: DyadicInterval) -> StepFunction:
    return StepFunction.indicator(interval.left, interval.right)


def l1_norm(f: StepFunction) -> Quad2:
    return f.l1_norm()


def l2_norm_sq(f: StepFunction) -> Quad2:
    return f.l2_norm_sq()
