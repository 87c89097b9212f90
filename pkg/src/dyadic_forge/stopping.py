"""Stopping-time decompositions of dyadic interval collections.

The engine behind the sqrt(log N) indicator bound: a greedy largest-first
acceptance pass capped at a pointwise overlap level 2n, iterated until the
rejected remainder is empty, plus the coverage cardinality bound, the
almost-orthogonality inequality, and the explicit-constant norm bound.

Everything here is exact: measures are integers at a common dyadic scale and
comparisons carry zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, PropertyViolation
from .intervals import (
    DyadicInterval,
    IntervalCollection,
    _maximal_dyadic_blocks,
    dmin_set,
    nested_in,
)
from .pointset import PointSet
from .quadfield import Quad2, Quad2Like
from .stepfun import StepFunction, indicator_sum


@dataclass(frozen=True)
class SplitResult:
    """Level-2n split: accepted overlap at most 2n, rejected sit in the saturation set."""

    accepted: IntervalCollection
    rejected: IntervalCollection
    level: int
    saturation: tuple[DyadicInterval, ...]
    saturation_measure: Fraction
    nonzero_measure: Fraction


@dataclass(frozen=True)
class LayeredDecomposition:
    layers: tuple[IntervalCollection, ...]
    level: int
    splits: tuple[SplitResult, ...]


def _sweep_levels(items: Sequence[DyadicInterval], level: int):
    """Exact overlap sweep.

    Returns (scale, saturation ranges where S == level, measures of
    {S == level} and {S != 0} as integers at 2^-scale, max overlap).
    """
    scale = max(i.m for i in items)
    events: dict[int, int] = {}
    for it in items:
        lo, hi = it.scaled_endpoints(scale)
        events[lo] = events.get(lo, 0) + 1
        events[hi] = events.get(hi, 0) - 1
    xs = sorted(events)
    run = 0
    max_run = 0
    sat_ranges: list[tuple[int, int]] = []
    sat_int = 0
    nonzero_int = 0
    for x, nxt in zip(xs, xs[1:]):
        run += events[x]
        max_run = max(max_run, run)
        width = nxt - x
        if run:
            nonzero_int += width
        if run == level:
            if sat_ranges and sat_ranges[-1][1] == x:
                sat_ranges[-1] = (sat_ranges[-1][0], nxt)
            else:
                sat_ranges.append((x, nxt))
            sat_int += width
    return scale, sat_ranges, sat_int, nonzero_int, max_run


def split_level(collection: IntervalCollection, n: int) -> SplitResult:
    """Largest-first stopping time at level 2n.

    An interval is accepted iff fewer than 2n already accepted intervals
    contain it (equal copies included); ties in length break by ascending
    (m, j), so the result is deterministic.  Requires card <= 2^n.
    """
    items = collection.items
    if not items:
        raise PreconditionError("empty collection")
    if n < 1:
        raise PreconditionError("level parameter n must be >= 1")
    if len(items) > (1 << n):
        raise PreconditionError(f"cardinality {len(items)} exceeds 2^{n}")
    level = 2 * n
    order = sorted(items, key=lambda i: (i.m, i.j))
    accepted_mult: dict[DyadicInterval, int] = {}
    coarsest: int | None = None
    accepted: list[DyadicInterval] = []
    rejected: list[DyadicInterval] = []
    for it in order:
        count = accepted_mult.get(it, 0)
        if coarsest is not None:
            anc = it
            while anc.m > coarsest:
                anc = anc.parent()
                count += accepted_mult.get(anc, 0)
                if count >= level:
                    break
        if count < level:
            accepted.append(it)
            accepted_mult[it] = accepted_mult.get(it, 0) + 1
            coarsest = it.m if coarsest is None else min(coarsest, it.m)
        else:
            rejected.append(it)

    scale, sat_ranges, sat_int, nonzero_int, _ = _sweep_levels(accepted, level)
    sat_intervals: list[DyadicInterval] = []
    for lo, hi in sat_ranges:
        sat_intervals.extend(_maximal_dyadic_blocks(lo, hi, scale))
    unit = Fraction(1, 1 << scale) if scale >= 0 else Fraction(1 << -scale)
    return SplitResult(
        accepted=IntervalCollection.of(accepted).canonical(),
        rejected=IntervalCollection.of(rejected).canonical(),
        level=level,
        saturation=tuple(sat_intervals),
        saturation_measure=sat_int * unit,
        nonzero_measure=nonzero_int * unit,
    )


def verify_split(collection: IntervalCollection, n: int, result: SplitResult) -> None:
    """Exact check of every split invariant; raises PropertyViolation on failure."""
    level = 2 * n
    got = sorted(list(result.accepted) + list(result.rejected))
    if got != sorted(collection.items):
        raise PropertyViolation("accepted/rejected do not partition the input multiset")
    if result.accepted.items:
        _, _, sat_int, nonzero_int, max_run = _sweep_levels(result.accepted.items, level)
        if max_run > level:
            raise PropertyViolation(f"accepted overlap {max_run} exceeds level {level}")
        # measure bound: |{S = 2n}| <= 2^(1-n) * |{S != 0}|
        if sat_int << (n - 1) > nonzero_int:
            raise PropertyViolation("saturation measure bound failed")
    if result.rejected.items:
        if not nested_in(result.rejected, result.accepted):
            raise PropertyViolation("rejected intervals not nested in minimal accepted")
        sat = PointSet.of((s.left, s.right) for s in result.saturation)
        for it in result.rejected:
            if not sat.contains_set(PointSet.interval(it.left, it.right)):
                raise PropertyViolation(f"rejected interval {it} escapes the saturation set")


def iterate_decomposition(collection: IntervalCollection, n: int) -> LayeredDecomposition:
    """Iterate the level-2n split on the rejected remainder until it empties."""
    layers: list[IntervalCollection] = []
    splits: list[SplitResult] = []
    remaining = collection
    while remaining.items:
        res = split_level(remaining, n)
        layers.append(res.accepted)
        splits.append(res)
        remaining = res.rejected
    return LayeredDecomposition(tuple(layers), 2 * n, tuple(splits))


def verify_decomposition(
    collection: IntervalCollection, n: int, deco: LayeredDecomposition
) -> None:
    """Exact check of the layer invariants (nesting, overlap cap, saturation
    containment, and the per-minimal-interval measure bound)."""
    level = 2 * n
    got = sorted(it for layer in deco.layers for it in layer)
    if got != sorted(collection.items):
        raise PropertyViolation("layers do not partition the input multiset")
    for k, layer in enumerate(deco.layers):
        _, _, sat_int, _, max_run = _sweep_levels(layer.items, level)
        if max_run > level:
            raise PropertyViolation(f"layer {k + 1} overlap {max_run} exceeds {level}")
        if k >= 1:
            prev = deco.layers[k - 1]
            if not nested_in(layer, prev):
                raise PropertyViolation(f"layer {k + 1} not nested in layer {k}")
            sat_prev = PointSet.of((s.left, s.right) for s in deco.splits[k - 1].saturation)
            for it in layer:
                if not sat_prev.contains_set(PointSet.interval(it.left, it.right)):
                    raise PropertyViolation(
                        f"layer {k + 1} interval {it} escapes the previous saturation set"
                    )
            # per-minimal-interval bound: |{S_k = 2n} /\ J| <= 2^(1-n) |J|
            sat_k = PointSet.of((s.left, s.right) for s in deco.splits[k].saturation)
            for j_int in dmin_set(prev):
                inside = sat_k.measure_between(j_int.left, j_int.right)
                if inside * (1 << (n - 1)) > j_int.length:
                    raise PropertyViolation(
                        f"localized saturation bound failed on {j_int} at layer {k + 1}"
                    )


def layer_telescoping_holds(
    collection: IntervalCollection, deco: LayeredDecomposition
) -> bool:
    """Sum of layer indicator functions equals the input indicator pointwise."""
    total = indicator_sum(deco.layers[0]) if deco.layers else StepFunction.zero()
    for layer in deco.layers[1:]:
        total = total + indicator_sum(layer)
    return total == indicator_sum(collection)


@dataclass(frozen=True)
class CoverageReport:
    covers: bool
    min_coverage: int
    witness: Fraction
    cardinality: int
    lower_bound: int
    holds: bool


def coverage_card_check(
    collection: IntervalCollection, outer: DyadicInterval, l: int
) -> CoverageReport:
    """Cardinality lower bound 2^l - 1 under l-fold coverage of `outer`.

    Requires every member to sit inside `outer`; reports the exact minimum of
    the overlap count over `outer` with a witness point.
    """
    if not collection.items:
        raise PreconditionError("empty collection")
    if l < 1:
        raise PreconditionError("coverage level must be >= 1")
    for it in collection:
        if not outer.contains(it):
            raise PreconditionError(f"{it} is not contained in {outer}")
    s = indicator_sum(collection)
    mn, witness = s.min_over(outer.left, outer.right)
    min_cov = int(mn.as_fraction())
    covers = min_cov >= l
    bound = (1 << l) - 1
    holds = (not covers) or len(collection) >= bound
    return CoverageReport(covers, min_cov, witness, len(collection), bound, holds)


def minimal_coverage_family(outer: DyadicInterval, l: int) -> IntervalCollection:
    """All dyadic subintervals of `outer` with length >= 2^(1-l)*|outer|.

    This family covers the interval l-fold with exactly 2^l - 1 members.
    """
    items = []
    for depth in range(l):
        base = DyadicInterval(outer.m + depth, ((outer.j - 1) << depth) + 1)
        for i in range(1 << depth):
            items.append(DyadicInterval(base.m, base.j + i))
    return IntervalCollection.of(items)


@dataclass(frozen=True)
class OrthogonalityReport:
    hypotheses_hold: bool
    violation: tuple[int, int, str] | None
    lhs_sq: Quad2
    rhs_sq: Quad2
    inequality_ok: bool


def almost_orthogonality_check(
    funcs: Sequence[StepFunction], sets: Sequence[PointSet]
) -> OrthogonalityReport:
    """Nested-set almost-orthogonality: if supp f_k lies in E_k, the E_k
    decrease, and each ||f_k||^2 halves from E_m to E_(m+1) for k <= m,
    then ||sum f_k||^2 <= 3 * sum ||f_k||^2 (checked exactly).

    Hypothesis failures are reported structurally, not raised.
    """
    if len(funcs) != len(sets) or not funcs:
        raise PreconditionError("need equally many functions and sets, at least one")
    n = len(funcs)
    violation = None
    for k in range(n - 1):
        if not sets[k].contains_set(sets[k + 1]):
            violation = (k + 1, k + 2, "sets not nested")
            break
    if violation is None:
        for k, f in enumerate(funcs):
            if not sets[k].contains_set(f.support()):
                violation = (k + 1, k + 1, "support escapes its set")
                break
    if violation is None:
        for k in range(n):
            for m in range(k, n - 1):
                big = funcs[k].l2_norm_sq_on(sets[m])
                small = funcs[k].l2_norm_sq_on(sets[m + 1])
                if 2 * small > big:
                    violation = (k + 1, m + 1, "halving failed")
                    break
            if violation is not None:
                break
    total = funcs[0]
    for f in funcs[1:]:
        total = total + f
    lhs = total.l2_norm_sq()
    rhs = Quad2(0)
    for f in funcs:
        rhs = rhs + f.l2_norm_sq()
    rhs = rhs * 3
    return OrthogonalityReport(
        hypotheses_hold=violation is None,
        violation=violation,
        lhs_sq=lhs,
        rhs_sq=rhs,
        inequality_ok=lhs <= rhs,
    )


def ceil_log2(n: int) -> int:
    if n < 1:
        raise PreconditionError("ceil_log2 needs a positive integer")
    return (n - 1).bit_length()


# Explicit constant for the indicator-sum norm bound, extracted from the proof
# chain: the even/odd split plus almost-orthogonality give a factor 6, and the
# pointwise overlap cap 2n gives 2n via Cauchy-Schwarz, so 12*n with
# n = max(2, ceil(log2 N)).
HAAR_BOUND_FACTOR = 12


@dataclass(frozen=True)
class HaarBoundReport:
    n_terms: int
    lhs_sq: Quad2
    rhs_base: Quad2
    bound_constant: int
    bound_ok: bool

    def ratio(self) -> Quad2:
        return self.lhs_sq / self.rhs_base


def weighted_indicator_l2_sq(
    items: Sequence[DyadicInterval], coeffs: Sequence[Quad2]
) -> Quad2:
    """Exact squared L2 norm of sum(c_j * indicator of interval_j)."""
    scale = max(i.m for i in items)
    events: dict[int, Quad2] = {}
    for it, c in zip(items, coeffs):
        lo, hi = it.scaled_endpoints(scale)
        events[lo] = events.get(lo, Quad2(0)) + c
        events[hi] = events.get(hi, Quad2(0)) - c
    xs = sorted(events)
    run = Quad2(0)
    acc = Quad2(0)
    for x, nxt in zip(xs, xs[1:]):
        run = run + events[x]
        if run:
            acc = acc + run * run * (nxt - x)
    unit = Fraction(1, 1 << scale) if scale >= 0 else Fraction(1 << -scale)
    return acc * unit


def haar_bound_report(
    collection: IntervalCollection, coeffs: Sequence[Quad2Like]
) -> HaarBoundReport:
    """Explicit-constant norm bound for positive combinations of indicators:

        ||sum c_j 1_I||_2^2  <=  12 * max(2, ceil(log2 N)) * sum c_j^2 |I_j|

    Duplicated intervals are rejected: repeating one interval N times makes
    the left side grow like N^2 and the bound false.
    """
    items = collection.items
    n_terms = len(items)
    if n_terms < 2:
        raise PreconditionError("need at least two intervals")
    if len(set(items)) != n_terms:
        raise PreconditionError("duplicate intervals break the bound")
    if len(coeffs) != n_terms:
        raise PreconditionError("need one coefficient per interval")
    qs = [Quad2.coerce(c) for c in coeffs]
    for c in qs:
        if c.sign() <= 0:
            raise PreconditionError("coefficients must be positive")
    lhs = weighted_indicator_l2_sq(items, qs)
    rhs = Quad2(0)
    for it, c in zip(items, qs):
        rhs = rhs + c * c * it.length
    const = HAAR_BOUND_FACTOR * max(2, ceil_log2(n_terms))
    return HaarBoundReport(
        n_terms=n_terms,
        lhs_sq=lhs,
        rhs_base=rhs,
        bound_constant=const,
        bound_ok=lhs <= rhs * const,
    )


def full_tree_collection(depth: int) -> IntervalCollection:
    """All dyadic subintervals of [0,1) down to scale `depth` (2^(depth+1)-1 members)."""
    items = [
        DyadicInterval(m, j) for m in range(depth + 1) for j in range(1, (1 << m) + 1)
    ]
    return IntervalCollection.of(items, distinct=True)
