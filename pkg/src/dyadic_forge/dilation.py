"""L2 bounds for combinations of dilated/translated copies of a step function.

The family F_{m,l}(x) = 2^(m/2) F(2^m x - l) is an exact isometry in L2, and
positive combinations of N distinct members obey an explicit sqrt(log N)-type
bound inherited from the indicator-sum bound.  The base function must be a
step function on a dyadic grid so every quantity stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, ResourceError
from .quadfield import Quad2, Quad2Like
from .stepfun import StepFunction
from .stopping import HAAR_BOUND_FACTOR, ceil_log2

REFINEMENT_GUARD = 10_000_000


@dataclass(frozen=True, order=True)
class DilationIndex:
    m: int
    l: int


def _require_dyadic(x: Fraction) -> None:
    den = x.denominator
    if den & (den - 1):
        raise PreconditionError(f"breakpoint {x} is not a dyadic rational")


def dilate_translate(phi: StepFunction, idx: DilationIndex) -> StepFunction:
    """Exact 2^(m/2)-normalized dilate/translate of a dyadic step function."""
    for b in phi.breakpoints:
        _require_dyadic(b)
    width = Fraction(1, 1 << idx.m) if idx.m >= 0 else Fraction(1 << -idx.m)
    bps = [(b + idx.l) * width for b in phi.breakpoints]
    scale = Quad2.sqrt2_pow(idx.m)
    return StepFunction(bps, [v * scale for v in phi.values])


@dataclass(frozen=True)
class Combination:
    """Positive combination sum(c_k * base_{m_k, l_k}) of N >= 2 distinct members.

    Coefficients may live in Q(sqrt2) so that exact unit-height probes such as
    c_k = 2^(-m_k/2) are expressible; plain rationals are the normal input.
    """

    base: StepFunction
    terms: tuple[tuple[DilationIndex, Quad2], ...]

    def __post_init__(self):
        if len(self.terms) < 2:
            raise PreconditionError("a combination needs at least two terms")
        indices = [idx for idx, _ in self.terms]
        if len(set(indices)) != len(indices):
            raise PreconditionError("dilation/translation indices must be distinct")
        for _, c in self.terms:
            if c.sign() <= 0:
                raise PreconditionError("coefficients must be positive")
        for b in self.base.breakpoints:
            _require_dyadic(b)

    @staticmethod
    def of(
        base: StepFunction, terms: Sequence[tuple[tuple[int, int], Quad2Like]]
    ) -> "Combination":
        return Combination(
            base,
            tuple((DilationIndex(m, l), Quad2.coerce(c)) for (m, l), c in terms),
        )


def combination_norm_sq(comb: Combination, *, allow_single: bool = False) -> Quad2:
    """Exact ||sum c_k base_{m_k,l_k}||_2^2 over the common breakpoint refinement."""
    n_pieces = len(comb.base.values) * len(comb.terms)
    if n_pieces > REFINEMENT_GUARD:
        raise ResourceError(f"refinement would have {n_pieces} pieces")
    if len(comb.terms) < 2 and not allow_single:
        raise PreconditionError("a combination needs at least two terms")
    events: dict[Fraction, Quad2] = {}
    for idx, c in comb.terms:
        g = dilate_translate(comb.base, idx)
        for lo, hi, v in g.pieces():
            if not v:
                continue
            cv = v * c
            events[lo] = events.get(lo, Quad2(0)) + cv
            events[hi] = events.get(hi, Quad2(0)) - cv
    xs = sorted(events)
    run = Quad2(0)
    acc = Quad2(0)
    for x, nxt in zip(xs, xs[1:]):
        run = run + events[x]
        if run:
            acc = acc + run * run * (nxt - x)
    return acc


def _grid_exponent(phi: StepFunction) -> int:
    """Smallest g with every breakpoint in 2^-g * Z (may be negative)."""
    g: int | None = None
    for b in phi.breakpoints:
        if b == 0:
            continue
        num = b.numerator
        e = b.denominator.bit_length() - 1
        v2 = (num & -num).bit_length() - 1
        need = e - v2
        g = need if g is None else max(g, need)
    if g is None:
        raise PreconditionError("degenerate breakpoints")
    return g


@dataclass(frozen=True)
class DilationBoundReport:
    n_terms: int
    lhs_sq: Quad2
    rhs_base: Quad2
    grid_exponent: int
    bound_constant: Fraction
    bound_ok: bool

    def ratio(self) -> Quad2:
        return self.lhs_sq / self.rhs_base


def dilation_bound_report(comb: Combination) -> DilationBoundReport:
    """Explicit-constant bound for the combination norm.

    With 2^-g the coarsest dyadic grid carrying the base function, the exact
    inequality verified is

        lhs_sq <= 12 * max(2, ceil(log2 N)) * 2^g * ||base||_1^2 * sum c_k^2.

    The grid factor is forced: the weighted Cauchy-Schwarz step sums |value|
    over grid cells, so the constant scales with (sum_j |xi_j|) * ||base||_1,
    which equals 2^g * ||base||_1^2.  For a base on the unit grid (g = 0) this
    is the plain sqrt(log N) bound.
    """
    l1 = comb.base.l1_norm()
    if not l1:
        raise PreconditionError("zero base function")
    n_terms = len(comb.terms)
    lhs = combination_norm_sq(comb)
    coeff_sq = Quad2(0)
    for _, c in comb.terms:
        coeff_sq = coeff_sq + c * c
    rhs_base = l1 * l1 * coeff_sq
    g = _grid_exponent(comb.base)
    grid_factor = Fraction(1 << g) if g >= 0 else Fraction(1, 1 << -g)
    const = HAAR_BOUND_FACTOR * max(2, ceil_log2(n_terms)) * grid_factor
    return DilationBoundReport(
        n_terms=n_terms,
        lhs_sq=lhs,
        rhs_base=rhs_base,
        grid_exponent=g,
        bound_constant=const,
        bound_ok=lhs <= rhs_base * const,
    )


def sharpness_combination(depth: int) -> Combination:
    """Full-tree probe: base 1_[0,1), indices (m,l) for m <= depth, c = 2^(-m/2).

    Every term is the unit-height indicator of one tree interval, so the ratio
    lhs_sq / rhs_base equals depth + 1 exactly, attaining the log order.
    """
    base = StepFunction.indicator(Fraction(0), Fraction(1))
    terms = []
    for m in range(depth + 1):
        for l in range(1 << m):
            terms.append(((m, l), Quad2.sqrt2_pow(-m)))
    return Combination.of(base, terms)
