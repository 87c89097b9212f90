"""Exact scalars in the quadratic field Q(sqrt(2)).

Half-integer powers of two are the only irrationals the toolkit ever needs
(dilation by 2^(m/2) with odd m), so values of the form a + b*sqrt(2) with
rational a, b close all the arithmetic and keep every norm computation exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction]
Quad2Like = Union[int, Fraction, "Quad2"]

_SQRT2 = 1.4142135623730951


class Quad2:
    """a + b*sqrt(2) with exact Fraction components and decidable sign."""

    __slots__ = ("a", "b")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    # -- constructors -------------------------------------------------

    @staticmethod
    def coerce(x: Quad2Like) -> "Quad2":
        if isinstance(x, Quad2):
            return x
        return Quad2(x)

    @staticmethod
    def sqrt2_pow(k: int) -> "Quad2":
        """Exact 2^(k/2): rational for even k, rational multiple of sqrt(2) otherwise."""
        if k % 2 == 0:
            return Quad2(Fraction(2) ** (k // 2))
        return Quad2(0, Fraction(2) ** ((k - 1) // 2))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: Quad2Like) -> "Quad2":
        o = Quad2.coerce(other)
        return Quad2(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other: Quad2Like) -> "Quad2":
        o = Quad2.coerce(other)
        return Quad2(self.a - o.a, self.b - o.b)

    def __rsub__(self, other: Quad2Like) -> "Quad2":
        return Quad2.coerce(other) - self

    def __mul__(self, other: Quad2Like) -> "Quad2":
        o = Quad2.coerce(other)
        return Quad2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other: Quad2Like) -> "Quad2":
        o = Quad2.coerce(other)
        n = o.a * o.a - 2 * o.b * o.b
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(2))")
        # multiply by the conjugate; n is the field norm of the divisor
        return Quad2(
            (self.a * o.a - 2 * self.b * o.b) / n,
            (self.b * o.a - self.a * o.b) / n,
        )

    def __neg__(self) -> "Quad2":
        return Quad2(-self.a, -self.b)

    def __abs__(self) -> "Quad2":
        return -self if self.sign() < 0 else self

    # -- order ----------------------------------------------------------

    def sign(self) -> int:
        """Exact sign: compares a^2 against 2b^2 when a and b disagree."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # a and b have opposite signs: a + b*sqrt(2) has the sign of the
        # dominant term, decided by a^2 vs 2b^2 (equality forces a = b = 0).
        lhs = self.a * self.a
        rhs = 2 * self.b * self.b
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, (Quad2, int, Fraction)):
            return NotImplemented
        o = Quad2.coerce(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other: Quad2Like) -> bool:
        return (self - Quad2.coerce(other)).sign() < 0

    def __le__(self, other: Quad2Like) -> bool:
        return (self - Quad2.coerce(other)).sign() <= 0

    def __gt__(self, other: Quad2Like) -> bool:
        return (self - Quad2.coerce(other)).sign() > 0

    def __ge__(self, other: Quad2Like) -> bool:
        return (self - Quad2.coerce(other)).sign() >= 0

    # -- views ------------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self!r} is irrational")
        return self.a

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * _SQRT2

    def __repr__(self) -> str:
        if self.b == 0:
            return f"Quad2({self.a})"
        return f"Quad2({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        return f"{self.a}+{self.b}*sqrt2"


ZERO = Quad2(0)
ONE = Quad2(1)
