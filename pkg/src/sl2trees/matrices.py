"""Determinant-one 2x2 matrices over the valued rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .errors import ContextMismatchError, DeterminantNotOneError
from .field import PrimeContext, RationalLike, ValuedRational, _coerce

EntryLike = Union[RationalLike, ValuedRational]


def _entry(value: EntryLike, context: PrimeContext) -> Fraction:
    if isinstance(value, ValuedRational):
        if value.context != context:
            raise ContextMismatchError(
                f"entry over p={value.context.p} in a matrix over p={context.p}"
            )
        return value.value
    return _coerce(value)


class SL2Matrix:
    """Exact 2x2 matrix with determinant 1, tied to one prime context.

    The determinant condition is enforced at construction, so products
    and inverses stay in the group without further checks; the inverse
    is just the adjugate.
    """

    __slots__ = ("a", "b", "c", "d", "context")

    def __init__(self, rows: Sequence[Sequence[EntryLike]], context: PrimeContext):
        (a, b), (c, d) = rows
        self.a = _entry(a, context)
        self.b = _entry(b, context)
        self.c = _entry(c, context)
        self.d = _entry(d, context)
        self.context = context
        if self.a * self.d - self.b * self.c != 1:
            raise DeterminantNotOneError(
                f"det = {self.a * self.d - self.b * self.c}, expected 1"
            )

    @classmethod
    def identity(cls, context: PrimeContext) -> "SL2Matrix":
        return cls(((1, 0), (0, 1)), context)

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))

    def __mul__(self, other: "SL2Matrix") -> "SL2Matrix":
        if not isinstance(other, SL2Matrix):
            return NotImplemented
        if other.context != self.context:
            raise ContextMismatchError("matrix product across different primes")
        return SL2Matrix(
            (
                (self.a * other.a + self.b * other.c,
                 self.a * other.b + self.b * other.d),
                (self.c * other.a + self.d * other.c,
                 self.c * other.b + self.d * other.d),
            ),
            self.context,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(((self.d, -self.b), (-self.c, self.a)), self.context)

    def __pow__(self, k: int) -> "SL2Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = SL2Matrix.identity(self.context)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __neg__(self) -> "SL2Matrix":
        return SL2Matrix(((-self.a, -self.b), (-self.c, -self.d)), self.context)

    def trace(self) -> ValuedRational:
        return ValuedRational(self.a + self.d, self.context)

    def is_integral(self) -> bool:
        """Whether every entry has nonnegative valuation."""
        val = self.context.valuation
        return all(val(x) >= 0 for x in (self.a, self.b, self.c, self.d))

    def is_central(self) -> bool:
        """True exactly for +identity and -identity."""
        return self.b == 0 and self.c == 0 and self.a == self.d

    def conjugated_by(self, h: "SL2Matrix") -> "SL2Matrix":
        """h * self * h^-1."""
        return h * self * h.inverse()

    def __eq__(self, other):
        if not isinstance(other, SL2Matrix):
            return NotImplemented
        return (
            self.context == other.context
            and (self.a, self.b, self.c, self.d)
            == (other.a, other.b, other.c, other.d)
        )

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d, self.context.p))

    def __repr__(self):
        return f"SL2Matrix([[{self.a}, {self.b}], [{self.c}, {self.d}]], p={self.context.p})"
