"""Exact complex numbers with rational real and imaginary parts.

All algebraic identities checked by this package are exact, so the scalar
type never rounds: it is a pair of ``fractions.Fraction`` values under the
usual complex arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


class ComplexRational:
    """Immutable complex number with Fraction real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = cq(other)
        return ComplexRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-cq(other))

    def __rsub__(self, other):
        return cq(other) + (-self)

    def __mul__(self, other):
        other = cq(other)
        return ComplexRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = cq(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero ComplexRational")
        return ComplexRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return cq(other) / self

    def conjugate(self):
        return ComplexRational(self.re, -self.im)

    # -- predicates / conversions -------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = cq(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    # -- JSON wire format: exact rationals as strings ------------------------

    def to_json(self):
        return [str(self.re), str(self.im)]

    @classmethod
    def from_json(cls, data) -> "ComplexRational":
        if isinstance(data, str):
            return cls(Fraction(data))
        re, im = data
        return cls(Fraction(re), Fraction(im))


def cq(value, im=None) -> ComplexRational:
    """Coerce ints, Fractions, strings or pairs into a ComplexRational."""
    if im is not None:
        return ComplexRational(value, im)
    if isinstance(value, ComplexRational):
        return value
    if isinstance(value, (int, Fraction, str)):
        return ComplexRational(Fraction(value))
    if isinstance(value, tuple) and len(value) == 2:
        return ComplexRational(Fraction(value[0]), Fraction(value[1]))
    raise TypeError(f"cannot coerce {value!r} to ComplexRational")


ZERO = ComplexRational(0)
ONE = ComplexRational(1)
I = ComplexRational(0, 1)
