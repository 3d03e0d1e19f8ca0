"""Exact elements a + b*sqrt(5) of Q(sqrt 5)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ..errors import UnsupportedInstanceError


@dataclass(frozen=True, slots=True)
class QuadValue:
    a: Fraction
    b: Fraction = Fraction(0)

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    @staticmethod
    def coerce(x) -> QuadValue:
        if isinstance(x, QuadValue):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadValue(x)
        raise TypeError(f"cannot interpret {x!r} as an element of Q(sqrt 5)")

    def __add__(self, other):
        try:
            o = QuadValue.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadValue(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadValue(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QuadValue.coerce(other))

    def __rsub__(self, other):
        return QuadValue.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QuadValue.coerce(other)
        except TypeError:
            return NotImplemented
        return QuadValue(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QuadValue:
        """Galois conjugate sqrt5 -> -sqrt5."""
        return QuadValue(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def __truediv__(self, other):
        o = QuadValue.coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 5)")
        num = self * o.conjugate()
        return QuadValue(num.a / n, num.b / n)

    def __eq__(self, other):
        try:
            o = QuadValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return int(self.a)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * 5**0.5

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        x, y = 2 * self.a, 2 * self.b
        if x.denominator == y.denominator == 1 and 2 in (self.a.denominator, self.b.denominator):
            rad = ("" if abs(y) == 1 else str(abs(y))) + "√5"
            if x == 0:
                return f"{'-' if y < 0 else ''}{rad}/2"
            return f"({x}{'+' if y > 0 else '-'}{rad})/2"
        rad = ("" if abs(self.b) == 1 else str(abs(self.b))) + "√5"
        if self.a == 0:
            return f"{'-' if self.b < 0 else ''}{rad}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{rad}"


SQRT5 = QuadValue(0, 1)
GOLDEN = QuadValue(Fraction(1, 2), Fraction(1, 2))


def two_cos(d: int, m: int) -> QuadValue:
    """zeta_d^m + zeta_d^-m for zeta_d = exp(2 pi i / d), when it lies in Q(sqrt 5)."""
    if d < 1:
        raise ValueError("d must be positive")
    m %= d
    # reduce to the primitive order of zeta_d^m
    g = gcd(m, d)
    order = d // g
    j = m // g  # zeta_order^j with gcd(j, order) = 1
    if order == 1:
        return QuadValue(2)
    if order == 2:
        return QuadValue(-2)
    if order == 3:
        return QuadValue(-1)
    if order == 4:
        return QuadValue(0)
    if order == 6:
        return QuadValue(1)
    if order == 5:
        # 2cos(2pi/5) = (sqrt5 - 1)/2, 2cos(4pi/5) = (-sqrt5 - 1)/2
        return QuadValue(Fraction(-1, 2), Fraction(1, 2) if j in (1, 4) else Fraction(-1, 2))
    if order == 10:
        # 2cos(pi/5) = (1 + sqrt5)/2, 2cos(3pi/5) = (1 - sqrt5)/2
        return QuadValue(Fraction(1, 2), Fraction(1, 2) if j in (1, 9) else Fraction(-1, 2))
    raise UnsupportedInstanceError(f"2cos(2 pi {m}/{d}) does not lie in Q(sqrt 5)")
