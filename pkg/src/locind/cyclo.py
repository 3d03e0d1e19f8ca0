"""Arithmetic in Q(zeta_d) as polynomials modulo the cyclotomic polynomial."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import UnsupportedInstanceError
from .permrep.quad import QuadValue


def _polydivmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, bi in enumerate(b):
            a[i + shift] -= c * bi
        while a and a[-1] == 0:
            a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the d-th cyclotomic polynomial."""
    poly = [-1] + [0] * (d - 1) + [1]
    for e in range(1, d):
        if d % e == 0:
            poly, rem = _polydivmod(poly, list(cyclotomic(e)))
            assert not any(rem)
    return tuple(int(c) for c in poly)


class Cyclo:
    """Element of Q(zeta_d), stored reduced modulo Phi_d."""

    __slots__ = ("d", "c")

    def __init__(self, d: int, coeffs):
        self.d = d
        phi = list(cyclotomic(d))
        _, rem = _polydivmod(list(coeffs) or [0], phi) if len(coeffs) >= len(phi) else (None, [Fraction(x) for x in coeffs])
        n = len(phi) - 1
        rem = list(rem) + [Fraction(0)] * (n - len(rem))
        self.c = tuple(rem[:n])

    @classmethod
    def zeta_power(cls, d: int, j: int) -> Cyclo:
        j %= d
        return cls(d, [0] * j + [1])

    @classmethod
    def const(cls, d: int, a) -> Cyclo:
        return cls(d, [a])

    def __add__(self, o: Cyclo) -> Cyclo:
        return Cyclo(self.d, [a + b for a, b in zip(self.c, o.c)])

    def __sub__(self, o: Cyclo) -> Cyclo:
        return Cyclo(self.d, [a - b for a, b in zip(self.c, o.c)])

    def __mul__(self, o: Cyclo) -> Cyclo:
        out = [Fraction(0)] * (len(self.c) + len(o.c))
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    out[i + j] += a * b
        return Cyclo(self.d, out)

    def scale(self, s) -> Cyclo:
        return Cyclo(self.d, [a * s for a in self.c])

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, o) -> bool:
        return isinstance(o, Cyclo) and self.d == o.d and self.c == o.c

    def to_quad(self) -> QuadValue:
        """Express as a + b*sqrt5; fails if the element is not in Q(sqrt 5)."""
        a0 = self.c[0]
        rest = Cyclo(self.d, [0] + list(self.c[1:]))
        if rest.is_zero():
            return QuadValue(a0)
        if self.d % 5:
            raise UnsupportedInstanceError("element does not lie in Q(sqrt 5)")
        z5 = self.d // 5
        # sqrt5 = 1 + 2(zeta_5 + zeta_5^-1)
        s = Cyclo.const(self.d, 1) + (Cyclo.zeta_power(self.d, z5) + Cyclo.zeta_power(self.d, -z5)).scale(2)
        idx = next(i for i in range(1, len(s.c)) if s.c[i])
        b = self.c[idx] / s.c[idx]
        diff = self - s.scale(b)
        if any(diff.c[1:]):
            raise UnsupportedInstanceError("element does not lie in Q(sqrt 5)")
        return QuadValue(diff.c[0], b)


def mat_mul(x, y):
    return [
        [x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)]
        for i in range(2)
    ]


def mat_trace(x) -> Cyclo:
    return x[0][0] + x[1][1]


def mat_inverse_trace(x) -> Cyclo:
    """tr(X^-1) = tr(X)/det(X) for 2x2 X, computed through the adjugate.

    Only used on monomial matrices, whose determinant is +-zeta^j.
    """
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    d = det.d
    for j in range(d):
        for sgn in (1, -1):
            unit = Cyclo.zeta_power(d, j).scale(sgn)
            if unit == det:
                inv = Cyclo.zeta_power(d, -j).scale(sgn)
                return mat_trace(x) * inv
    raise UnsupportedInstanceError("determinant is not a root of unity")
