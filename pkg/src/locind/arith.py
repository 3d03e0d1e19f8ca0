"""Small integer helpers and the quadratic extension F_{p^2} = F_p[x]/(x^2 - r)."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for f in range(3, isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n + 1) if sieve[i]]


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v2(0) is infinite")
    n = abs(n)
    return (n & -n).bit_length() - 1


def least_nonresidue(p: int) -> int:
    """Least positive quadratic non-residue mod an odd prime ``p``.

    For p = 2 there is no non-residue; F_4 is then realized as F_2[x]/(x^2 + x + 1),
    which we signal with r = -1 (see ``Fp2``).
    """
    if p == 2:
        return -1
    for r in range(2, p):
        if pow(r, (p - 1) // 2, p) == p - 1:
            return r
    raise ValueError(f"no non-residue mod {p}")


@dataclass(frozen=True, slots=True)
class Fp2:
    """Element c0 + c1*x of F_p[x]/(x^2 - r).

    For p = 2 (r = -1 sentinel) the modulus is x^2 + x + 1 instead.
    """

    p: int
    r: int
    c0: int
    c1: int = 0

    @classmethod
    def field(cls, p: int) -> tuple[int, int]:
        return p, least_nonresidue(p)

    @classmethod
    def of(cls, p: int, c0: int, c1: int = 0, r: int | None = None) -> Fp2:
        if r is None:
            r = least_nonresidue(p)
        return cls(p, r, c0 % p, c1 % p)

    def _like(self, c0: int, c1: int) -> Fp2:
        return Fp2(self.p, self.r, c0 % self.p, c1 % self.p)

    def _coerce(self, other) -> Fp2:
        if isinstance(other, Fp2):
            if other.p != self.p:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self._like(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._like(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.c0, -self.c1)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self._like(self.c0 - o.c0, self.c1 - o.c1)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.c0, self.c1, o.c0, o.c1
        if self.r == -1:
            # x^2 = x + 1 in F_2[x]/(x^2+x+1)
            return self._like(a * c + b * d, a * d + b * c + b * d)
        return self._like(a * c + self.r * b * d, a * d + b * c)

    __rmul__ = __mul__

    def conj(self) -> Fp2:
        """Frobenius x -> x^p."""
        return self ** self.p

    def norm(self) -> int:
        n = self * self.conj()
        assert n.c1 == 0
        return n.c0

    def inverse(self) -> Fp2:
        if self.is_zero():
            raise ZeroDivisionError("inverse of 0 in F_p^2")
        # a^(p^2 - 2) = a^-1 for a in F_{p^2}^*
        return self ** (self.p * self.p - 2)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, e: int) -> Fp2:
        if e < 0:
            return self.inverse() ** (-e)
        result = self._like(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0

    def in_prime_field(self) -> bool:
        return self.c1 == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.c1 == 0 and (self.c0 - other) % self.p == 0
        if isinstance(other, Fp2):
            return (self.p, self.c0, self.c1) == (other.p, other.c0, other.c1)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.p, self.c0, self.c1))

    def pair(self) -> tuple[int, int]:
        return (self.c0, self.c1)

    def __str__(self) -> str:
        if self.c1 == 0:
            return str(self.c0)
        return f"({self.c0}, {self.c1}; nonresidue {self.r})"


def all_fp2(p: int) -> list[Fp2]:
    r = least_nonresidue(p)
    return [Fp2(p, r, a, b) for b in range(p) for a in range(p)]
