"""Level-one modular forms as exact truncated q-expansions.

Everything here works with Python integers (Fractions only appear in Bernoulli
numbers and in Eisenstein series whose normalization is not integral).  Hecke
data modulo p is derived from the integral Victor-Miller basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import Fp2, is_prime, least_nonresidue, primes_up_to
from .errors import InvalidInputError, InvalidWeightError, PrecisionError, UnsupportedInstanceError

__all__ = [
    "QExpansion",
    "HeckeMatrix",
    "EigenSystem",
    "bernoulli",
    "eisenstein",
    "delta",
    "cusp_dimension",
    "victor_miller_basis",
    "hecke_matrix",
    "charpoly",
    "eigensystems_mod_p",
    "ap_zero_detect",
]


# ---------------------------------------------------------------------------
# polynomial multiplication


def _kronecker(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Truncated product of two lists of non-negative ints via one big multiply."""
    if not a or not b:
        return [0] * n
    ma, mb = max(a), max(b)
    if ma == 0 or mb == 0:
        return [0] * n
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 1
    w = (bits + 7) // 8
    A = int.from_bytes(b"".join(x.to_bytes(w, "little") for x in a), "little")
    B = int.from_bytes(b"".join(x.to_bytes(w, "little") for x in b), "little")
    raw = (A * B).to_bytes(w * (len(a) + len(b)), "little")
    return [int.from_bytes(raw[i * w : (i + 1) * w], "little") for i in range(n)]


def _mul_int(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    a, b = list(a[:n]), list(b[:n])
    ap = [x if x > 0 else 0 for x in a]
    an = [-x if x < 0 else 0 for x in a]
    bp = [x if x > 0 else 0 for x in b]
    bn = [-x if x < 0 else 0 for x in b]
    parts = [_kronecker(ap, bp, n), _kronecker(an, bn, n), _kronecker(ap, bn, n), _kronecker(an, bp, n)]
    return [parts[0][i] + parts[1][i] - parts[2][i] - parts[3][i] for i in range(n)]


def _mul_generic(a: Sequence, b: Sequence, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for j in range(min(len(b), n - i)):
            out[i + j] += x * b[j]
    return out


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


# ---------------------------------------------------------------------------
# q-expansions


@dataclass(frozen=True)
class QExpansion:
    """sum_{n < N} coeffs[n] q^n, exact; ``modulus`` tags reduction mod a prime."""

    weight: int
    coeffs: tuple
    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            object.__setattr__(self, "coeffs", tuple(self._reduce_one(c) for c in self.coeffs))
        else:
            object.__setattr__(self, "coeffs", tuple(_normalize(c) for c in self.coeffs))

    def _reduce_one(self, c):
        m = self.modulus
        if isinstance(c, Fraction):
            if c.denominator % m == 0:
                raise ValueError(f"coefficient {c} is not {m}-integral")
            return c.numerator * pow(c.denominator, -1, m) % m
        return c % m

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def is_cusp(self) -> bool:
        return self.precision > 0 and self.coeffs[0] == 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def _check(self, other: QExpansion) -> None:
        if self.modulus != other.modulus:
            raise ValueError("q-expansions with different moduli cannot be combined")

    def truncate(self, n: int) -> QExpansion:
        if n > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {n}", required=n)
        return QExpansion(self.weight, self.coeffs[:n], self.modulus)

    def reduce(self, p: int) -> QExpansion:
        if self.modulus is not None and self.modulus != p:
            raise ValueError(f"already reduced modulo {self.modulus}")
        return QExpansion(self.weight, self.coeffs, p)

    def __add__(self, other: QExpansion) -> QExpansion:
        self._check(other)
        if self.weight != other.weight:
            raise ValueError("cannot add forms of different weights")
        n = min(self.precision, other.precision)
        return QExpansion(self.weight, tuple(self[i] + other[i] for i in range(n)), self.modulus)

    def __neg__(self) -> QExpansion:
        return QExpansion(self.weight, tuple(-c for c in self.coeffs), self.modulus)

    def __sub__(self, other: QExpansion) -> QExpansion:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QExpansion(self.weight, tuple(other * c for c in self.coeffs), self.modulus)
        if not isinstance(other, QExpansion):
            return NotImplemented
        self._check(other)
        n = min(self.precision, other.precision)
        if self.is_integral() and other.is_integral():
            coeffs = _mul_int(self.coeffs, other.coeffs, n)
        else:
            coeffs = _mul_generic(self.coeffs, other.coeffs, n)
        return QExpansion(self.weight + other.weight, tuple(coeffs), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> QExpansion:
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = QExpansion(0, (1,) + (0,) * (self.precision - 1), self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div(self, m: int) -> QExpansion:
        """Divide every coefficient by ``m``, insisting the result is integral."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, m)
            if r:
                raise ArithmeticError(f"coefficient {c} not divisible by {m}")
            out.append(q)
        return QExpansion(self.weight, tuple(out), self.modulus)

    def __str__(self) -> str:
        terms = []
        for n, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if n == 0 else ("q" if n == 1 else f"q^{n}")
            if n == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            elif isinstance(c, Fraction):
                terms.append(f"{'-' if c < 0 else ''}({abs(c)}){mono}")
            else:
                terms.append(f"{c}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        tag = f" (mod {self.modulus})" if self.modulus else ""
        return f"{body} + O(q^{self.precision}){tag}"


# ---------------------------------------------------------------------------
# Eisenstein series and Delta


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2 (Akiyama-Tanigawa, sign-corrected)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return -a[0] if n == 1 else a[0]


def _divisor_power_sums(e: int, n: int) -> list[int]:
    sig = [0] * n
    for d in range(1, n):
        de = d**e
        for m in range(d, n, d):
            sig[m] += de
    return sig


def _check_precision(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise PrecisionError(f"precision must be an integer >= {minimum}, got {n!r}", required=minimum)


def eisenstein(k: int, n: int) -> QExpansion:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(m) q^m, truncated at q^n."""
    if not isinstance(k, int) or k < 4 or k % 2:
        raise InvalidWeightError(f"Eisenstein series need even weight k >= 4, got {k!r}")
    _check_precision(n)
    c = Fraction(-2 * k) / bernoulli(k)
    sig = _divisor_power_sums(k - 1, n)
    coeffs = [Fraction(1)] + [c * sig[m] for m in range(1, n)]
    return QExpansion(k, tuple(coeffs))


def _euler_cubed(n: int) -> list[int]:
    # prod (1 - q^m)^3 = sum_{j>=0} (-1)^j (2j+1) q^{j(j+1)/2}   (Jacobi)
    out = [0] * n
    j = 0
    while j * (j + 1) // 2 < n:
        out[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    return out


def delta(n: int) -> QExpansion:
    """Delta = q prod (1 - q^m)^24 truncated at q^n."""
    _check_precision(n, 2)
    cube = QExpansion(0, tuple(_euler_cubed(n - 1)))
    eta24 = cube**8
    return QExpansion(12, (0,) + eta24.coeffs)


# ---------------------------------------------------------------------------
# Victor-Miller basis


def cusp_dimension(k: int) -> int:
    if k < 0 or k % 2:
        return 0
    if k < 12 or k == 14:
        return 0
    return k // 12 - 1 if k % 12 == 2 else k // 12


_BASIS_CACHE: dict[int, tuple[QExpansion, ...]] = {}


def _integral_basis(k: int, n: int) -> tuple[QExpansion, ...]:
    cached = _BASIS_CACHE.get(k)
    if cached is not None and cached[0].precision >= n:
        return tuple(f.truncate(n) for f in cached)
    d = cusp_dimension(k)
    e4, e6, dl = eisenstein(4, n), eisenstein(6, n), delta(n)
    gens = []
    for i in range(1, d + 1):
        rest = k - 12 * i
        a, b = (rest // 4, 0) if rest % 4 == 0 else ((rest - 6) // 4, 1)
        gens.append(dl**i * e4**a * e6**b)
    rows = [list(g.coeffs) for g in gens]
    # rows[i] = q^{i+1} + ...; clear the entries above the diagonal from the bottom up
    for i in range(d - 1, -1, -1):
        for j in range(i + 1, d):
            c = rows[i][j + 1]
            if c:
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[j])]
    basis = tuple(QExpansion(k, tuple(r)) for r in rows)
    for f in basis:
        if not f.is_integral():
            raise ArithmeticError("Victor-Miller basis came out non-integral")
    _BASIS_CACHE[k] = basis
    return basis


def victor_miller_basis(k: int, n: int, modulus: int | None = None) -> list[QExpansion]:
    """Echelon basis f_i = q^i + O(q^{d+1}) of S_k(SL_2(Z)), i = 1..d."""
    if not isinstance(k, int) or k % 2 or k < 0:
        raise InvalidWeightError(f"weight must be a non-negative even integer, got {k!r}")
    d = cusp_dimension(k)
    if d == 0:
        return []
    if n <= d:
        raise PrecisionError(f"precision {n} too small for dim S_{k} = {d}; need > {d}", required=d + 1)
    basis = _integral_basis(k, n)
    if modulus is not None:
        basis = tuple(f.reduce(modulus) for f in basis)
    return list(basis)


# ---------------------------------------------------------------------------
# Hecke operators


@dataclass(frozen=True)
class HeckeMatrix:
    """Row i holds the coordinates of T_p(f_i) in the Victor-Miller basis."""

    weight: int
    p: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def mod(self, m: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(x % m for x in row) for row in self.entries)

    def __matmul__(self, other: HeckeMatrix) -> tuple[tuple[int, ...], ...]:
        n = self.dim
        return tuple(
            tuple(sum(self.entries[i][t] * other.entries[t][j] for t in range(n)) for j in range(n))
            for i in range(n)
        )

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(self.dim))

    def det(self) -> int:
        return _det_int(self.entries)


def required_precision(k: int, p: int) -> int:
    return p * cusp_dimension(k) + 1


def hecke_matrix(k: int, p: int, basis: Sequence[QExpansion] | None = None) -> HeckeMatrix:
    """Matrix of T_p via b_n = a_{pn} + p^{k-1} a_{n/p} on coefficients 1..d."""
    if not is_prime(p):
        raise InvalidInputError(f"T_p needs a prime p, got {p}")
    d = cusp_dimension(k)
    need = p * d + 1
    if basis is None:
        basis = victor_miller_basis(k, need) if d else []
    if len(basis) != d:
        raise ValueError(f"basis has {len(basis)} elements, dim S_{k} = {d}")
    if d and min(f.precision for f in basis) < need:
        raise PrecisionError(
            f"T_{p} on S_{k} needs precision >= {need} (p*dim + 1), basis has {min(f.precision for f in basis)}",
            required=need,
        )
    pk = p ** (k - 1)
    rows = []
    for f in basis:
        rows.append(tuple(f[p * n] + (pk * f[n // p] if n % p == 0 else 0) for n in range(1, d + 1)))
    return HeckeMatrix(k, p, tuple(rows))


def _det_int(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i]:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def _det_mod(m: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in r] for r in m]
    n = len(a)
    det = 1
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            return 0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det = det * a[i][i] % p
        inv = pow(a[i][i], -1, p)
        for r in range(i + 1, n):
            f = a[r][i] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[i])]
    return det % p


def charpoly(m: Sequence[Sequence[int]]) -> list[int]:
    """Monic characteristic polynomial det(xI - M), coefficients low degree first."""
    n = len(m)
    M = [[Fraction(x) for x in r] for r in m]
    # Faddeev-LeVerrier
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    A = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # A <- M (A + c_{n-k+1} I)
        B = [[A[i][j] + (coeffs[n - k + 1] if i == j else 0) for j in range(n)] for i in range(n)]
        A = [[sum(M[i][t] * B[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs[n - k] = -sum(A[i][i] for i in range(n)) / k
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise ArithmeticError("characteristic polynomial of an integer matrix is not integral")
        out.append(int(c))
    return out


# ---------------------------------------------------------------------------
# eigensystems modulo p


@dataclass(frozen=True)
class EigenSystem:
    """Hecke eigenvalues a_l mod p of one eigenform reduction at (p, k).

    Values live in F_p[x]/(x^2 - nonresidue); ``residue_degree`` is 1 when
    every eigenvalue already lies in F_p.
    """

    weight: int
    p: int
    residue_degree: int
    nonresidue: int
    t2_root: Fp2
    a: dict[int, Fp2] = field(compare=False)

    @property
    def ap(self) -> Fp2:
        return self.a[self.p]

    def eigenvalue(self, ell: int) -> Fp2:
        try:
            return self.a[ell]
        except KeyError:
            raise PrecisionError(f"a_{ell} not recorded (bound {max(self.a)})", required=ell + 1) from None

    def as_pairs(self) -> dict[int, tuple[int, int]]:
        return {ell: v.pair() for ell, v in sorted(self.a.items())}


def _roots_fp2(cp: Sequence[int], p: int) -> list[Fp2]:
    """All roots (with multiplicity) of an integer polynomial in F_{p^2}."""
    r = least_nonresidue(p)
    poly = [c % p for c in cp]
    roots: list[Fp2] = []

    def deflate(poly, root):
        # synthetic division by (x - root) over F_{p^2}; poly has Fp2 coefficients
        n = len(poly) - 1
        q = [None] * n
        acc = poly[n]
        for i in range(n - 1, -1, -1):
            q[i] = acc
            acc = poly[i] + acc * root
        return q, acc

    P = [Fp2(p, r, c) for c in poly]
    candidates = [Fp2(p, r, a) for a in range(p)] + [Fp2(p, r, a, b) for b in range(1, p) for a in range(p)]
    for x in candidates:
        while len(P) > 1:
            q, rem = deflate(P, x)
            if not rem.is_zero():
                break
            roots.append(x)
            P = q
        if len(P) == 1:
            break
    return roots


def _nullspace_fp2(rows: list[list[Fp2]]) -> list[list[Fp2]]:
    """Basis of {v : rows v = 0} over F_{p^2} by Gauss-Jordan."""
    a = [list(r) for r in rows]
    nrows, ncols = len(a), len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    zero, one = a[0][0]._like(0, 0), a[0][0]._like(1, 0)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def eigensystems_mod_p(
    k: int, p: int, ell_bound: int, precision: int | None = None
) -> list[EigenSystem]:
    """Split S_k mod p into T_2-eigenlines and read off a_l for primes l <= ell_bound.

    a_p is always recorded.  Raises UnsupportedInstanceError when T_2 mod p has
    a repeated eigenvalue or an eigenvalue outside F_{p^2}.
    """
    if not is_prime(p):
        raise InvalidInputError(f"p must be prime, got {p}")
    if ell_bound < 2:
        raise InvalidInputError("ell_bound must be >= 2")
    if not isinstance(k, int) or k % 2 or k < 0:
        raise InvalidWeightError(f"weight must be a non-negative even integer, got {k!r}")
    d = cusp_dimension(k)
    if d == 0:
        return []
    top = max(ell_bound, p)
    n = max(top + 1, 2 * d + 1)
    if precision is not None:
        if precision < n:
            raise PrecisionError(f"precision {precision} below required {n}", required=n)
        n = precision
    basis = victor_miller_basis(k, n)
    t2 = hecke_matrix(k, 2, basis)
    cp = charpoly(t2.entries)
    roots = _roots_fp2(cp, p)
    if len(roots) < d:
        raise UnsupportedInstanceError(
            f"T_2 on S_{k} mod {p} has eigenvalues outside F_{p}^2; not supported"
        )
    if len(set(roots)) < len(roots):
        raise UnsupportedInstanceError(f"T_2 on S_{k} mod {p} has a repeated eigenvalue; not supported")
    r = least_nonresidue(p)
    ells = [ell for ell in primes_up_to(top)]
    systems = []
    for lam in roots:
        # left eigenvector: c M = lam c  <=>  (M^T - lam) c = 0
        rows = [
            [Fp2(p, r, t2.entries[j][i]) - (lam if i == j else 0) for j in range(d)] for i in range(d)
        ]
        ns = _nullspace_fp2(rows)
        if len(ns) != 1:
            raise UnsupportedInstanceError(f"eigenspace of T_2 at {lam} mod {p} is not a line")
        c = ns[0]
        if c[0].is_zero():
            raise UnsupportedInstanceError("eigenvector has vanishing leading coefficient mod p")
        inv = c[0].inverse()
        c = [x * inv for x in c]
        a = {}
        for ell in ells:
            acc = Fp2(p, r, 0)
            for ci, f in zip(c, basis):
                acc = acc + ci * f[ell]
            a[ell] = acc
        systems.append(EigenSystem(k, p, 1 if lam.in_prime_field() else 2, r, lam, a))
    systems.sort(key=lambda s: (s.residue_degree, s.t2_root.c1, s.t2_root.c0))
    return systems


def ap_zero_detect(k: int, p: int, precision: int | None = None) -> bool:
    """True iff some eigensystem of S_k mod p has a_p = 0, i.e. det T_p = 0 mod p."""
    if not is_prime(p):
        raise InvalidInputError(f"p must be prime, got {p}")
    if cusp_dimension(k) == 0:
        return False
    basis = victor_miller_basis(k, precision) if precision is not None else None
    t = hecke_matrix(k, p, basis)
    return _det_mod(t.entries, p) == 0


def primes_in(seq: Iterable[int]) -> list[int]:
    return [n for n in seq if is_prime(n)]
