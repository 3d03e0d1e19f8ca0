"""Classification of (p, k) pairs: local inducing data, the order d, the two
congruence obstructions, admissible decomposition/inertia pairs and a
Frobenius-trace consistency statistic for projective image types.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from .arith import Fp2, is_prime, least_nonresidue, primes_up_to, v2
from .errors import InvalidInputError, InvalidWeightError, UnsupportedInstanceError
from .permrep.groups import (
    PermGroup,
    SubgroupEmbedding,
    build_group,
    conj,
    dihedral_subgroups,
    index_two_subgroup_count,
    rotation_subgroups,
    structure,
)
from .qseries import EigenSystem

EXCEPTIONAL_TAGS = ("S4", "A5")


def _check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise InvalidInputError(f"p must be a prime, got {p!r}")
    if p == 2:
        raise UnsupportedInstanceError(
            "p = 2 is outside this pipeline: the argument needs p odd, and for p = 2 "
            "the vanishing a_2 = 0 is ruled out separately for level one"
        )


def _check_weight(k: int) -> None:
    if not isinstance(k, int) or k < 2 or k % 2:
        raise InvalidWeightError(f"weight must be an even integer >= 2, got {k!r}")


def d_of(p: int, k: int) -> int:
    """Order (p+1)/gcd(k-1, p+1) of the ratio of the two inducing characters."""
    _check_odd_prime(p)
    _check_weight(k)
    return (p + 1) // gcd(k - 1, p + 1)


def is_degenerate(d: int) -> bool:
    """d = 1 gives no dihedral image (cannot happen for odd p and even k)."""
    return d == 1


@dataclass(frozen=True)
class LocalInducingData:
    """Exponents of the inducing characters on the cyclic group F_{p^2}^*.

    alpha = eps2^(k-1) * psi and alpha' = eps2'^(k-1) * psi with eps2' = eps2^p;
    ``ratio_exponent`` is the exponent of alpha'/alpha, reduced mod p^2 - 1.
    """

    p: int
    k: int
    ratio_exponent: int
    twist: bool = False

    def __post_init__(self):
        n = self.p * self.p - 1
        if not 0 <= self.ratio_exponent < n:
            raise InvalidInputError(f"ratio exponent must lie in [0, {n - 1}]")

    @classmethod
    def from_weight(cls, p: int, k: int, twist: bool = False) -> LocalInducingData:
        _check_odd_prime(p)
        _check_weight(k)
        n = p * p - 1
        psi = n // 2 if twist else 0
        alpha = (k - 1) + psi
        alpha_prime = p * (k - 1) + psi
        return cls(p, k, (alpha_prime - alpha) % n, twist)


def alpha_ratio_order(data: LocalInducingData) -> int:
    n = data.p * data.p - 1
    return n // gcd(data.ratio_exponent, n)


def hatada_admissible(p: int) -> bool:
    """True iff a_p = 0 is compatible with a_p = 1 + p mod 8, i.e. p = 7 mod 8."""
    _check_odd_prime(p)
    return p % 8 == 7


def valuation_admissible(p: int) -> bool:
    """True iff v2(p+1) <= 2, the bound forced by the admissible inertia orders."""
    _check_odd_prime(p)
    return v2(p + 1) <= 2


# ---------------------------------------------------------------------------
# decomposition / inertia pairs

REASONS = {
    "inertia-in-even-part": "inertia lies in the unique index-2 subgroup, so the quadratic subfield would be unramified at p",
    "inertia-order-odd": "the quadratic subfield is ramified at p, which needs an even inertia order",
    "decomposition-normal": "a normal decomposition group is incompatible with the inertia degree (divisibility contradiction)",
}


@dataclass(frozen=True)
class DecompositionDatum:
    """A candidate (G, D, I) with D dihedral of order 2d and I cyclic of order d."""

    tag: str
    D: SubgroupEmbedding
    I: SubgroupEmbedding
    reasons: tuple[str, ...] = ()

    @property
    def d(self) -> int:
        return self.I.order

    @property
    def admissible(self) -> bool:
        return not self.reasons

    @property
    def G(self) -> PermGroup:
        return self.D.ambient

    def describe(self) -> str:
        return f"{self.tag}: D = {self.D.label}, I = {self.I.label}"


_AMBIENT: dict[str, PermGroup] = {}


def ambient_group(tag: str) -> PermGroup:
    if tag not in EXCEPTIONAL_TAGS:
        raise InvalidInputError(f"group tag must be S4 or A5, got {tag!r}")
    if tag not in _AMBIENT:
        _AMBIENT[tag] = build_group(tag)
    return _AMBIENT[tag]


def _pair_key(G: PermGroup, D, I) -> tuple:
    return min(
        (tuple(sorted(conj(g, x) for x in D)), tuple(sorted(conj(g, x) for x in I))) for g in G.elements
    )


def gdi_candidates(tag: str, G: PermGroup | None = None) -> list[DecompositionDatum]:
    """Every (D, I) up to conjugacy, with the reasons (if any) it is excluded.

    ``G`` may be supplied to run on a differently generated copy of the group.
    """
    if G is None:
        if tag not in _CANDIDATES:
            _CANDIDATES[tag] = tuple(_candidates(tag, ambient_group(tag)))
        return list(_CANDIDATES[tag])
    return _candidates(tag, G)


_CANDIDATES: dict[str, tuple[DecompositionDatum, ...]] = {}


def _candidates(tag: str, G: PermGroup) -> list[DecompositionDatum]:
    even_part = None
    if index_two_subgroup_count(G) == 1:
        even_part = next(c.rep for c in G.subgroup_classes if c.order * 2 == G.order)
        even_part = frozenset(even_part)
    out = []
    seen = set()
    for D in dihedral_subgroups(G):
        for rot in rotation_subgroups(D.elements, G.degree):
            key = _pair_key(G, D.elements, rot)
            if key in seen:
                continue
            seen.add(key)
            I = G.embedding(rot)
            reasons = []
            if even_part is not None:
                if rot <= even_part:
                    reasons.append("inertia-in-even-part")
                if I.order % 2:
                    reasons.append("inertia-order-odd")
            if D.normal:
                reasons.append("decomposition-normal")
            out.append(DecompositionDatum(tag, D, I, tuple(reasons)))
    out.sort(key=lambda x: (x.D.order, x.D.class_id, x.I.class_id))
    return out


def gdi_admissible_pairs(tag: str, G: PermGroup | None = None) -> list[DecompositionDatum]:
    return [c for c in gdi_candidates(tag, G) if c.admissible]


def admissible_orders() -> list[int]:
    return sorted({c.d for tag in EXCEPTIONAL_TAGS for c in gdi_admissible_pairs(tag)})


@dataclass(frozen=True)
class ExclusionTrace:
    survivors: tuple[str, ...]
    excluded: dict[str, str]
    facts: dict[str, object] = field(default_factory=dict)


def exceptional_projective_options(p: int) -> ExclusionTrace:
    """Which projective images (dihedral, A4, S4, A5) survive; group facts attached."""
    _check_odd_prime(p)
    facts: dict[str, object] = {}
    for n in range(2, 7):
        facts[f"index-2 subgroups of D{2 * n}"] = index_two_subgroup_count(build_group("dihedral", n))
    a4 = build_group("A4")
    a4_dihedral = dihedral_subgroups(a4)
    facts["dihedral subgroups of A4"] = [(h.label, "normal" if h.normal else "non-normal") for h in a4_dihedral]
    unique_for_odd = all(
        (facts[f"index-2 subgroups of D{2 * n}"] == 1) == (n % 2 == 1) for n in range(2, 7)
    )
    only_normal_klein = len(a4_dihedral) == 1 and a4_dihedral[0].normal and a4_dihedral[0].order == 4
    excluded = {}
    if unique_for_odd:
        excluded["dihedral"] = (
            "D_2n has a unique index-2 subgroup exactly when n is odd, but the ramified quadratic "
            "subfield then needs even inertia order"
        )
    if only_normal_klein:
        excluded["A4"] = "the only dihedral subgroup of A4 is the normal Klein group, giving d = 2 against 3 | d"
    survivors = tuple(t for t in ("dihedral", "A4", "S4", "A5") if t not in excluded)
    return ExclusionTrace(survivors, excluded, facts)


# ---------------------------------------------------------------------------
# Theorem-1 style verdict


@dataclass(frozen=True)
class Obstruction:
    code: str
    detail: str
    reason: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


NEGATIVE_VERDICT = "no characteristic-zero a_p = 0 when the projective image is S4 or A5"


@dataclass(frozen=True)
class Theorem1Result:
    p: int
    k: int
    d: int
    v2_d: int
    v2_p_plus_1: int
    hatada_residue: int
    obstructions: tuple[Obstruction, ...]
    pairs: tuple[DecompositionDatum, ...]

    @property
    def verdict(self) -> str:
        return NEGATIVE_VERDICT if self.obstructions else "no obstruction found"


def theorem1_verdict(p: int, k: int) -> Theorem1Result:
    d = d_of(p, k)
    vp = v2(p + 1)
    obs = []
    if vp > 2:
        obs.append(
            Obstruction(
                "valuation",
                f"v2({p + 1}) = {vp} > 2",
                "admissible inertia orders are 2, 3, 4, 5, so v2(p+1) = v2(d) is at most 2",
            )
        )
    if p % 8 != 7:
        obs.append(
            Obstruction(
                "hatada",
                f"{p} ≡ {p % 8} mod 8, so {p} ≢ 7 mod 8",
                "a_p = 0 together with a_p ≡ 1 + p mod 8 forces p ≡ 7 mod 8",
            )
        )
    pairs = tuple(c for tag in EXCEPTIONAL_TAGS for c in gdi_admissible_pairs(tag) if c.d == d)
    return Theorem1Result(p, k, d, v2(d), vp, (1 + p) % 8, tuple(obs), pairs)


# ---------------------------------------------------------------------------
# projective image consistency


def order_to_u(order: int, p: int) -> list[Fp2]:
    """u = z + 1/z + 2 for z of exact multiplicative order ``order`` in F_{p^2}^*."""
    if order < 1:
        raise InvalidInputError("order must be positive")
    n = p * p - 1
    if n % order:
        raise UnsupportedInstanceError(f"no element of order {order} in F_{p}^2")
    r = least_nonresidue(p)
    gen = None
    for c1 in range(p):
        for c0 in range(p):
            x = Fp2(p, r, c0, c1)
            if x.is_zero():
                continue
            if all(x ** (n // q) != 1 for q in _prime_factors(n)):
                gen = x
                break
        if gen is not None:
            break
    out = set()
    for j in range(1, order + 1):
        if gcd(j, order) == 1:
            z = gen ** (j * n // order)
            out.add(z + z.inverse() + 2)
    return sorted(out, key=lambda v: (v.c1, v.c0))


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def s4_u_set(p: int) -> set[Fp2]:
    r = least_nonresidue(p)
    return {Fp2(p, r, v % p) for v in (0, 1, 2, 4)}


def a5_u_set(p: int) -> set[Fp2]:
    """{0, 1, 4} together with the roots of u^2 - 3u + 1 (taken in F_{p^2})."""
    r = least_nonresidue(p)
    base = {Fp2(p, r, v % p) for v in (0, 1, 4)}
    roots = {x for x in _fp2_elements(p, r) if (x * x - x * 3 + 1).is_zero()}
    return base | roots


def _fp2_elements(p: int, r: int):
    for c1 in range(p):
        for c0 in range(p):
            yield Fp2(p, r, c0, c1)


@dataclass(frozen=True)
class ConsistencyReport:
    p: int
    k: int
    ell_bound: int
    u: dict[int, Fp2] = field(repr=False)
    s4_consistent: bool
    a5_consistent: bool
    dihedral_consistent: bool

    @property
    def hits(self) -> dict[Fp2, int]:
        c = Counter(self.u.values())
        return dict(sorted(c.items(), key=lambda kv: (kv[0].c1, kv[0].c0)))

    def summary(self) -> list[str]:
        out = []
        for tag, ok in (("S4", self.s4_consistent), ("A5", self.a5_consistent), ("dihedral", self.dihedral_consistent)):
            out.append(f"{'consistent-with' if ok else 'inconsistent-with'} {tag}")
        return out


def projective_consistency(system: EigenSystem, ell_bound: int) -> ConsistencyReport:
    """u_l = a_l^2 / l^(k-1) mod p for primes l <= ell_bound, l != p.

    The flags only say whether every observed value is allowed for a given
    projective image type; they are evidence, not proof.
    """
    p, k = system.p, system.weight
    u = {}
    for ell in primes_up_to(ell_bound):
        if ell == p:
            continue
        a = system.eigenvalue(ell)
        u[ell] = a * a / pow(ell, k - 1, p)
    values = list(u.values())
    s4 = s4_u_set(p)
    a5 = a5_u_set(p)
    r = least_nonresidue(p)
    edge = {Fp2(p, r, 0), Fp2(p, r, 4 % p)}
    outside = sum(1 for v in values if v not in edge)
    return ConsistencyReport(
        p,
        k,
        ell_bound,
        u,
        all(v in s4 for v in values),
        all(v in a5 for v in values),
        2 * outside <= len(values),
    )


# ---------------------------------------------------------------------------
# per-(p, k) report


@dataclass(frozen=True)
class LocusReport:
    p: int
    k: int
    d: int
    v2_d: int
    v2_p_plus_1: int
    hatada_residue: int
    ap_zero_mod_p: bool
    admissible_pairs: tuple[DecompositionDatum, ...]
    theorem1: Theorem1Result
    eigensystems: tuple[EigenSystem, ...] | None = None
    eigensystem_note: str | None = None
    consistency: tuple[ConsistencyReport, ...] | None = None

    @property
    def degenerate(self) -> bool:
        return is_degenerate(self.d)


def classify(p: int, k: int, lbound: int | None = None, precision: int | None = None) -> LocusReport:
    """Theorem-1 verdict, a_p mod p detection and (optionally) the u-statistic."""
    from .qseries import ap_zero_detect, eigensystems_mod_p

    t1 = theorem1_verdict(p, k)
    hit = ap_zero_detect(k, p, precision)
    systems, note, cons = None, None, None
    try:
        systems = tuple(eigensystems_mod_p(k, p, max(lbound or 2, 2), precision))
    except UnsupportedInstanceError as exc:
        note = str(exc)
    if systems is not None and lbound is not None:
        cons = tuple(projective_consistency(s, lbound) for s in systems)
    return LocusReport(
        p, k, t1.d, t1.v2_d, t1.v2_p_plus_1, t1.hatada_residue, hit, t1.pairs, t1, systems, note, cons
    )
