"""Small permutation groups, enumerated completely.

Permutations are tuples of images of 0..n-1; products compose right to left,
so ``mul(g, h)`` applies ``h`` first.  All groups here have order <= 120, so
conjugacy classes, subgroups and their conjugacy classes are found by brute
force.  Canonical choices (class representatives, subgroup representatives)
are lexicographically least, which makes every output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement, product
from typing import Iterable, Sequence

from ..errors import ContainmentError, InvalidInputError

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def inv(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def conj(g: Perm, h: Perm) -> Perm:
    """g h g^-1."""
    return mul(mul(g, h), inv(g))


def perm_order(g: Perm) -> int:
    e, x, n = identity(len(g)), g, 1
    while x != e:
        x, n = mul(g, x), n + 1
    return n


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Build a permutation of {0..n-1} from 1-indexed cycles, e.g. (1, 2, 3)."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def cycles(g: Perm) -> list[tuple[int, ...]]:
    seen, out = set(), []
    for start in range(len(g)):
        if start in seen or g[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = g[x]
        out.append(tuple(cyc))
    return out


def cycle_str(g: Perm) -> str:
    cs = cycles(g)
    if not cs:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cs)


def cycle_type(g: Perm) -> tuple[int, ...]:
    lengths = sorted((len(c) for c in cycles(g)), reverse=True)
    fixed = len(g) - sum(lengths)
    return tuple(lengths) + (1,) * fixed


def sign(g: Perm) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(g)) % 2 else 1


def closure(gens: Iterable[Perm], n: int) -> frozenset[Perm]:
    gens = [g for g in gens]
    e = identity(n)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


class PermGroup:
    """A fully enumerated permutation group.

    ``tag`` records how the group was built ("S4", "A5", "dihedral", ...); it is
    informational only, structure is always recomputed from the elements.
    """

    def __init__(self, elements: Iterable[Perm], degree: int, tag: str = "", generators=None):
        elems = sorted(set(elements))
        if not elems:
            raise InvalidInputError("a group needs at least the identity")
        if any(len(g) != degree for g in elems):
            raise InvalidInputError("all permutations must have the stated degree")
        self.degree = degree
        self.elements: tuple[Perm, ...] = tuple(elems)
        self.tag = tag
        self._set = frozenset(elems)
        e = identity(degree)
        if e not in self._set:
            raise InvalidInputError("identity missing")
        for g in elems:
            if inv(g) not in self._set:
                raise InvalidInputError("not closed under inverses")
        if generators is None:
            generators = self._greedy_generators()
        self.generators: tuple[Perm, ...] = tuple(generators)
        if closure(self.generators, degree) != self._set:
            raise InvalidInputError("elements are not the closure of the generators")

    @classmethod
    def from_generators(cls, gens: Sequence[Perm], tag: str = "") -> PermGroup:
        n = len(gens[0])
        return cls(closure(gens, n), n, tag, generators=gens)

    def _greedy_generators(self) -> list[Perm]:
        gens: list[Perm] = []
        span = frozenset({identity(self.degree)})
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = closure(gens, self.degree)
        return gens

    # -- basics --------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    @property
    def element_set(self) -> frozenset[Perm]:
        return self._set

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    def __eq__(self, other) -> bool:
        return isinstance(other, PermGroup) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        name = self.tag or "PermGroup"
        return f"<{name} of order {self.order} on {self.degree} points>"

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and self._set <= other._set

    def is_abelian(self) -> bool:
        return all(mul(a, b) == mul(b, a) for a in self.generators for b in self.generators)

    # -- conjugacy -----------------------------------------------------------

    @cached_property
    def classes(self) -> tuple[tuple[Perm, ...], ...]:
        """Conjugacy classes, each sorted; ordered by their least member."""
        remaining = set(self.elements)
        out = []
        for x in self.elements:
            if x not in remaining:
                continue
            cls_ = sorted({conj(g, x) for g in self.elements})
            remaining.difference_update(cls_)
            out.append(tuple(cls_))
        out.sort(key=lambda c: c[0])
        return tuple(out)

    @cached_property
    def class_index(self) -> dict[Perm, int]:
        return {g: i for i, c in enumerate(self.classes) for g in c}

    @property
    def class_reps(self) -> tuple[Perm, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    # -- subgroups -----------------------------------------------------------

    @cached_property
    def subgroup_sets(self) -> tuple[frozenset[Perm], ...]:
        """Every subgroup generated by at most two elements."""
        found = set()
        for a, b in combinations_with_replacement(self.elements, 2):
            found.add(closure((a, b), self.degree))
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def canonical_conjugate(self, elems: Iterable[Perm]) -> tuple[Perm, ...]:
        elems = list(elems)
        return min(tuple(sorted(conj(g, h) for h in elems)) for g in self.elements)

    @cached_property
    def subgroup_classes(self) -> tuple[SubgroupClass, ...]:
        buckets: dict[tuple[Perm, ...], list[frozenset[Perm]]] = {}
        for s in self.subgroup_sets:
            buckets.setdefault(self.canonical_conjugate(s), []).append(s)
        keys = sorted(buckets, key=lambda k: (len(k), k))
        return tuple(
            SubgroupClass(self, i, rep, tuple(sorted(buckets[rep], key=sorted)))
            for i, rep in enumerate(keys)
        )

    def is_normal(self, elems: Iterable[Perm]) -> bool:
        s = frozenset(elems)
        return all(conj(g, h) in s for g in self.generators for h in s)

    def subgroup(self, elems: Iterable[Perm], tag: str = "") -> PermGroup:
        s = frozenset(elems)
        if not s <= self._set:
            raise ContainmentError("elements are not contained in the ambient group")
        return PermGroup(s, self.degree, tag)

    def embedding(self, elems: Iterable[Perm]) -> SubgroupEmbedding:
        """Wrap a subgroup (given by its elements) with structural metadata."""
        s = frozenset(elems)
        if not s <= self._set:
            raise ContainmentError("elements are not contained in the ambient group")
        if closure(s, self.degree) != s:
            raise ContainmentError("element set is not a subgroup")
        key = self.canonical_conjugate(s)
        cid = next(c.class_id for c in self.subgroup_classes if c.rep == key)
        return SubgroupEmbedding(self, tuple(sorted(s)), structure(s, self.degree), self.is_normal(s), cid)


@dataclass(frozen=True)
class SubgroupClass:
    ambient: PermGroup = field(repr=False, compare=False)
    class_id: int
    rep: tuple[Perm, ...]
    members: tuple[frozenset[Perm], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.rep)

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SubgroupEmbedding:
    """A subgroup sitting inside an ambient group, with its structural type."""

    ambient: PermGroup = field(repr=False, compare=False)
    elements: tuple[Perm, ...]
    structure: tuple[str, int]
    normal: bool
    class_id: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def group(self) -> PermGroup:
        return PermGroup(self.elements, self.ambient.degree, self.label)

    @property
    def label(self) -> str:
        kind, n = self.structure
        if kind == "dihedral":
            name = "V4" if n == 2 else f"D{2 * n}"
            if n == 2 and self.ambient.order == 24:
                name += " (normal)" if self.normal else " (non-normal)"
            return name
        if kind == "cyclic":
            return f"Z/{n}"
        return f"{kind}({n})"

    def __contains__(self, g) -> bool:
        return g in self.elements

    def generator(self) -> Perm:
        """Least element generating the subgroup (cyclic subgroups only)."""
        if self.structure[0] != "cyclic":
            raise InvalidInputError(f"{self.label} is not cyclic")
        n = self.order
        return next(g for g in self.elements if perm_order(g) == n)


def structure(elems: Iterable[Perm], degree: int) -> tuple[str, int]:
    """('cyclic', n), ('dihedral', d) for D_{2d} with d >= 2, or ('other', order)."""
    s = sorted(set(elems))
    n = len(s)
    if any(perm_order(g) == n for g in s):
        return ("cyclic", n)
    if n % 2 == 0 and n >= 4:
        d = n // 2
        for r in s:
            if perm_order(r) != d:
                continue
            rot = closure([r], degree)
            rinv = inv(r)
            if all(conj(x, r) == rinv for x in s if x not in rot):
                return ("dihedral", d)
    return ("other", n)


def rotation_subgroups(elems: Iterable[Perm], degree: int) -> list[frozenset[Perm]]:
    """Cyclic index-2 subgroups inverted by every element outside them."""
    s = sorted(set(elems))
    n = len(s)
    if n % 2:
        return []
    d = n // 2
    out = []
    for r in s:
        if perm_order(r) != d:
            continue
        rot = closure([r], degree)
        if rot in out:
            continue
        rinv = inv(r)
        if all(conj(x, r) == rinv for x in s if x not in rot):
            out.append(rot)
    return sorted(out, key=sorted)


# ---------------------------------------------------------------------------
# constructors


def _dihedral_gens(d: int) -> tuple[int, list[Perm]]:
    if d == 1:
        return 2, [from_cycles(2, (1, 2))]
    if d == 2:
        return 4, [from_cycles(4, (1, 2)), from_cycles(4, (3, 4))]
    if d <= 5:
        rot = from_cycles(d, tuple(range(1, d + 1)))
        refl = from_cycles(d, *[(i, d + 2 - i) for i in range(2, d // 2 + 2) if i < d + 2 - i])
        return d, [rot, refl]
    if d == 6:
        # D12 = S3 x Z/2
        return 5, [from_cycles(5, (1, 2, 3), (4, 5)), from_cycles(5, (1, 2))]
    raise InvalidInputError(f"dihedral(d) needs a faithful action on <= 5 points; d = {d} unsupported")


def _cyclic_gen(d: int) -> tuple[int, Perm]:
    if d == 1:
        return 1, identity(1)
    if d <= 5:
        return d, from_cycles(d, tuple(range(1, d + 1)))
    if d == 6:
        return 5, from_cycles(5, (1, 2, 3), (4, 5))
    raise InvalidInputError(f"cyclic(d) on <= 5 points needs d <= 6, got {d}")


def build_group(tag: str, d: int | None = None) -> PermGroup:
    """S4, A4, A5, S3, dihedral(d) (order 2d) or cyclic(d), enumerated."""
    t = tag.strip()
    if t == "S4":
        return PermGroup.from_generators([from_cycles(4, (1, 2)), from_cycles(4, (1, 2, 3, 4))], "S4")
    if t == "A4":
        return PermGroup.from_generators([from_cycles(4, (1, 2, 3)), from_cycles(4, (1, 2), (3, 4))], "A4")
    if t == "A5":
        return PermGroup.from_generators([from_cycles(5, (1, 2, 3)), from_cycles(5, (1, 2, 3, 4, 5))], "A5")
    if t == "S3":
        return PermGroup.from_generators([from_cycles(3, (1, 2)), from_cycles(3, (1, 2, 3))], "S3")
    if t in ("dihedral", "cyclic"):
        if d is None or d < 1:
            raise InvalidInputError(f"{t} groups need d >= 1")
        if t == "dihedral":
            n, gens = _dihedral_gens(d)
            return PermGroup.from_generators(gens, f"dihedral({d})")
        n, g = _cyclic_gen(d)
        return PermGroup.from_generators([g], f"cyclic({d})")
    raise InvalidInputError(f"unknown group tag {tag!r}")


# ---------------------------------------------------------------------------
# structural queries


def _as_elements(x, ambient: PermGroup | None = None) -> frozenset[Perm]:
    if isinstance(x, SubgroupEmbedding):
        return frozenset(x.elements)
    if isinstance(x, PermGroup):
        return x.element_set
    return frozenset(x)


def dihedral_subgroups(G: PermGroup) -> list[SubgroupEmbedding]:
    """One embedding per conjugacy class of non-cyclic dihedral subgroups."""
    out = []
    for c in G.subgroup_classes:
        st = structure(c.rep, G.degree)
        if st[0] == "dihedral":
            out.append(SubgroupEmbedding(G, c.rep, st, c.size == 1, c.class_id))
    return out


def subgroups_by_class(G: PermGroup) -> list[SubgroupEmbedding]:
    """Representatives of every conjugacy class of subgroups."""
    return [
        SubgroupEmbedding(G, c.rep, structure(c.rep, G.degree), c.size == 1, c.class_id)
        for c in G.subgroup_classes
    ]


def index_two_subgroup_count(G: PermGroup) -> int:
    """Count kernels of surjections G -> {+1, -1}.

    Each sign pattern on the generators is tested for being a homomorphism by
    propagating along the Cayley graph; consistent non-trivial patterns are
    exactly the index-two subgroups.
    """
    gens = G.generators
    kernels = set()
    for signs in product((1, -1), repeat=len(gens)):
        if all(s == 1 for s in signs):
            continue
        phi = {G.identity: 1}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, s in zip(gens, signs):
                    y = mul(g, x)
                    v = s * phi[x]
                    if y in phi:
                        if phi[y] != v:
                            ok = False
                            break
                    else:
                        phi[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            kernels.add(frozenset(x for x, v in phi.items() if v == 1))
    return len(kernels)


def square_centralizer_witness(G: PermGroup, I) -> tuple[Perm, Perm] | None:
    """Some (h, x), h in G and x in I, with h^2 x != x h^2; None if none exists."""
    elems = _as_elements(I)
    if not elems <= G.element_set:
        raise ContainmentError("I is not contained in G")
    for h in G.elements:
        h2 = mul(h, h)
        for x in sorted(elems):
            if mul(h2, x) != mul(x, h2):
                return h, x
    return None


def square_centralizer_check(G: PermGroup, I) -> bool:
    return square_centralizer_witness(G, I) is not None
