"""Exact character theory for S4, A5 and small dihedral groups.

Character values live in Q(sqrt 5) (``QuadValue``), which covers every group
whose irreducible characters are real with values in that field: S4, A5,
dihedral groups D_{2d} with d <= 6, and cyclic groups of order <= 2.  Groups
with non-real characters (A4, cyclic groups of order >= 3) have no table here,
but class functions on them (indicators, restrictions) still work.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import ContainmentError, GroupMismatchError, NotACharacterError, UnsupportedInstanceError
from .groups import (
    Perm,
    PermGroup,
    SubgroupEmbedding,
    cycle_str,
    cycle_type,
    from_cycles,
    inv,
    mul,
    perm_order,
    rotation_subgroups,
    sign,
    structure,
)
from .quad import QuadValue, two_cos


def _group_of(x) -> PermGroup:
    if isinstance(x, SubgroupEmbedding):
        return x.group
    if isinstance(x, PermGroup):
        return x
    raise TypeError(f"expected a group, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """One exact value per conjugacy class of ``group`` (in class order)."""

    group: PermGroup = field(repr=False)
    values: tuple[QuadValue, ...]
    label: str | None = None

    def __post_init__(self):
        vals = tuple(QuadValue.coerce(v) for v in self.values)
        if len(vals) != len(self.group.classes):
            raise ValueError("need exactly one value per conjugacy class")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, G: PermGroup, f, label: str | None = None) -> ClassFunction:
        return cls(G, tuple(QuadValue.coerce(f(rep)) for rep in G.class_reps), label)

    @classmethod
    def indicator(cls, G: PermGroup, class_idx: int) -> ClassFunction:
        vals = [0] * len(G.classes)
        vals[class_idx] = 1
        return cls(G, tuple(vals), f"1[{cycle_str(G.class_reps[class_idx])}]")

    @classmethod
    def trivial(cls, G: PermGroup) -> ClassFunction:
        return cls(G, (1,) * len(G.classes), "triv")

    def __call__(self, g: Perm) -> QuadValue:
        return self.values[self.group.class_index[g]]

    @property
    def degree(self) -> QuadValue:
        return self.values[0]

    def named(self, label: str | None) -> ClassFunction:
        return ClassFunction(self.group, self.values, label)

    def _check(self, other: ClassFunction) -> None:
        if self.group != other.group:
            raise GroupMismatchError("class functions live on different groups")

    def __add__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        self._check(other)
        return ClassFunction(self.group, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        self._check(other)
        return ClassFunction(self.group, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self):
        return ClassFunction(self.group, tuple(-a for a in self.values))

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, tuple(a * b for a, b in zip(self.values, other.values)))
        if isinstance(other, (int, Fraction, QuadValue)):
            return ClassFunction(self.group, tuple(a * other for a in self.values))
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.group == other.group and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __str__(self) -> str:
        body = ", ".join(str(v) for v in self.values)
        return f"{self.label or 'chi'}: [{body}]"


# ---------------------------------------------------------------------------
# tables


def _fixed_points(g: Perm) -> int:
    return sum(1 for i, gi in enumerate(g) if i == gi)


def _s4_table(G: PermGroup) -> list[ClassFunction]:
    chi5 = {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0}
    return [
        ClassFunction.from_function(G, lambda g: 1, "triv"),
        ClassFunction.from_function(G, sign, "sgn"),
        ClassFunction.from_function(G, lambda g: chi5[cycle_type(g)], "chi5"),
        ClassFunction.from_function(G, lambda g: _fixed_points(g) - 1, "chi_perp"),
        ClassFunction.from_function(G, lambda g: sign(g) * (_fixed_points(g) - 1), "chi_perp_sgn"),
    ]


def _a5_table(G: PermGroup) -> list[ClassFunction]:
    phi = QuadValue(Fraction(1, 2), Fraction(1, 2))
    five = G.class_index[from_cycles(5, (1, 2, 3, 4, 5))]
    psi = phi.conjugate()

    def phi3(g, swap=False):
        ct = cycle_type(g)
        if ct == (1, 1, 1, 1, 1):
            return 3
        if ct == (2, 2, 1):
            return -1
        if ct == (3, 1, 1):
            return 0
        same = G.class_index[g] == five
        return (phi if same else psi) if not swap else (psi if same else phi)

    phi5 = {(1, 1, 1, 1, 1): 5, (2, 2, 1): 1, (3, 1, 1): -1, (5,): 0}
    return [
        ClassFunction.from_function(G, lambda g: 1, "triv"),
        ClassFunction.from_function(G, phi3, "phi3"),
        ClassFunction.from_function(G, lambda g: phi3(g, True), "phi3'"),
        ClassFunction.from_function(G, lambda g: _fixed_points(g) - 1, "phi4"),
        ClassFunction.from_function(G, lambda g: phi5[cycle_type(g)], "phi5"),
    ]


@dataclass(frozen=True)
class DihedralFrame:
    """Coordinates g = r^j or g = s0 r^j on a dihedral group with rotations R."""

    d: int
    r: Perm
    s0: Perm
    rotations: frozenset[Perm] = field(repr=False)
    powers: Mapping[Perm, int] = field(repr=False, compare=False)

    def coords(self, g: Perm) -> tuple[bool, int]:
        """(is_rotation, j)."""
        if g in self.rotations:
            return True, self.powers[g]
        return False, self.powers[mul(inv(self.s0), g)]


def dihedral_frame(G: PermGroup, rotations: Iterable[Perm] | None = None) -> DihedralFrame:
    kind, d = structure(G.elements, G.degree)
    if kind != "dihedral":
        raise UnsupportedInstanceError(f"group of order {G.order} is not dihedral")
    if rotations is None:
        rot = rotation_subgroups(G.elements, G.degree)[0]
    else:
        rot = frozenset(rotations)
        if rot not in rotation_subgroups(G.elements, G.degree):
            raise ContainmentError("given subgroup is not a rotation subgroup of this dihedral group")
    r = min(g for g in rot if perm_order(g) == d)
    s0 = min(g for g in G.elements if g not in rot)
    powers, x = {}, G.identity
    for j in range(d):
        powers[x] = j
        x = mul(r, x)
    return DihedralFrame(d, r, s0, rot, powers)


def _dihedral_table(G: PermGroup, rotations=None) -> list[ClassFunction]:
    fr = dihedral_frame(G, rotations)
    d = fr.d
    if d > 6:
        raise UnsupportedInstanceError(f"D_{2 * d} has character values outside Q(sqrt 5)")
    rows = [
        ClassFunction.from_function(G, lambda g: 1, "triv"),
        ClassFunction.from_function(G, lambda g: 1 if fr.coords(g)[0] else -1, "eta"),
    ]
    if d % 2 == 0:
        rows.append(ClassFunction.from_function(G, lambda g: (-1) ** fr.coords(g)[1], "rho1"))
        rows.append(
            ClassFunction.from_function(
                G, lambda g: (-1) ** fr.coords(g)[1] * (1 if fr.coords(g)[0] else -1), "rho2"
            )
        )
    ms = list(range(1, (d - 1) // 2 + 1))
    for m in ms:
        label = "chi_box" if len(ms) == 1 else f"theta{m}"
        rows.append(
            ClassFunction.from_function(
                G,
                lambda g, m=m: two_cos(d, m * fr.coords(g)[1]) if fr.coords(g)[0] else 0,
                label,
            )
        )
    return rows


def character_table(G, rotations: Iterable[Perm] | None = None) -> list[ClassFunction]:
    """Irreducible characters of G, ordered by degree.

    For dihedral groups the labels eta, rho1, rho2 refer to the rotation
    subgroup ``rotations`` (default: the first one in sorted order); eta is the
    character with kernel the rotations.
    """
    G = _group_of(G)
    kind, n = structure(G.elements, G.degree)
    if G.order == 24 and G.degree == 4:
        rows = _s4_table(G)
    elif G.order == 60 and G.degree == 5:
        rows = _a5_table(G)
    elif kind == "dihedral":
        rows = _dihedral_table(G, rotations)
    elif kind == "cyclic" and n == 1:
        rows = [ClassFunction.trivial(G)]
    elif kind == "cyclic" and n == 2:
        rows = [ClassFunction.trivial(G), ClassFunction.from_function(G, lambda g: 1 if g == G.identity else -1, "sign")]
    else:
        raise UnsupportedInstanceError(
            f"no table for this group of order {G.order}: its characters are not real-valued in Q(sqrt 5)"
        )
    rows = sorted(rows, key=lambda c: float(c.degree))
    _assert_orthonormal(G, rows)
    return rows


def _assert_orthonormal(G: PermGroup, rows: list[ClassFunction]) -> None:
    if len(rows) != len(G.classes):
        raise AssertionError("table is not square")
    for i, a in enumerate(rows):
        for j, b in enumerate(rows):
            if inner_product(a, b) != (1 if i == j else 0):
                raise AssertionError(f"rows {a.label} and {b.label} are not orthonormal")


def table_by_label(G, rotations=None) -> dict[str, ClassFunction]:
    return {c.label: c for c in character_table(G, rotations)}


# ---------------------------------------------------------------------------
# induction, restriction, inner products


def restrict(chi: ClassFunction, H) -> ClassFunction:
    H = _group_of(H)
    if not H.is_subgroup_of(chi.group):
        raise ContainmentError("restriction target is not a subgroup")
    return ClassFunction.from_function(H, chi, f"Res({chi.label})" if chi.label else None)


def induce(chi: ClassFunction, G) -> ClassFunction:
    """Frobenius formula: (1/|H|) sum over x in G with x^-1 g x in H of chi(x^-1 g x)."""
    G = _group_of(G)
    H = chi.group
    if not H.is_subgroup_of(G):
        raise ContainmentError("induction source is not a subgroup of the target")
    members = H.element_set

    def value(g):
        total = QuadValue(0)
        for x in G.elements:
            y = mul(mul(inv(x), g), x)
            if y in members:
                total = total + chi(y)
        return total / H.order

    return ClassFunction.from_function(G, value, f"Ind({chi.label})" if chi.label else None)


def inner_product(chi: ClassFunction, psi: ClassFunction) -> QuadValue:
    """(1/|G|) sum over classes of |c| chi(c) psi(c); all values here are real."""
    if chi.group != psi.group:
        raise GroupMismatchError("inner product of class functions on different groups")
    G = chi.group
    total = QuadValue(0)
    for size, a, b in zip(G.class_sizes, chi.values, psi.values):
        total = total + a * b * size
    return total / G.order


def decompose(chi: ClassFunction, table: list[ClassFunction] | None = None) -> dict[str, int]:
    """Multiplicities of the irreducible constituents (zeros omitted)."""
    if table is None:
        table = character_table(chi.group)
    out: dict[str, int] = {}
    rebuilt = ClassFunction(chi.group, (0,) * len(chi.values))
    for psi in table:
        m = inner_product(chi, psi)
        if not m.is_integer() or int(m) < 0:
            raise NotACharacterError(f"multiplicity of {psi.label} is {m}, so this is not a character")
        if int(m):
            out[psi.label] = int(m)
            rebuilt = rebuilt + psi * int(m)
    if rebuilt != chi:
        raise NotACharacterError("class function is not spanned by the given table")
    return out


def format_decomposition(parts: Mapping[str, int]) -> str:
    if not parts:
        return "0"
    return " + ".join(label if m == 1 else f"{m}*{label}" for label, m in parts.items())


def render_table(G, table: list[ClassFunction] | None = None) -> str:
    """Aligned text table: class representatives and sizes in the header."""
    G = _group_of(G)
    if table is None:
        table = character_table(G)
    header = ["", *(cycle_str(r) for r in G.class_reps)]
    sizes = ["size", *(str(s) for s in G.class_sizes)]
    rows = [[c.label or "?", *(str(v) for v in c.values)] for c in table]
    grid = [header, sizes, *rows]
    widths = [max(len(r[i]) for r in grid) for i in range(len(header))]
    lines = []
    for i, r in enumerate(grid):
        lines.append("  ".join(cell.rjust(w) if j else cell.ljust(w) for j, (cell, w) in enumerate(zip(r, widths))).rstrip())
        if i == 1:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines)
