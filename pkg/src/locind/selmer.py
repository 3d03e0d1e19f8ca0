"""Character-theoretic bookkeeping for the tangent-space vanishing argument.

The class group C = Cl(L)/p is only ever used through Hom_D(C, W), so it is
represented by its character.  Class numbers enter as cited fixture data; the
only inference made is that a p-part in h(E) forces one in h(F) for E inside F
with p not dividing [F:E].
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping

from .arith import is_prime
from .cyclo import Cyclo, mat_inverse_trace, mat_mul, mat_trace
from .errors import FixtureError, GroupMismatchError, InvalidInputError
from .locus import EXCEPTIONAL_TAGS, DecompositionDatum, ambient_group, gdi_admissible_pairs
from .permrep.characters import (
    ClassFunction,
    dihedral_frame,
    induce,
    inner_product,
    restrict,
    table_by_label,
)
from .permrep.groups import PermGroup, conj, cycle_str, sign, square_centralizer_witness, structure
from .permrep.quad import two_cos

FIXTURE_SCHEMA = "locind.class-group-fixture/1"
UNKNOWN = "unknown"


class SelmerConditionTag(Enum):
    """Local conditions of the Selmer groups; metadata only, nothing is computed."""

    L = "unramified at finite places away from p, trivial at places above p"
    M = "unramified at every finite place"
    N = "unramified at finite places away from p, no condition above p"
    SIGMA = "N-type away from p; at p the class restricts into the eta-summand (tangent space)"


# ---------------------------------------------------------------------------
# subfield lattice


def _field_label(G: PermGroup, rep: tuple, normal: bool) -> str:
    kind, n = structure(rep, G.degree)
    if len(rep) == 1:
        return "L"
    if len(rep) == G.order:
        return "Q"
    if kind == "cyclic":
        name = f"Z/{n}Z"
        if G.order == 24 and n == 2:
            g = next(x for x in rep if x != G.identity)
            name += "(odd)" if sign(g) == -1 else "(even)"
    elif kind == "dihedral":
        name = "V4" if n == 2 else ("S3" if n == 3 else f"D{2 * n}")
        if G.order == 24 and n == 2:
            name += "(normal)" if normal else "(non-normal)"
    elif len(rep) == 12:
        name = "A4"
    else:
        name = f"order{len(rep)}"
    return f"L^{name}"


@dataclass(frozen=True)
class SubfieldInfo:
    label: str
    degree: int
    fixing_group: tuple = field(repr=False)


def subfield_lattice(tag: str) -> dict[str, SubfieldInfo]:
    """Fixed fields L^H of the proper subgroups H (up to conjugacy), keyed by label."""
    return dict(_lattice(tag))


@lru_cache(maxsize=None)
def _lattice(tag: str) -> tuple[tuple[str, SubfieldInfo], ...]:
    G = ambient_group(tag)
    out = {}
    for c in G.subgroup_classes:
        label = _field_label(G, c.rep, c.size == 1)
        if label == "Q":
            continue
        assert label not in out, label
        out[label] = SubfieldInfo(label, G.order // c.order, c.rep)
    return tuple(out.items())


_ALIASES = {"L^A4-quadratic": "L^A4", "L^Z/2Z(transposition)": "L^Z/2Z(odd)"}


def normalize_label(label: str) -> str:
    s = label.replace("{", "").replace("}", "").replace(" ", "").replace("_", "")
    s = re.sub(r"Z/(\d+)(?!\d|Z)", r"Z/\1Z", s)
    return _ALIASES.get(s, s)


def field_contains(tag: str, big: str, small: str) -> bool:
    """True iff L^H(small) is contained in L^K(big), i.e. K lies in a conjugate of H."""
    lat = subfield_lattice(tag)
    G = ambient_group(tag)
    K, H = lat[big].fixing_group, set(lat[small].fixing_group)
    return any(all(conj(g, x) in H for x in K) for g in G.elements)


# ---------------------------------------------------------------------------
# fixtures


@dataclass(frozen=True)
class FixtureEntry:
    label: str
    degree: int
    class_number: int | str
    source: str


@dataclass(frozen=True)
class ClassGroupFixture:
    p: int
    tag: str
    entries: tuple[FixtureEntry, ...]

    def entry(self, label: str) -> FixtureEntry | None:
        return next((e for e in self.entries if e.label == label), None)

    def with_entries(self, *extra: FixtureEntry) -> ClassGroupFixture:
        return ClassGroupFixture(self.p, self.tag, self.entries + tuple(extra))

    def to_dict(self) -> dict:
        return {
            "schema": FIXTURE_SCHEMA,
            "p": self.p,
            "group": self.tag,
            "entries": [
                {"label": e.label, "degree": e.degree, "class_number": e.class_number, "source": e.source}
                for e in self.entries
            ],
        }


def parse_fixture(doc: Mapping) -> ClassGroupFixture:
    if not isinstance(doc, Mapping):
        raise FixtureError("fixture must be a JSON object")
    if doc.get("schema") != FIXTURE_SCHEMA:
        raise FixtureError(f"fixture schema must be {FIXTURE_SCHEMA!r}")
    p = doc.get("p")
    if not isinstance(p, int) or not is_prime(p) or p == 2:
        raise FixtureError(f"fixture p must be an odd prime, got {p!r}")
    tag = doc.get("group")
    if tag not in EXCEPTIONAL_TAGS:
        raise FixtureError(f"fixture group must be S4 or A5, got {tag!r}")
    lattice = subfield_lattice(tag)
    entries = []
    seen = set()
    for raw in doc.get("entries", []):
        try:
            label = normalize_label(raw["label"])
            degree = raw["degree"]
            h = raw["class_number"]
            source = raw.get("source", "")
        except (KeyError, TypeError) as exc:
            raise FixtureError(f"malformed fixture entry {raw!r}") from exc
        if label not in lattice:
            raise FixtureError(f"label {raw['label']!r} is not a subfield of an {tag} extension")
        if degree != lattice[label].degree:
            raise FixtureError(f"{label} has degree {lattice[label].degree}, fixture says {degree}")
        if h != UNKNOWN and (not isinstance(h, int) or isinstance(h, bool) or h < 1):
            raise FixtureError(f"class number of {label} must be a positive integer or 'unknown'")
        if label in seen:
            raise FixtureError(f"duplicate entry for {label}")
        seen.add(label)
        entries.append(FixtureEntry(label, degree, h, str(source)))
    return ClassGroupFixture(p, tag, tuple(entries))


def load_fixture(path) -> ClassGroupFixture:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureError(f"cannot read fixture {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"fixture {path} is not valid JSON: {exc}") from exc
    return parse_fixture(doc)


def bundled_fixture(p: int = 59) -> ClassGroupFixture:
    name = f"p{p}.json"
    ref = resources.files("locind").joinpath("data").joinpath(name)
    if not ref.is_file():
        raise FixtureError(f"no bundled fixture for p = {p}")
    return parse_fixture(json.loads(ref.read_text(encoding="utf-8")))


# ---------------------------------------------------------------------------
# which constituents of C are controlled by which subfield


@dataclass(frozen=True)
class ConstituentInfo:
    character: str
    subfield: str
    implied_by: str | None
    unconditional: bool
    note: str = ""


def subfield_constituent_map(tag: str) -> dict[str, ConstituentInfo]:
    """For each non-trivial irreducible psi: the largest H with psi|_H containing 1.

    A p-part of C in the psi-isotypic piece gives a non-zero H-invariant, hence
    a p-part in the class group of L^H.  If another target field contains L^H
    with index prime to p, its coprimality implies this one.
    """
    G = ambient_group(tag)
    table = table_by_label(G)
    lat = subfield_lattice(tag)
    targets = {}
    for label, psi in table.items():
        if label == "triv":
            continue
        best = None
        for info in lat.values():
            H = G.subgroup(info.fixing_group)
            if inner_product(restrict(psi, H), ClassFunction.trivial(H)) != 0:
                if best is None or len(info.fixing_group) > len(best.fixing_group):
                    best = info
        targets[label] = best.label
    out = {}
    for label, fld in targets.items():
        implied = None
        for other in targets.values():
            if other != fld and field_contains(tag, other, fld):
                implied = other
        unconditional = lat[fld].degree == 2
        note = ""
        if unconditional:
            note = "quadratic subfield: its class number is smaller than p"
        elif implied:
            note = f"{fld} is a subfield of {implied} of index {lat[implied].degree // lat[fld].degree}"
        out[label] = ConstituentInfo(label, fld, implied, unconditional, note)
    return out


def required_fields(tag: str) -> list[str]:
    return sorted(
        {c.subfield for c in subfield_constituent_map(tag).values() if not c.implied_by and not c.unconditional}
    )


@dataclass(frozen=True)
class FieldStatus:
    label: str
    degree: int
    coprime: bool | None
    provenance: str


def field_status(fixture: ClassGroupFixture, label: str) -> FieldStatus:
    """Is p prime to h(label)?  Direct data first, then the lifting rule."""
    p = fixture.p
    lat = subfield_lattice(fixture.tag)
    label = normalize_label(label)
    deg = lat[label].degree
    direct = fixture.entry(label)
    derived_from = None
    for e in fixture.entries:
        if e.class_number == UNKNOWN or e.class_number % p == 0 or e.label == label:
            continue
        idx = e.degree // deg if e.degree % deg == 0 else None
        if idx is not None and idx % p and field_contains(fixture.tag, e.label, label):
            derived_from = e
            break
    if direct is not None and direct.class_number != UNKNOWN:
        coprime = direct.class_number % p != 0
        if not coprime and derived_from is not None:
            raise FixtureError(
                f"inconsistent fixture: {p} | h({label}) but h({derived_from.label}) is prime to {p}"
            )
        return FieldStatus(label, deg, coprime, f"direct: h = {direct.class_number} ({direct.source})")
    if derived_from is not None:
        return FieldStatus(
            label,
            deg,
            True,
            f"derived: p ∤ [{derived_from.label}:{label}] lifting from h({derived_from.label}) = {derived_from.class_number}",
        )
    return FieldStatus(label, deg, None, "missing")


def nicely_exceptional(fixture: ClassGroupFixture) -> bool | str:
    """True, False, or "unknown" when some required class number is unavailable."""
    G = ambient_group(fixture.tag)
    if G.order % fixture.p == 0:
        return False
    statuses = [field_status(fixture, lab) for lab in required_fields(fixture.tag)]
    if any(s.coprime is False for s in statuses):
        return False
    if any(s.coprime is None for s in statuses):
        return UNKNOWN
    return True


# ---------------------------------------------------------------------------
# W, ad0 and Hom_D(C, W)


def _check_datum(datum: DecompositionDatum) -> None:
    if not datum.admissible:
        raise InvalidInputError(f"pair {datum.describe()} is not admissible: {', '.join(datum.reasons)}")


def w_character(datum: DecompositionDatum) -> ClassFunction:
    """Character of W = Ind_I^D(mu), mu faithful of order d on I.

    mu itself is not real, so we induce mu + mu^-1 (values 2cos) and halve:
    both summands induce to the same character.
    """
    _check_datum(datum)
    I = datum.I.group
    d = datum.d
    gen = datum.I.generator()
    power, x = {}, I.identity
    for j in range(d):
        power[x] = j
        x = tuple(gen[i] for i in x)
    mu_plus = ClassFunction.from_function(I, lambda g: two_cos(d, power[g]))
    w = induce(mu_plus, datum.D.group) * Fraction(1, 2)
    return w.named("W")


def eta_character(datum: DecompositionDatum) -> ClassFunction:
    _check_datum(datum)
    return table_by_label(datum.D.group, datum.I.elements)["eta"]


def ad0_direct(datum: DecompositionDatum) -> ClassFunction:
    """tr(A) tr(A^-1) - 1 for a projective lift r^j -> diag(z^j, 1), reflections antidiagonal."""
    _check_datum(datum)
    D = datum.D.group
    fr = dihedral_frame(D, datum.I.elements)
    d = fr.d
    zero, one = Cyclo.const(d, 0), Cyclo.const(d, 1)
    flip = [[zero, one], [one, zero]]

    def lift(g):
        rot, j = fr.coords(g)
        diag = [[Cyclo.zeta_power(d, j), zero], [zero, one]]
        return diag if rot else mat_mul(flip, diag)

    def value(g):
        a = lift(g)
        return (mat_trace(a) * mat_inverse_trace(a) - one).to_quad()

    return ClassFunction.from_function(D, value, "ad0")


def ad0_character(datum: DecompositionDatum) -> ClassFunction:
    chi = (eta_character(datum) + w_character(datum)).named("ad0")
    direct = ad0_direct(datum)
    if chi != direct:
        raise AssertionError(f"ad0 splitting fails on {datum.describe()}")
    return chi


@dataclass(frozen=True)
class ClassModuleCharacter:
    """Character of C (x) k as multiplicities of irreducibles, or the zero module."""

    tag: str
    multiplicities: Mapping[str, int] | str

    def __post_init__(self):
        if self.multiplicities == "trivial-zero":
            return
        table = table_by_label(ambient_group(self.tag))
        for label, m in self.multiplicities.items():
            if label not in table:
                raise InvalidInputError(f"{label!r} is not an irreducible character of {self.tag}")
            if not isinstance(m, int) or m < 0:
                raise InvalidInputError(f"multiplicity of {label} must be a non-negative integer")

    @classmethod
    def zero(cls, tag: str) -> ClassModuleCharacter:
        return cls(tag, "trivial-zero")

    @property
    def is_zero(self) -> bool:
        return self.multiplicities == "trivial-zero" or not any(self.multiplicities.values())

    def character(self) -> ClassFunction:
        G = ambient_group(self.tag)
        table = table_by_label(G)
        total = ClassFunction(G, (0,) * len(G.classes))
        if self.multiplicities != "trivial-zero":
            for label, m in self.multiplicities.items():
                total = total + table[label] * m
        return total.named("C")


def hom_dimension(C: ClassModuleCharacter, datum: DecompositionDatum) -> int:
    """dim Hom_D(C, W), computed on D and again on G by reciprocity."""
    if C.tag != datum.tag:
        raise GroupMismatchError(f"C lives on {C.tag} but the datum on {datum.tag}")
    if C.multiplicities == "trivial-zero":
        return 0
    chi_c = C.character()
    w = w_character(datum)
    on_d = inner_product(restrict(chi_c, datum.D.group), w)
    on_g = inner_product(chi_c, induce(w, datum.G))
    if on_d != on_g:
        raise AssertionError("Frobenius reciprocity failed")
    return int(on_d)


# ---------------------------------------------------------------------------
# verdict

POSITIVE_VERDICT = "every locally induced lift has finite image up to twist"
INCONCLUSIVE_HYPOTHESIS = "inconclusive (hypothesis fails)"
INCONCLUSIVE_MISSING = "inconclusive (missing data)"


@dataclass(frozen=True)
class Certificate:
    """Witness (h, x) with h^2 x != x h^2 for one admissible (G, I)."""

    pair: str
    h: str
    x: str

    @property
    def ident(self) -> str:
        return f"{self.pair} h={self.h} x={self.x}"


@dataclass(frozen=True)
class VanishingVerdict:
    cond1_status: str
    cond1_certificates: tuple[Certificate, ...]
    cond2: bool | None
    hom_dimension: int | None
    nicely_exceptional: bool | str | None
    worst_case_hom_dimension: int | None
    theorem2: str
    field_statuses: tuple[FieldStatus, ...] = ()

    @property
    def cond1(self) -> bool:
        return self.cond1_status == "proven-by-theory"

    @property
    def tangent_vanishes(self) -> bool:
        return self.cond1 and self.cond2 is True


def cond1_certificates(tag: str) -> tuple[Certificate, ...]:
    G = ambient_group(tag)
    out = []
    for pair in gdi_admissible_pairs(tag):
        w = square_centralizer_witness(G, pair.I.elements)
        if w is None:
            raise AssertionError(f"no square-centralizer witness for {pair.describe()}")
        out.append(Certificate(pair.describe(), cycle_str(w[0]), cycle_str(w[1])))
    return tuple(out)


def theorem2_verdict(
    fixture: ClassGroupFixture | None,
    datum: DecompositionDatum,
    C: ClassModuleCharacter | None = None,
) -> VanishingVerdict:
    _check_datum(datum)
    certs = cond1_certificates(datum.tag)
    status = "proven-by-theory" if len(certs) == len(gdi_admissible_pairs(datum.tag)) else "uncertified"
    if fixture is None:
        return VanishingVerdict(status, certs, None, None, None, None, INCONCLUSIVE_MISSING)
    if fixture.tag != datum.tag:
        raise GroupMismatchError(f"fixture is for {fixture.tag}, datum for {datum.tag}")
    statuses = tuple(field_status(fixture, lab) for lab in required_fields(fixture.tag))
    ne = nicely_exceptional(fixture)
    # C built from the constituents the class-number hypotheses do not rule out
    survivors = ClassModuleCharacter(datum.tag, {"triv": 1})
    worst = hom_dimension(survivors, datum)
    if ne == UNKNOWN and C is None:
        return VanishingVerdict(status, certs, None, None, ne, worst, INCONCLUSIVE_MISSING, statuses)
    if ne is False and C is None:
        return VanishingVerdict(status, certs, None, None, ne, worst, INCONCLUSIVE_HYPOTHESIS, statuses)
    if C is None:
        C = ClassModuleCharacter.zero(datum.tag)
    hom = hom_dimension(C, datum)
    cond2 = hom == 0
    verdict = POSITIVE_VERDICT if status == "proven-by-theory" and cond2 else INCONCLUSIVE_HYPOTHESIS
    return VanishingVerdict(status, certs, cond2, hom, ne, worst, verdict, statuses)
