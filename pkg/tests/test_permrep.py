from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from locind.errors import ContainmentError, GroupMismatchError, NotACharacterError, UnsupportedInstanceError
from locind.permrep import (
    ClassFunction,
    QuadValue,
    build_group,
    character_table,
    decompose,
    dihedral_subgroups,
    index_two_subgroup_count,
    induce,
    inner_product,
    render_table,
    restrict,
    square_centralizer_check,
    table_by_label,
)
from locind.permrep.groups import PermGroup, closure, conj, from_cycles, inv, mul, perm_order
from locind.permrep.quad import GOLDEN, SQRT5, two_cos

S4 = build_group("S4")
A5 = build_group("A5")


def cyc(n, *cs):
    return from_cycles(n, *cs)


def sub(G, *gens):
    return G.subgroup(closure(gens, G.degree))


def tables_or_indicators(H):
    """Irreducibles when available, otherwise the class-indicator basis."""
    try:
        return character_table(H)
    except UnsupportedInstanceError:
        return [ClassFunction.indicator(H, i) for i in range(len(H.classes))]


# -- QuadValue --------------------------------------------------------------

fracs = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 12))
quads = st.builds(QuadValue, fracs, fracs)


@given(quads, quads, quads)
def test_quad_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    if a != 0:
        assert (b / a) * a == b


def test_quad_constants():
    assert SQRT5 * SQRT5 == 5
    assert GOLDEN * GOLDEN == GOLDEN + 1
    assert str(GOLDEN) == "(1+√5)/2"
    assert str(GOLDEN.conjugate()) == "(1-√5)/2"
    assert str(QuadValue(3)) == "3"


def test_two_cos():
    assert two_cos(5, 1) == QuadValue(Fraction(-1, 2), Fraction(1, 2))
    assert two_cos(5, 1) + two_cos(5, 2) == -1
    assert two_cos(10, 1) == GOLDEN
    assert [two_cos(4, j) for j in range(4)] == [2, 0, -2, 0]
    assert [two_cos(6, j) for j in range(3)] == [2, 1, -1]
    with pytest.raises(UnsupportedInstanceError):
        two_cos(7, 1)


# -- groups -----------------------------------------------------------------


def test_build_group_examples():
    assert (S4.order, len(S4.classes)) == (24, 5)
    assert (A5.order, len(A5.classes)) == (60, 5)
    triv = build_group("cyclic", 1)
    assert (triv.order, len(triv.classes)) == (1, 1)


@pytest.mark.parametrize(
    "tag,d,order",
    [("S4", None, 24), ("A4", None, 12), ("A5", None, 60), ("S3", None, 6)]
    + [("dihedral", d, 2 * d) for d in range(1, 7)]
    + [("cyclic", d, d) for d in range(1, 7)],
)
def test_group_invariants(tag, d, order):
    G = build_group(tag, d)
    assert G.order == order
    elems = G.element_set
    assert G.identity in elems
    assert all(mul(a, b) in elems for a in G for b in G)
    assert all(inv(a) in elems for a in G)
    assert sum(G.class_sizes) == G.order
    for cls in G.classes:
        assert cls[0] == min(cls)
        assert {conj(g, cls[0]) for g in G} == set(cls)


def test_subgroup_class_counts():
    assert len(S4.subgroup_classes) == 11
    assert len(A5.subgroup_classes) == 9
    assert len(S4.subgroup_sets) == 30
    assert len(A5.subgroup_sets) == 59


def test_dihedral_subgroups_s4():
    ds = dihedral_subgroups(S4)
    got = sorted((h.order, h.normal) for h in ds)
    assert got == [(4, False), (4, True), (6, False), (8, False)]


def test_dihedral_subgroups_a5():
    ds = dihedral_subgroups(A5)
    assert sorted(h.order for h in ds) == [4, 6, 10]
    assert not any(h.normal for h in ds)


def test_dihedral_subgroups_a4():
    (h,) = dihedral_subgroups(build_group("A4"))
    assert h.order == 4 and h.normal


def test_dihedral_tag_verification():
    for h in dihedral_subgroups(S4) + dihedral_subgroups(A5):
        kind, d = h.structure
        assert kind == "dihedral" and h.order == 2 * d and d >= 2
        assert not any(perm_order(g) == h.order for g in h.elements)


def test_index_two_counts():
    assert index_two_subgroup_count(build_group("dihedral", 3)) == 1
    assert index_two_subgroup_count(build_group("dihedral", 5)) == 1
    assert index_two_subgroup_count(build_group("dihedral", 4)) == 3
    assert index_two_subgroup_count(build_group("dihedral", 2)) == 3
    assert index_two_subgroup_count(A5) == 0
    assert index_two_subgroup_count(S4) == 1


def test_index_two_count_matches_brute_force():
    for G in (S4, build_group("dihedral", 4), build_group("dihedral", 6), build_group("cyclic", 6)):
        brute = sum(1 for s in G.subgroup_sets if 2 * len(s) == G.order)
        assert index_two_subgroup_count(G) == brute


def test_square_centralizer_examples():
    assert square_centralizer_check(S4, closure([cyc(4, (1, 2, 3, 4))], 4))
    assert square_centralizer_check(S4, closure([cyc(4, (1, 2))], 4))
    C4 = build_group("cyclic", 4)
    for h in C4.subgroup_sets:
        assert not square_centralizer_check(C4, h)


def test_square_centralizer_containment():
    with pytest.raises(ContainmentError):
        square_centralizer_check(build_group("A4"), closure([cyc(4, (1, 2))], 4))


def test_embedding_rejects_non_subgroup():
    with pytest.raises(ContainmentError):
        S4.embedding([S4.identity, cyc(4, (1, 2, 3))])


def test_build_group_rejects_unknown():
    with pytest.raises(ValueError):
        build_group("M11")
    with pytest.raises(ValueError):
        build_group("dihedral", 7)


# -- character tables -------------------------------------------------------


def test_s4_table():
    table = character_table(S4)
    assert [int(c.degree) for c in table] == [1, 1, 2, 3, 3]
    assert {c.label for c in table} == {"triv", "sgn", "chi_perp", "chi_perp_sgn", "chi5"}


def test_a5_table():
    t = table_by_label(A5)
    assert sorted(int(c.degree) for c in t.values()) == [1, 3, 3, 4, 5]
    five = [i for i, r in enumerate(A5.class_reps) if perm_order(r) == 5]
    vals = {t["phi3"].values[i] for i in five}
    assert vals == {GOLDEN, GOLDEN.conjugate()}
    assert {t["phi3'"].values[i] for i in five} == vals


def test_cyclic_two_table():
    t = character_table(build_group("cyclic", 2))
    assert [list(map(int, c.values)) for c in t] == [[1, 1], [1, -1]]


def test_dihedral_four_table():
    t = character_table(build_group("dihedral", 4))
    assert [int(c.degree) for c in t] == [1, 1, 1, 1, 2]
    assert t[-1].label == "chi_box"


@pytest.mark.parametrize("G", [S4, A5] + [build_group("dihedral", d) for d in range(2, 7)] + [build_group("S3")])
def test_row_orthogonality(G):
    table = character_table(G)
    assert len(table) == len(G.classes)
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            s = sum((x * y * n for x, y, n in zip(a.values, b.values, G.class_sizes)), QuadValue(0))
            assert s == (G.order if i == j else 0)


def test_unsupported_tables():
    for G in (build_group("A4"), build_group("cyclic", 3), build_group("cyclic", 5)):
        with pytest.raises(UnsupportedInstanceError):
            character_table(G)


def test_render_table_has_sizes():
    text = render_table(S4)
    lines = text.splitlines()
    assert lines[1].split() == ["size", "1", "6", "8", "3", "6"]
    assert len(lines) == 3 + 5


# -- induction and restriction ----------------------------------------------


def test_induce_from_transposition():
    I = sub(S4, cyc(4, (1, 2)))
    sign_I = table_by_label(I)["sign"]
    ind = induce(sign_I, S4)
    assert decompose(ind) == {"sgn": 1, "chi5": 1, "chi_perp": 1, "chi_perp_sgn": 2}
    assert inner_product(ind, table_by_label(S4)["chi_perp_sgn"]) == 2


def test_induce_from_d8():
    D8 = next(h for h in dihedral_subgroups(S4) if h.order == 8).group
    ind = induce(table_by_label(D8)["chi_box"], S4)
    assert decompose(ind) == {"chi_perp": 1, "chi_perp_sgn": 1}


def test_induce_identity_case():
    assert induce(ClassFunction.trivial(S4), S4) == ClassFunction.trivial(S4)


def test_restrict_examples():
    t = table_by_label(S4)
    I = sub(S4, cyc(4, (1, 2)))
    assert restrict(t["sgn"], I) == table_by_label(I)["sign"]
    A4 = S4.subgroup([g for g in S4 if t["sgn"](g) == 1])
    res = restrict(t["chi5"], A4)
    by_type = {}
    for rep, v in zip(A4.class_reps, res.values):
        by_type.setdefault(perm_order(rep), []).append(v)
    assert by_type == {1: [2], 2: [2], 3: [-1, -1]}
    assert restrict(ClassFunction.trivial(S4), I) == ClassFunction.trivial(I)


def test_inner_product_examples():
    t = table_by_label(S4)
    assert inner_product(t["chi_perp"], t["chi_perp"]) == 1
    assert inner_product(t["triv"], t["sgn"]) == 0


def test_decompose_examples():
    triv = ClassFunction.trivial(S4)
    assert decompose(triv + triv) == {"triv": 2}


def test_decompose_rejects_non_character():
    half = table_by_label(S4)["sgn"] * Fraction(1, 2)
    with pytest.raises(NotACharacterError):
        decompose(half)
    with pytest.raises(NotACharacterError):
        decompose(-ClassFunction.trivial(S4))


def test_containment_and_mismatch_errors():
    A4 = build_group("A4")
    with pytest.raises(ContainmentError):
        induce(ClassFunction.trivial(S4), A4)
    with pytest.raises(ContainmentError):
        restrict(ClassFunction.trivial(A4), build_group("dihedral", 4))
    with pytest.raises(GroupMismatchError):
        inner_product(ClassFunction.trivial(S4), ClassFunction.trivial(A5))


@pytest.mark.parametrize("G", [S4, A5], ids=["S4", "A5"])
def test_frobenius_reciprocity_all_subgroups(G):
    psis = character_table(G)
    for s in G.subgroup_sets:
        H = G.subgroup(s)
        for chi in tables_or_indicators(H):
            ind = induce(chi, G)
            assert ind.degree == chi.degree * (G.order // H.order)
            for psi in psis:
                assert inner_product(ind, psi) == inner_product(chi, restrict(psi, H))


def test_index_two_irreducibility_criterion():
    checked = 0
    for d in range(2, 7):
        G = build_group("dihedral", d)
        for s in G.subgroup_sets:
            if 2 * len(s) != G.order:
                continue
            H = G.subgroup(s)
            try:
                linear = [c for c in character_table(H) if c.degree == 1]
            except UnsupportedInstanceError:
                continue
            outer = next(g for g in G if g not in s)
            for chi in linear:
                conj_chi = ClassFunction.from_function(H, lambda h: chi(conj(inv(outer), h)))
                ind = induce(chi, G)
                assert (inner_product(ind, ind) == 1) == (conj_chi != chi)
                checked += 1
    assert checked > 10


def test_induction_is_transitive():
    for G in (S4, A5):
        for D in dihedral_subgroups(G):
            Dg = D.group
            for s in Dg.subgroup_sets:
                I = Dg.subgroup(s)
                for chi in tables_or_indicators(I):
                    assert induce(induce(chi, Dg), G) == induce(chi, G)


@given(st.permutations(list(S4.elements)))
def test_group_is_independent_of_enumeration_order(perm_list):
    H = PermGroup(perm_list, 4)
    assert H.classes == S4.classes
    assert [c.rep for c in H.subgroup_classes] == [c.rep for c in S4.subgroup_classes]
