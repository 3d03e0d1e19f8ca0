from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from locind.arith import Fp2, primes_up_to, v2
from locind.errors import InvalidInputError, InvalidWeightError, UnsupportedInstanceError
from locind.locus import (
    NEGATIVE_VERDICT,
    LocalInducingData,
    a5_u_set,
    admissible_orders,
    alpha_ratio_order,
    classify,
    d_of,
    exceptional_projective_options,
    gdi_admissible_pairs,
    gdi_candidates,
    hatada_admissible,
    is_degenerate,
    order_to_u,
    projective_consistency,
    s4_u_set,
    theorem1_verdict,
    valuation_admissible,
)
from locind.permrep import build_group, square_centralizer_check
from locind.permrep.groups import PermGroup
from locind.qseries import eigensystems_mod_p

ODD_PRIMES = primes_up_to(200)[1:]


def pair_names(tag):
    return sorted((x.D.label, x.I.label) for x in gdi_admissible_pairs(tag))


# -- d and the ratio character ---------------------------------------------


def test_d_examples():
    assert d_of(59, 16) == 4
    assert d_of(11, 12) == 12
    assert d_of(7, 12) == 8


def test_d_errors():
    with pytest.raises(UnsupportedInstanceError, match="p = 2"):
        d_of(2, 12)
    with pytest.raises(InvalidInputError):
        d_of(9, 12)
    with pytest.raises(InvalidWeightError):
        d_of(59, 15)


@given(st.sampled_from(ODD_PRIMES), st.integers(1, 200).map(lambda n: 2 * n))
def test_d_is_even_never_degenerate_and_shares_valuation(p, k):
    d = d_of(p, k)
    assert d % 2 == 0 and not is_degenerate(d)
    assert v2(d) == v2(p + 1)


def test_ratio_order_examples():
    assert alpha_ratio_order(LocalInducingData.from_weight(59, 16)) == 4
    assert alpha_ratio_order(LocalInducingData.from_weight(11, 12)) == 12
    assert alpha_ratio_order(LocalInducingData(59, 16, 0)) == 1


def test_ratio_exponent_matches_direct_arithmetic():
    data = LocalInducingData.from_weight(59, 16)
    assert data.ratio_exponent == 870 == 58 * 15
    assert 3480 // gcd(870, 3480) == 4


@given(st.sampled_from(ODD_PRIMES), st.integers(6, 150).map(lambda n: 2 * n))
def test_ratio_order_independent_of_twist(p, k):
    a = alpha_ratio_order(LocalInducingData.from_weight(p, k))
    b = alpha_ratio_order(LocalInducingData.from_weight(p, k, twist=True))
    assert a == b == d_of(p, k)


def test_ratio_exponent_range_checked():
    with pytest.raises(InvalidInputError):
        LocalInducingData(59, 16, 3480)


# -- the two congruence conditions -----------------------------------------


def test_hatada_examples():
    assert hatada_admissible(59) is False
    assert hatada_admissible(7) is True
    assert hatada_admissible(23) is True
    with pytest.raises(UnsupportedInstanceError):
        hatada_admissible(2)


def test_valuation_examples():
    assert valuation_admissible(59) is True
    assert valuation_admissible(7) is False
    assert valuation_admissible(11) is True


def test_conditions_disjoint():
    assert not any(hatada_admissible(p) and valuation_admissible(p) for p in primes_up_to(5000)[1:])


# -- decomposition / inertia pairs -----------------------------------------


def test_s4_pairs():
    assert pair_names("S4") == [("D8", "Z/4"), ("V4 (non-normal)", "Z/2")]
    (v4,) = [x for x in gdi_admissible_pairs("S4") if x.d == 2]
    (g,) = [x for x in v4.I.elements if x != v4.I.group.identity]
    assert sum(1 for i, j in enumerate(g) if i != j) == 2  # a transposition


def test_a5_pairs():
    assert pair_names("A5") == [("D10", "Z/5"), ("D6", "Z/3"), ("V4", "Z/2")]


def test_s4_rejections_carry_reasons():
    by = {(x.D.label, x.I.label, x.reasons) for x in gdi_candidates("S4") if x.reasons}
    assert ("D6", "Z/3", ("inertia-in-even-part", "inertia-order-odd")) in by
    assert any(D == "V4 (normal)" and "decomposition-normal" in r for D, _, r in by)
    assert any(D == "V4 (non-normal)" and r == ("inertia-in-even-part",) for D, _, r in by)


def test_admissible_orders():
    assert admissible_orders() == [2, 3, 4, 5]


def test_pairs_stable_under_regeneration():
    for tag in ("S4", "A5"):
        G = build_group(tag)
        shuffled = PermGroup(list(reversed(G.elements)), G.degree, tag)
        a = [(x.D.label, x.I.label, x.reasons) for x in gdi_candidates(tag)]
        b = [(x.D.label, x.I.label, x.reasons) for x in gdi_candidates(tag, shuffled)]
        assert a == b


def test_square_centralizer_on_admissible_pairs():
    for tag in ("S4", "A5"):
        for x in gdi_admissible_pairs(tag):
            assert square_centralizer_check(x.G, x.I.elements)


def test_exclusion_trace():
    trace = exceptional_projective_options(59)
    assert trace.survivors == ("S4", "A5")
    assert set(trace.excluded) == {"dihedral", "A4"}
    assert trace.facts["index-2 subgroups of D6"] == 1
    assert trace.facts["index-2 subgroups of D8"] == 3


# -- theorem 1 -------------------------------------------------------------


def test_theorem1_examples():
    r = theorem1_verdict(59, 16)
    assert [o.code for o in r.obstructions] == ["hatada"]
    assert "59 ≢ 7 mod 8" in r.obstructions[0].detail
    assert r.verdict == NEGATIVE_VERDICT
    assert [(x.D.label, x.I.label) for x in r.pairs] == [("D8", "Z/4")]

    r = theorem1_verdict(23, 12)
    assert [str(o) for o in r.obstructions] == ["valuation: v2(24) = 3 > 2"]

    r = theorem1_verdict(7, 4)
    assert [o.code for o in r.obstructions] == ["valuation"]
    assert r.verdict == NEGATIVE_VERDICT


def test_theorem1_total_below_1000():
    for p in primes_up_to(1000)[1:]:
        assert theorem1_verdict(p, 12).obstructions


# -- u-statistic -----------------------------------------------------------


def test_order_to_u_examples():
    p = 59
    as_ints = {n: [u.c0 for u in order_to_u(n, p)] for n in (1, 2, 3, 4, 6)}
    assert as_ints == {1: [4], 2: [0], 3: [1], 4: [2], 6: [3]}
    fives = order_to_u(5, p)
    assert len(fives) == 2 and all((u * u - u * 3 + 1).is_zero() for u in fives)


def test_order_to_u_rejects_impossible_order():
    with pytest.raises(UnsupportedInstanceError):
        order_to_u(7, 59)


def test_u_sets():
    assert {u.c0 for u in s4_u_set(59)} == {0, 1, 2, 4}
    assert len(a5_u_set(59)) == 5
    assert len(a5_u_set(7)) == 5  # golden-ratio roots live in F_49 only


def test_consistency_at_59():
    (s,) = eigensystems_mod_p(16, 59, 1000)
    rep = projective_consistency(s, 1000)
    counts = {u.c0: n for u, n in rep.hits.items()}
    assert set(counts) <= {0, 1, 2, 4} and counts[2] > 0
    assert rep.s4_consistent and not rep.a5_consistent and not rep.dihedral_consistent
    assert rep.summary() == ["consistent-with S4", "inconsistent-with A5", "inconsistent-with dihedral"]
    assert 59 not in rep.u


def test_classify_report():
    r = classify(59, 16, lbound=100)
    assert r.d == 4 and r.v2_d == 2 and r.v2_p_plus_1 == 2
    assert r.hatada_residue == 4
    assert r.ap_zero_mod_p is True
    assert not r.degenerate
    assert len(r.eigensystems) == 1 and r.consistency[0].s4_consistent


def test_classify_without_lbound_skips_statistic():
    r = classify(7, 12)
    assert r.consistency is None
    assert r.theorem1.obstructions[0].detail == "v2(8) = 3 > 2"


def test_fp2_values_render_with_basis():
    (s,) = eigensystems_mod_p(16, 59, 60)
    assert isinstance(s.ap, Fp2) and str(s.ap) == "0"
