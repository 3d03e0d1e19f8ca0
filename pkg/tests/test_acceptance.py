"""Acceptance criteria, one test each.

Every test clears the module caches first so the timing is a cold run, then
prints a single PASS/FAIL line with the elapsed time against its bound.
"""

import subprocess
import sys
import time
from pathlib import Path

import pytest

from locind import cyclo, locus, qseries, selmer
from locind.arith import is_prime, primes_up_to, v2
from locind.locus import (
    LocalInducingData,
    alpha_ratio_order,
    d_of,
    gdi_admissible_pairs,
    hatada_admissible,
    theorem1_verdict,
    valuation_admissible,
)
from locind.permrep import (
    ClassFunction,
    QuadValue,
    build_group,
    character_table,
    decompose,
    dihedral_subgroups,
    induce,
    inner_product,
    restrict,
    square_centralizer_check,
    table_by_label,
)
from locind.permrep.groups import closure, from_cycles
from locind.errors import UnsupportedInstanceError
from locind.qseries import eigensystems_mod_p, hecke_matrix
from locind.selmer import POSITIVE_VERDICT, ad0_direct, eta_character, w_character

ROOT = Path(__file__).resolve().parents[1]


def clear_caches():
    qseries._BASIS_CACHE.clear()
    qseries.bernoulli.cache_clear()
    locus._AMBIENT.clear()
    locus._CANDIDATES.clear()
    selmer._lattice.cache_clear()
    cyclo.cyclotomic.cache_clear()


@pytest.fixture
def check(capsys):
    def run(number, title, bound, fn):
        clear_caches()
        t0 = time.perf_counter()
        ok, detail = fn()
        elapsed = time.perf_counter() - t0
        passed = ok and elapsed < bound
        with capsys.disabled():
            print(f"\n[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f} s < {bound} s) {detail}")
        assert ok, detail
        assert elapsed < bound, f"took {elapsed:.2f} s, bound {bound} s"

    return run


def test_criterion_1_example_reproduction(check):
    def body():
        systems = eigensystems_mod_p(16, 59, 60)
        ok = len(systems) == 1 and systems[0].ap.is_zero() and systems[0].residue_degree == 1
        return ok, f"{len(systems)} system(s), a_59 mod 59 = {systems[0].ap if systems else None}"

    check(1, "unique (16, 59) eigensystem has a_59 = 0 mod 59", 2, body)


def test_criterion_2_d_formula(check):
    def body():
        ok = d_of(59, 16) == 4 and v2(4) == v2(60) == 2
        count = 0
        for p in primes_up_to(200)[1:]:
            for k in range(2, p + 2, 2):
                if alpha_ratio_order(LocalInducingData.from_weight(p, k)) != d_of(p, k):
                    return False, f"mismatch at ({p}, {k})"
                count += 1
        return ok, f"d(59, 16) = 4, {count} (p, k) pairs agree"

    check(2, "d formula and ratio order", 5, body)


def test_criterion_3_theorem1_totality(check):
    def body():
        primes = [p for p in range(3, 1000) if is_prime(p)]
        hatada = {p for p in primes if hatada_admissible(p)}
        valuation = {p for p in primes if valuation_admissible(p)}
        assert hatada == {p for p in primes if p % 8 == 7}
        assert valuation == {p for p in primes if v2(p + 1) <= 2}
        total = all(theorem1_verdict(p, 12).obstructions for p in primes)
        return not (hatada & valuation) and total, f"{len(primes)} primes, intersection {sorted(hatada & valuation)}"

    check(3, "Hatada-admissible and valuation-admissible primes are disjoint", 1, body)


def test_criterion_4_hatada_spot_check(check):
    def body():
        checked = 0
        for k in (12, 16, 18, 20, 22, 26):
            for p in primes_up_to(50)[1:]:
                ((a,),) = hecke_matrix(k, p).entries
                if (a - 1 - p) % 8:
                    return False, f"a_{p} for k = {k} fails"
                checked += 1
        return True, f"{checked} eigenvalues satisfy a_p = 1 + p mod 8"

    check(4, "Hatada congruence for dimension-one weights", 5, body)


def test_criterion_5_subgroup_classifications(check):
    def body():
        s4 = sorted((h.order, h.normal) for h in dihedral_subgroups(build_group("S4")))
        a5 = sorted(h.order for h in dihedral_subgroups(build_group("A5")))
        ok = s4 == [(4, False), (4, True), (6, False), (8, False)] and a5 == [4, 6, 10]
        pairs = {tag: sorted((x.D.label, x.I.label) for x in gdi_admissible_pairs(tag)) for tag in ("S4", "A5")}
        ok = ok and pairs == {
            "S4": [("D8", "Z/4"), ("V4 (non-normal)", "Z/2")],
            "A5": [("D10", "Z/5"), ("D6", "Z/3"), ("V4", "Z/2")],
        }
        return ok, f"S4 {s4}, A5 {a5}, pairs {pairs}"

    check(5, "dihedral subgroup classes and admissible pairs", 1, body)


def test_criterion_6_character_decompositions(check):
    def body():
        S4 = build_group("S4")
        I = S4.subgroup(closure([from_cycles(4, (1, 2))], 4))
        first = decompose(induce(table_by_label(I)["sign"], S4))
        D8 = next(h for h in dihedral_subgroups(S4) if h.order == 8).group
        second = decompose(induce(table_by_label(D8)["chi_box"], S4))
        ok = first == {"sgn": 1, "chi5": 1, "chi_perp": 1, "chi_perp_sgn": 2} and second == {
            "chi_perp": 1,
            "chi_perp_sgn": 1,
        }
        return ok, f"{first}; {second}"

    check(6, "induced decompositions in S4", 1, body)


def _reciprocity(G):
    psis = character_table(G)
    count = 0
    for s in G.subgroup_sets:
        H = G.subgroup(s)
        try:
            chis = character_table(H)
        except UnsupportedInstanceError:
            # the class indicators span the same space as the irreducibles
            chis = [ClassFunction.indicator(H, i) for i in range(len(H.classes))]
        for chi in chis:
            ind = induce(chi, G)
            for psi in psis:
                if inner_product(ind, psi) != inner_product(chi, restrict(psi, H)):
                    return False, count
                count += 1
    return True, count


def _orthogonal(G):
    table = character_table(G)
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            s = sum((x * y * n for x, y, n in zip(a.values, b.values, G.class_sizes)), QuadValue(0))
            if s != (G.order if i == j else 0):
                return False
    return True


def test_criterion_7_property_suites(check):
    def body():
        S4, A5 = build_group("S4"), build_group("A5")
        ok_s4, n_s4 = _reciprocity(S4)
        ok_a5, n_a5 = _reciprocity(A5)
        groups = [S4, A5, build_group("S3")] + [build_group("dihedral", d) for d in range(2, 7)]
        orth = all(_orthogonal(G) for G in groups)
        pairs = [x for tag in ("S4", "A5") for x in gdi_admissible_pairs(tag)]
        ad0 = all(ad0_direct(x) == eta_character(x) + w_character(x) for x in pairs)
        mats = {p: hecke_matrix(24, p) for p in (2, 3, 5, 7)}
        hecke = all(mats[p] @ mats[q] == mats[q] @ mats[p] for p in mats for q in mats)
        centralizer = all(square_centralizer_check(x.G, x.I.elements) for x in pairs)
        parts = {
            "reciprocity": ok_s4 and ok_a5,
            "orthogonality": orth,
            "ad0": ad0,
            "hecke-24": hecke,
            "square-centralizer": centralizer,
        }
        detail = ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items())
        return all(parts.values()), f"{detail}; {n_s4 + n_a5} reciprocity checks"

    check(7, "reciprocity, orthogonality, ad0, Hecke commutativity, square centralizer", 10, body)


def test_criterion_8_end_to_end(check):
    def body():
        proc = subprocess.run(
            [sys.executable, "-m", "locind.cli", "verify-example"],
            capture_output=True,
            text=True,
            cwd=ROOT,
        )
        lines = proc.stdout.strip().splitlines()
        ok = proc.returncode == 0 and lines[-1] == "PASS (7/7 stages)" and POSITIVE_VERDICT in proc.stdout
        return ok, lines[-1] if lines else proc.stderr.strip()

    check(8, "verify-example passes every stage", 5, body)
