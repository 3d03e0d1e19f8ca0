"""End-to-end check of the weight-16, p = 59 example, one stage at a time."""

from __future__ import annotations

from dataclasses import dataclass

from .locus import (
    LocalInducingData,
    alpha_ratio_order,
    d_of,
    gdi_admissible_pairs,
    projective_consistency,
)
from .permrep.characters import decompose, induce, table_by_label
from .qseries import eigensystems_mod_p
from .selmer import (
    POSITIVE_VERDICT,
    ClassGroupFixture,
    VanishingVerdict,
    nicely_exceptional,
    theorem2_verdict,
    w_character,
)

P, K = 59, 16


@dataclass(frozen=True)
class Stage:
    name: str
    anchor: str
    expected: str
    observed: str
    ok: bool


def run_stages(fixture: ClassGroupFixture, lbound: int = 1000) -> tuple[list[Stage], VanishingVerdict | None]:
    """Run all seven stages; later stages still run after a failure."""
    stages: list[Stage] = []

    systems = eigensystems_mod_p(K, P, max(lbound, P))
    ok = len(systems) == 1 and systems[0].ap.is_zero()
    stages.append(
        Stage(
            "eigensystem",
            "unique weight-16 level-1 eigenform, a_59 mod 59",
            "1 system with a_59 = 0",
            f"{len(systems)} system(s), a_59 = {', '.join(str(s.ap) for s in systems)}",
            ok,
        )
    )

    d = d_of(P, K)
    ratio = alpha_ratio_order(LocalInducingData.from_weight(P, K))
    stages.append(
        Stage("d", "d = (p+1)/gcd(k-1, p+1)", "d = 4 = order of the ratio character", f"d = {d}, ratio order = {ratio}", d == 4 and ratio == 4)
    )

    pairs = [x for x in gdi_admissible_pairs("S4") if x.d == d]
    datum = pairs[0] if pairs else None
    ok = datum is not None and len(pairs) == 1 and datum.D.label == "D8" and datum.I.label == "Z/4"
    stages.append(
        Stage(
            "gdi-pair",
            "admissible (D, I) in S4 with |I| = 4",
            "(D8, Z/4)",
            "; ".join(x.describe() for x in pairs) or "none",
            ok,
        )
    )

    if datum is not None:
        w = w_character(datum)
        dt = list(table_by_label(datum.D.group, datum.I.elements).values())
        w_parts = decompose(w, dt)
        ind_parts = decompose(induce(w, datum.G))
        ok = w_parts == {"chi_box": 1} and ind_parts == {"chi_perp": 1, "chi_perp_sgn": 1}
        observed = f"W = {w_parts}, Ind_D^G W = {ind_parts}"
    else:
        ok, observed = False, "no datum"
    stages.append(
        Stage(
            "induced-w",
            "W irreducible on D8 and its induction to S4",
            "W = chi_box, Ind = chi_perp + chi_perp_sgn",
            observed,
            ok,
        )
    )

    if systems:
        cons = projective_consistency(systems[0], lbound)
        values = {u.c0 for u in cons.hits if u.in_prime_field()}
        ok = cons.s4_consistent and 2 in values
        observed = f"values {sorted(values)}; " + ", ".join(cons.summary())
    else:
        ok, observed = False, "no eigensystem"
    stages.append(
        Stage(
            "u-statistic",
            f"a_l^2 / l^15 mod 59 for primes l <= {lbound}",
            "all in {0, 1, 2, 4} with 2 attained",
            observed,
            ok,
        )
    )

    ne = nicely_exceptional(fixture)
    stages.append(
        Stage(
            "fixture",
            "class number of the S4 field for p = 59",
            "nicely exceptional = True",
            f"nicely exceptional = {ne} (p = {fixture.p}, group {fixture.tag})",
            ne is True and fixture.p == P and fixture.tag == "S4",
        )
    )

    verdict = None
    if datum is not None and fixture.tag == datum.tag:
        verdict = theorem2_verdict(fixture, datum)
        ok = verdict.theorem2 == POSITIVE_VERDICT and verdict.tangent_vanishes
        observed = verdict.theorem2
    else:
        ok, observed = False, "not evaluated"
    stages.append(Stage("theorem2", "tangent-space vanishing for the (D8, Z/4) datum", POSITIVE_VERDICT, observed, ok))
    return stages, verdict
