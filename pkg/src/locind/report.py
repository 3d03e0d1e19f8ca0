"""Deterministic JSON and plain-text rendering of reports.

Dicts are built in a fixed key order and dumped without sorting, so identical
inputs give byte-identical output.  F_{p^2} values are written as [c0, c1]
next to the non-residue that defines the basis.
"""

from __future__ import annotations

import json

from .arith import Fp2
from .locus import ConsistencyReport, DecompositionDatum, LocusReport, Theorem1Result
from .permrep.groups import cycle_str
from .qseries import EigenSystem
from .selmer import VanishingVerdict

SCHEMA_VERSION = "locind.report/1"


def fp2_json(x: Fp2) -> list[int]:
    return [x.c0, x.c1]


def eigensystem_json(s: EigenSystem) -> dict:
    return {
        "residue_degree": s.residue_degree,
        "nonresidue": s.nonresidue,
        "t2_eigenvalue": fp2_json(s.t2_root),
        "a_p": fp2_json(s.ap),
        "a": {str(ell): fp2_json(v) for ell, v in sorted(s.a.items())},
    }


def datum_json(d: DecompositionDatum) -> dict:
    return {
        "group": d.tag,
        "D": d.D.label,
        "I": d.I.label,
        "d": d.d,
        "I_generator": cycle_str(d.I.generator()),
        "admissible": d.admissible,
        "reasons": list(d.reasons),
    }


def theorem1_json(t: Theorem1Result) -> dict:
    return {
        "verdict": t.verdict,
        "obstructions": [{"code": o.code, "detail": o.detail, "reason": o.reason} for o in t.obstructions],
    }


def consistency_json(c: ConsistencyReport) -> dict:
    return {
        "ell_bound": c.ell_bound,
        "primes_used": len(c.u),
        "values_hit": [{"u": fp2_json(u), "count": n} for u, n in c.hits.items()],
        "flags": c.summary(),
    }


def locus_json(r: LocusReport) -> dict:
    out = {
        "p": r.p,
        "k": r.k,
        "d": r.d,
        "degenerate": r.degenerate,
        "v2_d": r.v2_d,
        "v2_p_plus_1": r.v2_p_plus_1,
        "hatada_residue": r.hatada_residue,
        "ap_zero_mod_p": r.ap_zero_mod_p,
        "admissible_pairs": [datum_json(d) for d in r.admissible_pairs],
        "theorem1": theorem1_json(r.theorem1),
    }
    if r.eigensystems is not None:
        out["eigensystems"] = [eigensystem_json(s) for s in r.eigensystems]
    else:
        out["eigensystems"] = None
        out["eigensystem_note"] = r.eigensystem_note
    out["consistency"] = [consistency_json(c) for c in r.consistency] if r.consistency is not None else None
    return out


def verdict_json(v: VanishingVerdict) -> dict:
    return {
        "cond1": {
            "status": v.cond1_status,
            "certificates": [c.ident for c in v.cond1_certificates],
        },
        "cond2": v.cond2,
        "hom_dimension": v.hom_dimension,
        "worst_case_hom_dimension": v.worst_case_hom_dimension,
        "nicely_exceptional": v.nicely_exceptional,
        "required_fields": [
            {"label": s.label, "degree": s.degree, "coprime_to_p": s.coprime, "provenance": s.provenance}
            for s in v.field_statuses
        ],
        "tangent_vanishes": v.tangent_vanishes,
        "theorem2": v.theorem2,
    }


def document(command: dict, body: dict, timings: dict | None = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "command": command}
    doc.update(body)
    if timings is not None:
        doc["timings"] = {k: round(v, 4) for k, v in timings.items()}
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# text


def locus_text(r: LocusReport) -> list[str]:
    lines = [
        f"p = {r.p}, k = {r.k}",
        f"  d = {r.d}  (v2(d) = {r.v2_d}, v2(p+1) = {r.v2_p_plus_1})",
        f"  (1 + p) mod 8 = {r.hatada_residue}",
        f"  a_p = 0 mod p for some eigensystem: {'yes' if r.ap_zero_mod_p else 'no'}",
    ]
    if r.admissible_pairs:
        lines.append("  admissible (D, I) with |I| = d: " + "; ".join(d.describe() for d in r.admissible_pairs))
    else:
        lines.append("  admissible (D, I) with |I| = d: none")
    lines.append(f"  theorem 1: {r.theorem1.verdict}")
    for o in r.theorem1.obstructions:
        lines.append(f"    obstruction {o}")
    if r.eigensystems is not None:
        for i, s in enumerate(r.eigensystems):
            lines.append(f"  eigensystem {i}: F_p^{s.residue_degree}, a_p = {s.ap}, T_2 eigenvalue {s.t2_root}")
    elif r.eigensystem_note:
        lines.append(f"  eigensystems: {r.eigensystem_note}")
    for c in r.consistency or ():
        hits = ", ".join(f"{u}:{n}" for u, n in c.hits.items())
        lines.append(f"  u-statistic (l <= {c.ell_bound}): {{{hits}}}; " + ", ".join(c.summary()))
    return lines


def verdict_text(v: VanishingVerdict) -> list[str]:
    lines = [
        f"  cond1: {v.cond1_status} ({len(v.cond1_certificates)} square-centralizer certificates)",
        f"  nicely exceptional: {v.nicely_exceptional}",
    ]
    for s in v.field_statuses:
        lines.append(f"    {s.label} (degree {s.degree}): coprime={s.coprime} [{s.provenance}]")
    lines.append(f"  cond2: {v.cond2} (hom dimension {v.hom_dimension})")
    lines.append(f"  theorem 2: {v.theorem2}")
    return lines
