"""Command-line front end.

Exit codes: 0 success, 2 usage/input, 3 precision or resource limit,
4 fixture/data, 5 verification mismatch.
"""

from __future__ import annotations

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import report
from .arith import is_prime, primes_up_to
from .errors import FixtureError, InvalidInputError, LocindError, ResourceLimitError, VerificationMismatch
from .locus import classify, gdi_admissible_pairs
from .permrep.characters import character_table, render_table
from .permrep.groups import build_group, cycle_str
from .qseries import ap_zero_detect, cusp_dimension
from .selmer import bundled_fixture, load_fixture, theorem2_verdict
from .verify import run_stages

DEFAULT_CEILING = 300


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(report.dumps(doc))
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _timings(args, **kw) -> dict | None:
    return None if args.no_timings else kw


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args) -> int:
    p, k = args.p, args.k
    if k < 12 or k % 2:
        raise InvalidInputError(f"k must be an even integer >= 12, got {k}")
    if args.require_theorem2 and not args.fixture:
        raise FixtureError("--require-theorem2 needs --fixture")
    t0 = time.perf_counter()
    r = classify(p, k, args.lbound, args.precision_override)
    t1 = time.perf_counter()
    body = {"report": report.locus_json(r)}
    lines = report.locus_text(r)
    verdicts = []
    if args.fixture:
        fixture = load_fixture(args.fixture)
        if fixture.p != p:
            raise FixtureError(f"fixture is for p = {fixture.p}, not {p}")
        data = [x for x in gdi_admissible_pairs(fixture.tag) if x.d == r.d]
        if not data:
            body["theorem2"] = {"applicable": False, "reason": f"no admissible {fixture.tag} pair with |I| = {r.d}"}
            lines.append(f"  theorem 2: not applicable (no admissible {fixture.tag} pair with |I| = {r.d})")
            if args.require_theorem2:
                raise FixtureError("theorem 2 required but not applicable to this (p, k)")
        else:
            for datum in data:
                v = theorem2_verdict(fixture, datum)
                verdicts.append(v)
                lines.append(f"  theorem 2 for {datum.describe()}:")
                lines.extend(report.verdict_text(v))
            body["theorem2"] = {
                "applicable": True,
                "verdicts": [{"datum": report.datum_json(x), **report.verdict_json(v)} for x, v in zip(data, verdicts)],
            }
    else:
        body["theorem2"] = None
    t2 = time.perf_counter()
    command = {"name": "classify", "p": p, "k": k, "fixture": args.fixture, "lbound": args.lbound}
    _emit(args, report.document(command, body, _timings(args, classify=t1 - t0, theorem2=t2 - t1)), lines)
    return 0


# ---------------------------------------------------------------------------
# scan


def scan_pairs(p_max: int, k_max: int) -> list[tuple[int, int]]:
    """Odd primes p <= p_max and even weights 12 <= k <= min(k_max, p + 1) with S_k != 0."""
    return [
        (p, k)
        for p in primes_up_to(p_max)
        if p > 2
        for k in range(12, min(k_max, p + 1) + 1, 2)
        if cusp_dimension(k) > 0
    ]


def _scan_one(pk: tuple[int, int]) -> tuple[int, int, int, bool]:
    p, k = pk
    return p, k, cusp_dimension(k), ap_zero_detect(k, p)


def run_scan(
    p_max: int, k_max: int = 30, jobs: int = 1, ceiling: int = DEFAULT_CEILING
) -> tuple[list[dict], int]:
    if p_max > ceiling:
        raise ResourceLimitError(
            f"p_max = {p_max} exceeds the ceiling {ceiling}; pass --ceiling {p_max} to accept the longer run"
        )
    if jobs < 1:
        raise InvalidInputError("--jobs must be >= 1")
    pairs = scan_pairs(p_max, k_max)
    if jobs == 1:
        results = [_scan_one(pk) for pk in pairs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_one, pairs, chunksize=4))
    results.sort()
    return [{"p": p, "k": k, "dim": dim} for p, k, dim, hit in results if hit], len(pairs)


def cmd_scan(args) -> int:
    t0 = time.perf_counter()
    hits, checked = run_scan(args.p_max, args.k_max, args.jobs, args.ceiling)
    t1 = time.perf_counter()
    command = {
        "name": "scan",
        "p_max": args.p_max,
        "k_policy": f"even 12 <= k <= min({args.k_max}, p + 1)",
    }
    body = {"pairs_checked": checked, "hits": hits}
    lines = [f"checked {checked} (p, k) pairs with {command['k_policy']}", f"a_p = 0 mod p hits: {len(hits)}"]
    lines += [f"  p = {h['p']}, k = {h['k']} (dim {h['dim']})" for h in hits]
    _emit(args, report.document(command, body, _timings(args, scan=t1 - t0)), lines)
    return 0


# ---------------------------------------------------------------------------
# chars


def cmd_chars(args) -> int:
    tag = args.group
    if tag in ("dihedral", "cyclic"):
        if args.d is None:
            raise InvalidInputError(f"{tag} needs --d")
        G = build_group(tag, args.d)
    else:
        G = build_group(tag)
    table = character_table(G)
    doc = report.document(
        {"name": "chars", "group": tag, "d": args.d},
        {
            "order": G.order,
            "classes": [{"representative": cycle_str(r), "size": s} for r, s in zip(G.class_reps, G.class_sizes)],
            "characters": [{"label": c.label, "values": [str(v) for v in c.values]} for c in table],
        },
    )
    _emit(args, doc, [f"{G.tag or tag}: order {G.order}, {len(G.classes)} classes", render_table(G, table)])
    return 0


# ---------------------------------------------------------------------------
# verify-example


def cmd_verify(args) -> int:
    fixture = load_fixture(args.fixture) if args.fixture else bundled_fixture(59)
    t0 = time.perf_counter()
    stages, verdict = run_stages(fixture, args.lbound)
    t1 = time.perf_counter()
    passed = all(s.ok for s in stages)
    body = {
        "status": "PASS" if passed else "FAIL",
        "stages": [
            {"stage": s.name, "anchor": s.anchor, "expected": s.expected, "observed": s.observed, "ok": s.ok}
            for s in stages
        ],
        "theorem2": report.verdict_json(verdict) if verdict else None,
    }
    lines = [f"[{'ok' if s.ok else 'FAIL'}] {i}. {s.name}: {s.observed}" for i, s in enumerate(stages, 1)]
    lines.append(f"{'PASS' if passed else 'FAIL'} ({sum(s.ok for s in stages)}/{len(stages)} stages)")
    command = {"name": "verify-example", "fixture": args.fixture or "bundled:p59", "lbound": args.lbound}
    _emit(args, report.document(command, body, _timings(args, verify=t1 - t0)), lines)
    if not passed:
        bad = next(s for s in stages if not s.ok)
        raise VerificationMismatch(bad.name, f"expected {bad.expected}; observed {bad.observed} [{bad.anchor}]")
    return 0


# ---------------------------------------------------------------------------


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--no-timings", action="store_true", help="omit wall-clock timings from JSON output")

    parser = argparse.ArgumentParser(prog="locind", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="classify one (p, k)")
    c.add_argument("--p", type=_prime, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--fixture", help="class-number fixture (JSON) enabling the theorem-2 check")
    c.add_argument("--require-theorem2", action="store_true")
    c.add_argument("--precision-override", type=int, help="q-expansion precision to use instead of the minimum")
    c.add_argument("--lbound", type=int, help="prime bound for the u-statistic")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("scan", parents=[common], help="list (p, k) with a_p = 0 mod p")
    s.add_argument("--p-max", type=int, required=True)
    s.add_argument("--k-max", type=int, default=30)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--ceiling", type=int, default=DEFAULT_CEILING)
    s.set_defaults(func=cmd_scan)

    ch = sub.add_parser("chars", parents=[common], help="print a character table")
    ch.add_argument("group", choices=("S4", "A5", "S3", "A4", "dihedral", "cyclic"))
    ch.add_argument("--d", type=int)
    ch.set_defaults(func=cmd_chars)

    v = sub.add_parser("verify-example", parents=[common], help="check the p = 59, k = 16 example end to end")
    v.add_argument("--fixture", help="defaults to the bundled p = 59 fixture")
    v.add_argument("--lbound", type=int, default=1000)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LocindError as exc:
        print(f"locind: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
