"""Command-line surface: analyze groups, verify presentations, run the suites.

Exit codes: 0 success, 1 failed verification or selftest, 2 parse error,
3 budget or bound exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import catalog, classify, group_core, presentations, selftest
from .errors import (
    ActionNotAutomorphismError,
    ActionNotHomomorphicError,
    BadParametersError,
    BoundExceededError,
    BudgetExceededError,
    InvalidPermutationError,
    PercohError,
    PresentationSyntaxError,
)

SCHEMA_VERSION = "1"

_PARSE_ERRORS = (PresentationSyntaxError, BadParametersError,
                 InvalidPermutationError, ValueError)
_BUDGET_ERRORS = (BudgetExceededError, BoundExceededError)


def _canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _emit(doc, args) -> None:
    text = _canonical_json(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if not args.pretty:
            return
    if args.pretty:
        _pretty(doc)
    elif not args.out:
        sys.stdout.write(text)


def _pretty(doc) -> None:
    if "family" in doc:
        print(f"group of order {doc['order']}: family {doc['family']}, "
              f"m_H = {doc['m_h']}, "
              f"period = {doc['periodicity']['period']}")
        v = doc["verdicts"]
        print(f"  SFC: {v['sfc']['value']}   chi determines D2: "
              f"{v['chi_determines_d2']['value']}   D2 status: {v['d2_status']['value']}")
        print(f"  minimal Euler characteristic: {v['min_euler_char']['value']}   "
              f"prongs: {v['prong_count']['value']}")
        if doc["bpg_quotients"]:
            tags = ", ".join(f"{t} (kernel {k})" for t, k in doc["bpg_quotients"])
            print(f"  binary polyhedral quotients: {tags}")
    elif "suites" in doc:
        for s in doc["suites"]:
            mark = "pass" if not s["failures"] else "FAIL"
            print(f"  [{mark}] {s['key']}: {s['checked']} checks, "
                  f"{len(s['failures'])} failures")
    elif "result" in doc:
        print(f"{doc['result']}: order {doc['order']} (expected {doc['expected_order']}), "
              f"deficiency {doc['deficiency']}, balanced {doc['balanced']}, "
              f"Euler characteristic {doc['euler_characteristic']}, "
              f"isomorphic {doc['isomorphic']}")
    else:
        print(json.dumps(doc, sort_keys=True, indent=2))


def _report_document(G, source_kind: str, source: str, seconds: float) -> dict:
    r = classify.d2_report(G)
    cite_of = dict(r.notes)

    def verdict(value, key):
        return {"value": value, "cite": key if key in cite_of else None}

    d2_key = next((k for k, _ in r.notes if k.startswith("d2-")), None)
    prong_key = next((k for k, _ in r.notes
                      if k in ("q28-prong-count-two", "prong-count-one",
                               "prong-count-lower-bound")), None)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {"kind": source_kind, "value": source},
        "order": r.order,
        "periodicity": {
            "periodic": r.periodic,
            "period": r.period,
            "per_prime": [[p, tag, pp] for p, tag, pp in r.per_prime],
        },
        "m_h": r.m_h,
        "eichler": r.eichler,
        "bpg_quotients": [[tag, size] for tag, size in r.bpg_quotients],
        "quaternion_quotient_ns": list(r.quaternion_quotient_ns),
        "family": r.family,
        "family_params": dict(r.family_params),
        "verdicts": {
            "sfc": verdict(r.sfc, "sfc-criterion"),
            "chi_determines_d2": verdict(r.chi_determines_d2, "chi-classifies-d2"),
            "d2_status": {"value": r.d2_status, "cite": d2_key},
            "min_euler_char": verdict(r.min_euler_char, "min-euler-char-one"),
            "prong_count": {"value": r.prong_count, "cite": prong_key},
        },
        "notes": [{"key": k, "statement": s} for k, s in r.notes],
        "citations": [{"key": k, "statement": s}
                      for k, s in sorted(set(r.notes))],
        "timing": {"seconds": round(seconds, 6)},
    }
    return doc


def _load_group(args) -> tuple[group_core.GroupTable, str, str]:
    if args.expr:
        return catalog.build_named(args.expr, bound=args.max_order), "expr", args.expr
    if args.perm:
        with open(args.perm, encoding="utf-8") as fh:
            text = fh.read()
        gens = group_core.parse_permutations(text)
        return (group_core.close_generators(gens, bound=args.max_order),
                "perm", args.perm)
    with open(args.pres, encoding="utf-8") as fh:
        text = fh.read()
    P = presentations.load_presentation(text)
    G = presentations.realize_group(P, args.max_cosets)
    if G.order > args.max_order:
        raise BoundExceededError(f"presented group has order {G.order}")
    return G, "pres", args.pres


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    G, kind, source = _load_group(args)
    doc = _report_document(G, kind, source, time.perf_counter() - t0)
    _emit(doc, args)
    return 0


def cmd_verify_presentation(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    P = presentations.load_presentation(text)
    d, balanced, euler = presentations.deficiency(P)
    t0 = time.perf_counter()
    G = presentations.realize_group(P, args.max_cosets)
    expected = catalog.build_named(args.expect, bound=args.max_order)
    ok, _ = group_core.is_isomorphic(G, expected)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "input": {"kind": "pres", "value": args.file, "expect": args.expect},
        "order": G.order,
        "expected_order": expected.order,
        "deficiency": d,
        "balanced": balanced,
        "euler_characteristic": euler,
        "isomorphic": ok,
        "result": "pass" if ok else "fail",
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    _emit(doc, args)
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    results = selftest.run_all(max_order=args.pool_max_order)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "pool_max_order": args.pool_max_order,
        "suites": [{
            "key": r.key,
            "description": r.description,
            "checked": r.checked,
            "failures": r.failures,
        } for r in results],
        "passed": all(r.passed for r in results),
    }
    if args.pretty or not args.out:
        for r in results:
            mark = "pass" if r.passed else "FAIL"
            print(f"[{mark}] {r.key}: {r.checked} checks, {len(r.failures)} failures")
            for f in r.failures[:10]:
                print(f"    {f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_canonical_json(doc))
    return 0 if doc["passed"] else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        descriptions = {
            "C": "C:n        cyclic group of order n",
            "D": "D:n        dihedral group of order 2n",
            "Q": "Q:n        quaternion group of order 4n (n >= 2)",
            "BT": "BT         binary tetrahedral group (order 24)",
            "BO": "BO         binary octahedral group (order 48)",
            "BI": "BI         binary icosahedral group (order 120)",
            "Dd": "Dd:n,m     order 2^n * m metacyclic (n >= 3, m >= 3 odd)",
            "Pp": "Pp:n       order 8 * 3^n twisted quaternion (n >= 2)",
            "Ppp": "Ppp:n      order 48n octahedral-by-cyclic with cyclic "
                   "Sylow 3-subgroup (n >= 3 odd)",
            "Qt": "Qt:n,a,b,c order 2^n*a*b*c triple twist (n >= 3; a,b,c odd coprime)",
        }
        for name in catalog.builtin_atoms():
            print(descriptions[name])
        print("atoms combine with '*' (direct product), e.g. 'Qt:4,1,3,1 * C:5'")
        return 0
    G = catalog.build_named(args.expr, bound=args.max_order)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "expr": args.expr,
        "order": G.order,
        "center_order": group_core.center(G).size,
        "structure": group_core.recognize_structure(G),
        "exponent": group_core.exponent(G),
    }
    _emit(doc, args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="percoh",
        description="finite-group invariants around periodic cohomology")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=int, default=group_core.DEFAULT_ORDER_BOUND,
                        help="group order bound for constructions")
    common.add_argument("--max-cosets", type=int, default=100_000,
                        help="live-coset budget for enumerations")
    common.add_argument("--out", help="write the JSON report to a file")
    common.add_argument("--pretty", action="store_true",
                        help="print a human-readable summary")
    common.add_argument("--seed", type=int, default=0,
                        help="reserved; no randomized algorithms in this version")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common],
                       help="full classification report for a group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr", help="group expression, e.g. 'Q:7' or 'Dd:4,3 * C:5'")
    src.add_argument("--perm", help="file of permutation generators in cycle notation")
    src.add_argument("--pres", help="presentation file")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("verify-presentation", parents=[common],
                       help="realize a presentation and compare with an expected group")
    p.add_argument("file", help="presentation file")
    p.add_argument("--expect", required=True, help="expected group expression")
    p.set_defaults(fn=cmd_verify_presentation)

    p = sub.add_parser("selftest", parents=[common], help="run every cross-module property suite")
    p.add_argument("--pool-max-order", type=int, default=500)
    p.set_defaults(fn=cmd_selftest)

    p = sub.add_parser("catalog", parents=[common], help="list constructors or build one group")
    p.add_argument("action", choices=["list", "build"])
    p.add_argument("expr", nargs="?", help="group expression (for build)")
    p.set_defaults(fn=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "catalog" and args.action == "build" and not args.expr:
        print("catalog build needs a group expression", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _BUDGET_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (PercohError, ActionNotHomomorphicError, ActionNotAutomorphismError) as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
