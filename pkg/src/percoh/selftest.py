"""Cross-module property suites over the built-in pool.

Each suite checks one classification fact or structural invariant across
every applicable pool member and reports failures as strings. The m_H
function is injectable so the test suite can verify that a corrupted
value is actually caught.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import catalog, chartab, presentations
from ._numutil import p_part, prime_divisors
from .classify import (
    _bpg_quotient_details,
    all_quotients,
    classify_family,
    eichler_status,
    quaternion_quotient_ns,
    relative_eichler_check,
)
from .group_core import (
    GroupTable,
    cyclic_table,
    dihedral_table,
    direct_product,
    has_elementary_abelian_p2,
    is_isomorphic,
    normal_subgroups,
    quaternion_table,
    recognize_structure,
    semidirect_product,
    subgroup_of_whole,
    sylow_subgroup,
    trivial_subgroup,
)
from .periodicity import cohomological_period, has_periodic_cohomology, periodicity_report
from .pool import PoolEntry, build_pool


@dataclass
class SuiteResult:
    key: str
    description: str
    checked: int
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures


Context = dict


def _mh(ctx: Context) -> Callable[[GroupTable], int]:
    return ctx.get("mh", chartab.m_quaternionic)


# ---------------------------------------------------------------------------
# suites


def suite_table_axioms(pool, ctx):
    failures = []
    for e in pool:
        try:
            e.table.validate()
        except Exception as exc:
            failures.append(f"{e.name}: {exc}")
    return len(pool), failures


def suite_sylow_structure(pool, ctx):
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        for p in prime_divisors(G.order) or []:
            checked += 1
            S = sylow_subgroup(G, p)
            if S.size != p_part(G.order, p):
                failures.append(f"{e.name}, p={p}: size {S.size}")
                continue
            if 0 not in S.members:
                failures.append(f"{e.name}, p={p}: identity missing")
    return checked, failures


def suite_sylow_order_identity(pool, ctx):
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        for N, Q in all_quotients(G):
            Ntab, _ = N.table()
            for p in prime_divisors(G.order):
                checked += 1
                a = sylow_subgroup(G, p).size
                b = sylow_subgroup(Ntab, p).size
                c = sylow_subgroup(Q, p).size
                if a != b * c:
                    failures.append(f"{e.name}, |N|={N.size}, p={p}: {a} != {b}*{c}")
    return checked, failures


def suite_quotient_dihedral_quaternionic(pool, ctx):
    checked = 0
    failures = []
    for n in range(3, 7):
        for label, T in ((f"D_{1 << n}", dihedral_table(1 << (n - 1))),
                         (f"Q_{1 << n}", quaternion_table(1 << (n - 2)))):
            for N, Q in all_quotients(T):
                if N.size in (1, T.order):
                    continue
                checked += 1
                tag = recognize_structure(Q)
                ok = (Q.order == 2 and tag == "cyclic") or \
                     (tag == "dihedral" and Q.order & (Q.order - 1) == 0
                      and 4 <= Q.order <= (1 << (n - 1)))
                if not ok:
                    failures.append(f"{label}/N of size {N.size}: got {tag} of order {Q.order}")
    return checked, failures


def _all_subgroups_exhaustive(G: GroupTable):
    """Every subgroup, by BFS extension of known subgroups by single elements."""
    from . import kernels

    seen = {frozenset([0])}
    work = [frozenset([0])]
    while work:
        S = work.pop()
        for x in range(1, G.order):
            if x in S:
                continue
            T = frozenset(kernels.subgroup_closure(G.order, G.mul_flat, list(S) + [x]))
            if T not in seen:
                seen.add(T)
                work.append(T)
    return seen


def suite_normals_vs_exhaustive(pool, ctx):
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        if G.order > 60:
            continue
        checked += 1
        mul = G.mul_array
        inv = G.inv_array
        normals = 0
        for S in _all_subgroups_exhaustive(G):
            if all(int(mul[mul[g, s], inv[g]]) in S for g in range(G.order) for s in S):
                normals += 1
        got = len(normal_subgroups(G))
        if got != normals:
            failures.append(f"{e.name}: {got} normal subgroups, exhaustive scan finds {normals}")
    return checked, failures


def _iso_exhaustive(A: GroupTable, B: GroupTable) -> bool:
    """Unpruned search over every generator-image assignment (test oracle)."""
    from .group_core import _extend_generator_map, _small_generating_set
    from itertools import product

    if A.order != B.order:
        return False
    gens = _small_generating_set(A)
    if not gens:
        return True
    for images in product(range(B.order), repeat=len(gens)):
        if _extend_generator_map(A, B, gens, images) is not None:
            return True
    return False


def suite_iso_vs_exhaustive(pool, ctx):
    checked = 0
    failures = []
    small = [e for e in pool if e.table.order <= 16]
    for i, a in enumerate(small):
        for b in small[i:]:
            checked += 1
            fast = is_isomorphic(a.table, b.table)[0]
            slow = _iso_exhaustive(a.table, b.table)
            if fast != slow:
                failures.append(f"{a.name} vs {b.name}: fast {fast}, exhaustive {slow}")
    return checked, failures


def suite_recognize_q2n_two_ways(pool, ctx):
    checked = 0
    failures = []
    for n in range(3, 7):
        checked += 1
        formula = quaternion_table(1 << (n - 2))
        pres = presentations.realize_group(
            presentations.parse_presentation(
                presentations.quaternion_presentation(1 << (n - 2))), 1 << (n + 2))
        ta = recognize_structure(formula)
        tb = recognize_structure(pres)
        if not (ta == tb == "generalized_quaternion"):
            failures.append(f"order {1 << n}: formula {ta}, presentation {tb}")
    return checked, failures


def suite_periodic_iff_no_cp2(pool, ctx):
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        checked += 1
        sylow_side = has_periodic_cohomology(G)
        cp2_side = not any(has_elementary_abelian_p2(G, p) for p in prime_divisors(G.order))
        if sylow_side != cp2_side:
            failures.append(f"{e.name}: sylow criterion {sylow_side}, C_p^2 scan {cp2_side}")
    return checked, failures


def suite_family_values(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for e in pool:
        if e.family is None:
            continue
        checked += 1
        G = e.table
        rep = periodicity_report(G)
        if not (rep.periodic and 4 % rep.period == 0):
            failures.append(f"{e.name}: period {rep.period}")
            continue
        got = mh(G)
        if got != e.expected_m_h:
            failures.append(f"{e.name}: m_H {got}, expected {e.expected_m_h}")
            continue
        try:
            fam = classify_family(G)
        except Exception as exc:
            failures.append(f"{e.name}: classify failed: {exc}")
            continue
        if fam != e.family:
            failures.append(f"{e.name}: classified {fam}, expected {e.family}")
    return checked, failures


_PRODUCT_CASES = [("Q:2", 3), ("Q:2", 5), ("D:3", 5), ("C:4", 3), ("C:5", 2),
                  ("BT", 5), ("Dd:3,3", 5), ("Q:7", 5), ("Qt:4,1,3,1", 5)]


def suite_period_product_rule(pool, ctx):
    checked = 0
    failures = []
    for expr, k in _PRODUCT_CASES:
        G = catalog.build_named(expr)
        if math.gcd(G.order, k) != 1 or k < 2:
            continue
        checked += 1
        P = direct_product(G, cyclic_table(k))
        want = math.lcm(cohomological_period(G), 2)
        got = cohomological_period(P)
        if got != want:
            failures.append(f"{expr} x C_{k}: period {got}, expected {want}")
    return checked, failures


def suite_mh_product_invariance(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for expr, k in _PRODUCT_CASES:
        G = catalog.build_named(expr)
        if math.gcd(G.order, k) != 1:
            continue
        checked += 1
        P = direct_product(G, cyclic_table(k))
        if mh(P) != mh(G):
            failures.append(f"{expr} x C_{k}: m_H changed {mh(G)} -> {mh(P)}")
    return checked, failures


def suite_mh_metacyclic_values(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for n in (3, 4, 5):
        for m in (3, 5):
            checked += 1
            G = catalog.metacyclic_quaternionic(n, m)
            if mh(G) != (m - 1) // 2:
                failures.append(f"D(2^{n},{m}): m_H {mh(G)} != {(m - 1) // 2}")
    return checked, failures


def suite_character_identities(pool, ctx):
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        checked += 1
        try:
            T = chartab.character_summary(G)
        except Exception as exc:
            failures.append(f"{e.name}: {exc}")
            continue
        if sum(d * d for d in T.degrees) != G.order:
            failures.append(f"{e.name}: degree squares do not sum to {G.order}")
        invol = sum(1 for x in range(G.order) if G.mul(x, x) == 0)
        if sum(nu * d for nu, d in zip(T.fs, T.degrees)) != invol:
            failures.append(f"{e.name}: indicator sum rule fails")
        p = T.p
        C = T.classes
        istar = list(C.inverse_class)
        for r, row in enumerate(T.values):
            s = sum(C.sizes[i] * row[i] * T.values[r][istar[i]] for i in range(C.k)) % p
            if s != G.order % p:
                failures.append(f"{e.name}: row {r} orthogonality fails")
                break
        if max(T.degrees) == 1 and chartab.m_quaternionic(G) != 0:
            failures.append(f"{e.name}: abelian group with nonzero m_H")
    return checked, failures


def suite_eichler_crosscheck(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        if not has_periodic_cohomology(G):
            continue
        checked += 1
        try:
            ok = eichler_status(G)
        except Exception as exc:
            failures.append(f"{e.name}: {exc}")
            continue
        if ok != (mh(G) == 0):
            failures.append(f"{e.name}: eichler {ok} but m_H {mh(G)}")
    return checked, failures


def suite_cor_quot(pool, ctx):
    """m_H <= 2 iff no quaternion quotient of order >= 24; for non-Eichler
    members also iff a binary polyhedral quotient with equal m_H <= 2
    exists (the literal reading without the non-Eichler hypothesis would
    contradict the Eichler criterion, a known ambiguity)."""
    mh = _mh(ctx)
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        if not has_periodic_cohomology(G):
            continue
        checked += 1
        small = mh(G) <= 2
        big_quot = any(n >= 6 for n in quaternion_quotient_ns(G))
        if small != (not big_quot):
            failures.append(f"{e.name}: m_H {mh(G)} but quaternion ns "
                            f"{sorted(quaternion_quotient_ns(G))}")
            continue
        if mh(G) > 0:
            has_equal = any(mh(Q) == mh(G) <= 2 for _, _, Q in _bpg_quotient_details(G))
            if small != has_equal:
                failures.append(f"{e.name}: m_H {mh(G)}, equal-m_H quotient {has_equal}")
    return checked, failures


def suite_main3(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        if not has_periodic_cohomology(G) or mh(G) == 0:
            continue
        checked += 1
        big_quot = any(n >= 6 for n in quaternion_quotient_ns(G))
        equal = any(mh(Q) == mh(G) for _, _, Q in _bpg_quotient_details(G))
        if not (big_quot or equal):
            failures.append(f"{e.name}: neither a large quaternion quotient "
                            f"nor an equal-m_H binary polyhedral quotient")
    return checked, failures


def suite_exceptional_quotients(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    binary_tags = ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral")
    for e in pool:
        G = e.table
        if not has_periodic_cohomology(G):
            continue
        hits = [(tag, Q) for _, tag, Q in _bpg_quotient_details(G) if tag in binary_tags]
        if not hits:
            continue
        checked += 1
        for tag, Q in hits:
            if mh(G) != mh(Q):
                failures.append(f"{e.name}: m_H {mh(G)} != m_H of {tag} quotient {mh(Q)}")
        if any(n >= 6 for n in quaternion_quotient_ns(G)):
            failures.append(f"{e.name}: exceptional quotient next to a large "
                            f"quaternion quotient")
    return checked, failures


def suite_mh_ge_3(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        rep = periodicity_report(G)
        if not (rep.periodic and 4 % rep.period == 0) or mh(G) < 3:
            continue
        checked += 1
        if any(n >= 7 for n in quaternion_quotient_ns(G)):
            continue
        k = G.order // 24
        if G.order % 24 == 0 and math.gcd(k, 24) == 1 and \
                is_isomorphic(G, direct_product(quaternion_table(6), cyclic_table(k)))[0]:
            continue
        failures.append(f"{e.name}: m_H {mh(G)} but neither Q_4n (n >= 7) quotient "
                        f"nor Q_24 x C_k")
    return checked, failures


def suite_classify_complete(pool, ctx):
    mh = _mh(ctx)
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        rep = periodicity_report(G)
        if not (rep.periodic and 4 % rep.period == 0) or mh(G) > 2:
            continue
        checked += 1
        try:
            fam = classify_family(G)
        except Exception as exc:
            failures.append(f"{e.name}: {exc}")
            continue
        if fam not in ("I", "II", "III", "IV", "V", "VI"):
            failures.append(f"{e.name}: unexpected family {fam}")
    return checked, failures


def suite_relative_eichler(pool, ctx):
    checked = 0
    failures = []
    for e in pool:
        G = e.table
        if not has_periodic_cohomology(G) or G.order > 300:
            continue
        for N in normal_subgroups(G):
            checked += 1
            try:
                lhs, rhs = relative_eichler_check(G, N)
            except Exception as exc:
                failures.append(f"{e.name}, |N|={N.size}: {exc}")
                continue
            if lhs != rhs:
                failures.append(f"{e.name}, |N|={N.size}: {lhs} vs {rhs}")
    return checked, failures


_TC_CASES = [
    ("<x | x^5>", 5),
    ("<x,y | x^7 = y^2, x*y*x = y>", 28),
    ("<x,y | x^7 = y^2, y^-1*x*y*x^2 = x^3*y^-1*x^2*y>", 28),
    ("<x,y | x^3, y^2, x*y*x*y>", 6),
    ("<s,t | s^3 = t^4, t^4 = s*t*s*t>", 48),
    ("<s,t | s^3 = t^5, t^5 = s*t*s*t>", 120),
    ("<x,y | y*x^3*y = x^3, x*y*x = y^3>", 48),
    ("<x,y | y*x^5*y = x^5, x*y*x = y^3>", 80),
    ("<x,y | y^5*x^3*y^5 = x^3, x*y*x = y>", 120),
]


def suite_tc_strategy_agreement(pool, ctx):
    checked = 0
    failures = []
    for text, want in _TC_CASES:
        checked += 1
        P = presentations.parse_presentation(text)
        hlt = presentations.todd_coxeter(P, 20000, strategy="hlt").coset_count
        fel = presentations.todd_coxeter(P, 20000, strategy="felsch").coset_count
        if not (hlt == fel == want):
            failures.append(f"{text}: hlt {hlt}, felsch {fel}, expected {want}")
    return checked, failures


def suite_presentation_q4n(pool, ctx):
    checked = 0
    failures = []
    for n in range(2, 11):
        checked += 1
        P = presentations.parse_presentation(presentations.quaternion_presentation(n))
        G = presentations.realize_group(P, 16 * n)
        if not is_isomorphic(G, quaternion_table(n))[0]:
            failures.append(f"order {4 * n}: presentation and table differ")
    return checked, failures


def suite_extension_split_iso(pool, ctx):
    checked = 0
    failures = []
    cases = [(cyclic_table(2), 3, [1, 1]),
             (quaternion_table(2), 5, [1] * 8)]
    BO, action = catalog._octahedral_sign_action(3)
    cases.append((BO, 3, list(action)))
    for Q, n, action in cases:
        checked += 1
        classes = catalog.two_cocycle_classes(Q, n, action)
        triv = [c for c in classes if c.is_trivial_class]
        if len(triv) != 1:
            failures.append(f"|Q|={Q.order}, n={n}: {len(triv)} trivial classes")
            continue
        ext = catalog.build_extension(triv[0])
        maps = [[(u * x) % n for x in range(n)] for u in action]
        semi = semidirect_product(cyclic_table(n), Q, [maps[q] for q in range(Q.order)])
        if not is_isomorphic(ext, semi)[0]:
            failures.append(f"|Q|={Q.order}, n={n}: split extension not the "
                            f"semidirect product")
    # Schur-Zassenhaus at the Sylow level for fibers coprime to 3
    for n in (5, 7):
        checked += 1
        exts = catalog._octahedral_extensions(n)
        base = exts[0][1]
        if not all(is_isomorphic(G, base)[0] for _, G in exts[1:]):
            failures.append(f"n={n}: non-split class yields a different group")
    return checked, failures


def suite_relative_checks_misc(pool, ctx):
    """Trivial and full subgroups behave correctly in the relative check."""
    checked = 0
    failures = []
    for e in pool[:10]:
        G = e.table
        if not has_periodic_cohomology(G):
            continue
        checked += 1
        lhs, rhs = relative_eichler_check(G, trivial_subgroup(G))
        if not (lhs and rhs):
            failures.append(f"{e.name}: trivial subgroup check")
    return checked, failures


SUITES: list[tuple[str, str, Callable]] = [
    ("table-axioms", "group axioms hold on every pool table", suite_table_axioms),
    ("sylow-structure", "Sylow subgroups have the exact p-part order", suite_sylow_structure),
    ("sylow-order-identity", "|Syl_p(G)| = |Syl_p(N)| * |Syl_p(G/N)| on the quotient sweep",
     suite_sylow_order_identity),
    ("dihedral-quaternion-quotients", "proper quotients of 2-power dihedral and "
     "quaternion groups are C_2 or smaller dihedral", suite_quotient_dihedral_quaternionic),
    ("normals-vs-exhaustive", "normal subgroup count matches an exhaustive scan (order <= 60)",
     suite_normals_vs_exhaustive),
    ("iso-vs-exhaustive", "isomorphism agrees with unpruned search (order <= 16)",
     suite_iso_vs_exhaustive),
    ("recognize-q2n-two-ways", "quaternion 2-groups recognized identically from "
     "presentation and formula builds", suite_recognize_q2n_two_ways),
    ("periodic-iff-no-cp2", "Sylow periodicity criterion matches brute-force C_p^2 detection",
     suite_periodic_iff_no_cp2),
    ("family-values", "family members: period divides 4, expected m_H, expected family tag",
     suite_family_values),
    ("period-product-rule", "period(G x C_k) = lcm(period(G), 2) for coprime k >= 2",
     suite_period_product_rule),
    ("character-identities", "degree squares, indicator sum rule, row orthogonality",
     suite_character_identities),
    ("mh-product-invariance", "m_H unchanged under coprime cyclic products",
     suite_mh_product_invariance),
    ("mh-metacyclic-values", "m_H(D(2^n, m)) = (m-1)/2 for n in 3..5, m in {3,5}",
     suite_mh_metacyclic_values),
    ("eichler-iff-no-bpg", "m_H = 0 iff no binary polyhedral quotient",
     suite_eichler_crosscheck),
    ("cor-quot-equivalence", "m_H <= 2 iff no quaternion quotient of order >= 24",
     suite_cor_quot),
    ("main3-disjunction", "non-Eichler periodic members have a large quaternion "
     "quotient or an equal-m_H binary polyhedral quotient", suite_main3),
    ("exceptional-quotients", "binary tetrahedral/octahedral/icosahedral quotients "
     "force equal m_H and exclude large quaternion quotients", suite_exceptional_quotients),
    ("mh-ge-3-structure", "4-periodic members with m_H >= 3 have a Q_4n (n >= 7) "
     "quotient or are Q_24 x C_k", suite_mh_ge_3),
    ("classify-complete", "no unclassified verdicts on 4-periodic members with m_H <= 2",
     suite_classify_complete),
    ("relative-eichler", "kernel containment matches m_H preservation on quotients",
     suite_relative_eichler),
    ("relative-trivial", "trivial subgroup passes the relative check", suite_relative_checks_misc),
    ("tc-strategy-agreement", "HLT and Felsch agree on coset counts", suite_tc_strategy_agreement),
    ("presentation-q4n", "standard quaternion presentations realize the catalog tables",
     suite_presentation_q4n),
    ("extension-split-iso", "trivial cocycle class gives the semidirect product; "
     "coprime fibers collapse to the split class", suite_extension_split_iso),
]


def run_all(max_order: int = 500, keys: list[str] | None = None,
            mh: Callable[[GroupTable], int] | None = None) -> list[SuiteResult]:
    pool = build_pool(max_order)
    ctx: Context = {}
    if mh is not None:
        ctx["mh"] = mh
    out = []
    for key, description, fn in SUITES:
        if keys is not None and key not in keys:
            continue
        checked, failures = fn(pool, ctx)
        out.append(SuiteResult(key, description, checked, failures))
    return out
