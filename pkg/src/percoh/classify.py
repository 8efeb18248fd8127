"""Quotient analysis, classification families, and the verdict report.

This module mixes computation (quotient scans, family matching) with
verdicts that are looked up from established classification results keyed
on computed invariants. Every looked-up verdict carries a citation key so
computed facts and cited facts can never be confused; the key index lives
in CITATIONS.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ._numutil import divisors, odd_part, p_part, prime_divisors
from .catalog import (
    binary_icosahedral,
    binary_octahedral,
    binary_tetrahedral,
    metacyclic_quaternionic,
    octahedral_cyclic_extension,
    quaternion_octic_twist,
    quaternionic_triple_twist,
)
from .chartab import m_quaternionic
from .errors import PercohError, PropositionViolationError, UnclassifiedFamilyError
from .group_core import (
    GroupTable,
    SubgroupSet,
    center,
    cyclic_table,
    dihedral_table,
    element_orders,
    is_isomorphic,
    normal_subgroups,
    quaternion_table,
    quotient,
    recognize_structure,
    sylow_subgroup,
)
from .periodicity import periodicity_report

CITATIONS: dict[str, str] = {
    "sfc-criterion": (
        "For a finite group with periodic cohomology, the integral group ring "
        "has stably free cancellation exactly when the quaternionic count m_H "
        "is at most 2, equivalently when no quotient is a quaternion group of "
        "order 4n with n >= 6."),
    "chi-classifies-d2": (
        "Over a group with 4-periodic cohomology, cohomologically "
        "2-dimensional complexes are determined up to polarised homotopy by "
        "their Euler characteristic exactly when m_H is at most 2."),
    "min-euler-char-one": (
        "Over a group with 4-periodic cohomology there is an algebraic "
        "2-complex of Euler characteristic 1, so the minimal Euler "
        "characteristic is 1."),
    "prong-count-one": (
        "With 4-periodic cohomology and m_H at most 2, the tree of "
        "2-dimensional homotopy types is a fork with a single minimal vertex."),
    "q28-prong-count-two": (
        "The integral group ring of the quaternion group of order 28 has "
        "exactly two rank one stably free modules, so its homotopy tree is a "
        "fork with two prongs."),
    "prong-count-lower-bound": (
        "With 4-periodic cohomology and m_H at least 3 there are at least two "
        "minimal 2-dimensional homotopy types; the exact count is known only "
        "for small quaternion groups."),
    "d2-families-i-iv": (
        "Groups in families I-IV are finite 3-manifold groups, hence have "
        "balanced presentations and satisfy the two-dimensionality property."),
    "d2-q28": (
        "The quaternion group of order 28 satisfies the two-dimensionality "
        "property: its two minimal homotopy types are realized by two "
        "homotopically distinct balanced presentations."),
    "d2-q16-b-1-family": (
        "Groups of the family-VI shape with smaller odd parameter 1, times a "
        "coprime cyclic factor, have an explicit balanced presentation and "
        "hence satisfy the two-dimensionality property."),
    "d2-requires-balanced": (
        "For this group the two-dimensionality property is settled by the "
        "classification as soon as a balanced presentation is found; none is "
        "currently known."),
    "sigma4-zero-i-iv": (
        "Groups in families I-IV have vanishing degree-4 finiteness "
        "obstruction (they act freely on 3-manifolds)."),
    "free-period-8-q16-3-1": (
        "The order-48 member of family VI with parameters (3, 1) has free "
        "period 8 while its cohomological period is 4; it is the smallest "
        "group whose free and cohomological periods differ."),
}


@dataclass(frozen=True)
class ClassificationReport:
    order: int
    periodic: bool
    period: int | None
    per_prime: tuple[tuple[int, str, int | None], ...]
    m_h: int
    eichler: bool
    bpg_quotients: tuple[tuple[str, int], ...]  # (structure tag, kernel size)
    quaternion_quotient_ns: tuple[int, ...]
    family: str
    family_params: tuple[tuple[str, int], ...]
    sfc: bool | None
    chi_determines_d2: bool | None
    d2_status: str  # proven | open | requires_balanced_presentation
    min_euler_char: int | None
    prong_count: int | None
    notes: tuple[tuple[str, str], ...]  # (citation key, statement)


# ---------------------------------------------------------------------------
# quotient scans


@lru_cache(maxsize=None)
def all_quotients(G: GroupTable):
    """(kernel, quotient table) for every normal subgroup, cached per table."""
    return tuple((N, quotient(G, N)[0]) for N in normal_subgroups(G))


@lru_cache(maxsize=None)
def _bpg_quotient_details(G: GroupTable):
    """Every (kernel, tag, quotient) with binary polyhedral quotient G/N."""
    out = []
    for N, Q in all_quotients(G):
        if Q.order < 8:
            continue
        tag = recognize_structure(Q)
        if tag == "generalized_quaternion":
            out.append((N, f"Q_{Q.order}", Q))
        elif tag in ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral"):
            out.append((N, tag, Q))
    return tuple(out)


def binary_polyhedral_quotients(G: GroupTable) -> list[tuple[SubgroupSet, str]]:
    """All (kernel, tag) with G/kernel a binary polyhedral group."""
    return [(N, tag) for N, tag, _ in _bpg_quotient_details(G)]


def quaternion_quotient_ns(G: GroupTable) -> set[int]:
    """All n >= 2 such that some quotient of G is the order-4n quaternion group."""
    out = set()
    for _, tag, Q in _bpg_quotient_details(G):
        if tag.startswith("Q_"):
            out.add(Q.order // 4)
    return out


def eichler_status(G: GroupTable) -> bool:
    """m_H = 0, cross-checked against the absence of binary polyhedral quotients."""
    no_mh = m_quaternionic(G) == 0
    no_bpg = len(_bpg_quotient_details(G)) == 0
    if no_mh != no_bpg:
        raise PropositionViolationError(
            f"m_H = 0 is {no_mh} but absence of binary polyhedral quotients is {no_bpg}")
    return no_mh


def relative_eichler_check(G: GroupTable, N: SubgroupSet) -> tuple[bool, bool]:
    """(N inside every binary-polyhedral kernel, m_H unchanged in G/N).

    The two sides are equivalent; disagreement raises, since it would
    indicate a computational bug rather than new mathematics.
    """
    if not N.is_normal():
        raise PercohError("relative check needs a normal subgroup")
    kernels = [K for K, _, _ in _bpg_quotient_details(G)]
    lhs = all(N.members.issubset(K.members) for K in kernels)
    Q, _ = quotient(G, N)
    rhs = m_quaternionic(G) == m_quaternionic(Q)
    if lhs != rhs:
        raise PropositionViolationError(
            f"kernel containment is {lhs} but m_H equality is {rhs}")
    return lhs, rhs


# ---------------------------------------------------------------------------
# family classification


def _split_central_cofactor(G: GroupTable) -> tuple[GroupTable, int]:
    """Split G = K x C_k with C_k the largest central direct factor of
    coprime order (the product of the central Sylow subgroups)."""
    Z = center(G).members
    k = 1
    for p in prime_divisors(G.order):
        S = sylow_subgroup(G, p)
        if S.members.issubset(Z):
            k *= S.size
    if k == G.order:
        return cyclic_table(1), G.order  # abelian periodic: cyclic
    if k == 1:
        return G, 1
    m = G.order // k
    orders = element_orders(G)
    members = [x for x in range(G.order) if m % orders[x] == 0]
    if len(members) != m:
        raise PercohError("coprime complement has the wrong size")
    K = SubgroupSet(G, members, verify=True)
    return K.table()[0], k


@lru_cache(maxsize=None)
def _classify_full(G: GroupTable) -> tuple[str, tuple[tuple[str, int], ...]]:
    rep = periodicity_report(G)
    if not rep.periodic or 4 % rep.period != 0:
        return "not_4_periodic", ()
    mh = m_quaternionic(G)
    if mh >= 3:
        return "none", ()
    K, k = _split_central_cofactor(G)
    params: list[tuple[str, int]] = [("cyclic_cofactor", k), ("core_order", K.order)]
    n = K.order
    if n == 1:
        return "I", tuple(params)
    if n % 4 == 2 and is_isomorphic(K, dihedral_table(n // 2))[0]:
        return "I", tuple(params)
    if n in (8, 12, 16, 20) and is_isomorphic(K, quaternion_table(n // 4))[0]:
        return "II", tuple(params + [("quaternion_n", n // 4)])
    if n == 24 and is_isomorphic(K, binary_tetrahedral())[0]:
        return "II", tuple(params)
    if n == 48 and is_isomorphic(K, binary_octahedral())[0]:
        return "II", tuple(params)
    if n == 120 and is_isomorphic(K, binary_icosahedral())[0]:
        return "II", tuple(params)
    m = odd_part(n)
    two = p_part(n, 2)
    if m in (3, 5) and two >= 8:
        e = two.bit_length() - 1
        if is_isomorphic(K, metacyclic_quaternionic(e, m))[0]:
            return "III", tuple(params + [("n", e), ("m", m)])
    e3 = _exact_log(m, 3)
    if two == 8 and e3 is not None and e3 >= 2 and n == 8 * 3 ** e3:
        if is_isomorphic(K, quaternion_octic_twist(e3))[0]:
            return "IV", tuple(params + [("n", e3)])
    if n % 48 == 0:
        nn = n // 48
        if nn >= 3 and nn % 2 == 1 and is_isomorphic(K, octahedral_cyclic_extension(nn))[0]:
            return "V", tuple(params + [("n", nn)])
    if two == 16:
        # Family VI places both odd factors on the two action slots whose
        # kernels are the noncyclic index-2 subgroups of the quaternion
        # 2-group (third slot empty); any other placement yields a large
        # quaternion quotient and lands outside m_H <= 2.
        for b in divisors(m):
            c = m // b
            if b > c >= 1 and is_isomorphic(K, quaternionic_triple_twist(4, b, c, 1))[0]:
                return "VI", tuple(params + [("m", b), ("n", c)])
    raise UnclassifiedFamilyError(
        f"4-periodic group of order {G.order} with m_H = {mh} matched no family")


def _exact_log(m: int, base: int) -> int | None:
    e = 0
    while m % base == 0:
        m //= base
        e += 1
    return e if m == 1 else None


def classify_family(G: GroupTable) -> str:
    """Family tag: I..VI, none (m_H >= 3), or not_4_periodic."""
    return _classify_full(G)[0]


# ---------------------------------------------------------------------------
# the verdict report


def _is_q28(G: GroupTable) -> bool:
    return G.order == 28 and is_isomorphic(G, quaternion_table(7))[0]


def d2_report(G: GroupTable) -> ClassificationReport:
    """Assemble all computed invariants plus the citation-keyed verdicts."""
    rep = periodicity_report(G)
    mh = m_quaternionic(G)
    eich = eichler_status(G)
    bpg = tuple((tag, N.size) for N, tag, _ in _bpg_quotient_details(G))
    qns = tuple(sorted(quaternion_quotient_ns(G)))
    family, fparams = _classify_full(G)
    four_periodic = rep.periodic and 4 % (rep.period or 8) == 0

    notes: list[tuple[str, str]] = []

    def cite(key: str):
        notes.append((key, CITATIONS[key]))

    sfc = None
    if rep.periodic:
        sfc = mh <= 2
        cite("sfc-criterion")
    chi_d2 = None
    min_chi = None
    if four_periodic:
        chi_d2 = mh <= 2
        cite("chi-classifies-d2")
        min_chi = 1
        cite("min-euler-char-one")

    q28 = _is_q28(G)
    prong: int | None = None
    if q28:
        prong = 2
        cite("q28-prong-count-two")
    elif four_periodic and mh <= 2:
        prong = 1
        cite("prong-count-one")
    elif four_periodic and mh >= 3:
        cite("prong-count-lower-bound")

    d2_status = "open"
    if family in ("I", "II", "III", "IV"):
        d2_status = "proven"
        cite("d2-families-i-iv")
        cite("sigma4-zero-i-iv")
    elif q28:
        d2_status = "proven"
        cite("d2-q28")
    elif family == "VI":
        pd = dict(fparams)
        if pd.get("n") == 1:
            d2_status = "proven"
            cite("d2-q16-b-1-family")
        else:
            d2_status = "requires_balanced_presentation"
            cite("d2-requires-balanced")
    elif family == "V":
        d2_status = "requires_balanced_presentation"
        cite("d2-requires-balanced")

    if family == "VI":
        pd = dict(fparams)
        if pd.get("cyclic_cofactor") == 1 and pd.get("m") == 3 and pd.get("n") == 1:
            cite("free-period-8-q16-3-1")

    return ClassificationReport(
        order=G.order,
        periodic=rep.periodic,
        period=rep.period,
        per_prime=rep.per_prime,
        m_h=mh,
        eichler=eich,
        bpg_quotients=bpg,
        quaternion_quotient_ns=qns,
        family=family,
        family_params=fparams,
        sfc=sfc,
        chi_determines_d2=chi_d2,
        d2_status=d2_status,
        min_euler_char=min_chi,
        prong_count=prong,
        notes=tuple(notes),
    )
