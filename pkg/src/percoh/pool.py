"""The built-in group pool used by the selftest and acceptance sweeps.

Catalog instances up to order 500, their products with coprime cyclic
groups, and a few non-periodic negatives. Quotients are taken during the
sweeps themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .catalog import build_named, parse_group_expr
from .group_core import GroupTable

# (expr, is_family_member, expected m_H or None)
# Expected values for family members: I -> 0; II -> floor(n/2) for Q_4n and
# 1, 2, 2 for the three binary polyhedral groups; III -> (m-1)/2;
# IV -> 1; V -> 2; VI -> 2. Coprime cyclic factors leave m_H unchanged.
_POOL_SPEC: list[tuple[str, str | None, int | None]] = [
    # family I: cyclic and dihedral of order 4n+2 (plus coprime products)
    ("C:1", "I", 0), ("C:2", "I", 0), ("C:3", "I", 0), ("C:4", "I", 0),
    ("C:5", "I", 0), ("C:6", "I", 0), ("C:7", "I", 0), ("C:8", "I", 0),
    ("C:9", "I", 0), ("C:12", "I", 0), ("C:15", "I", 0), ("C:16", "I", 0),
    ("C:24", "I", 0), ("C:30", "I", 0), ("C:48", "I", 0), ("C:100", "I", 0),
    ("D:3", "I", 0), ("D:5", "I", 0), ("D:7", "I", 0), ("D:9", "I", 0),
    ("D:11", "I", 0), ("D:13", "I", 0), ("D:7 * C:5", "I", 0),
    # family II: small quaternion and binary polyhedral (plus products)
    ("Q:2", "II", 1), ("Q:3", "II", 1), ("Q:4", "II", 2), ("Q:5", "II", 2),
    ("BT", "II", 1), ("BO", "II", 2), ("BI", "II", 2),
    ("Q:2 * C:3", "II", 1), ("Q:2 * C:5", "II", 1), ("Q:2 * C:15", "II", 1),
    ("Q:3 * C:5", "II", 1), ("Q:4 * C:3", "II", 2), ("Q:4 * C:15", "II", 2),
    ("Q:5 * C:3", "II", 2), ("BT * C:5", "II", 1), ("BT * C:7", "II", 1),
    ("BO * C:5", "II", 2), ("BO * C:7", "II", 2),
    # larger quaternion groups: m_H >= 3, outside the families
    ("Q:6", None, 3), ("Q:7", None, 3), ("Q:8", None, 4), ("Q:9", None, 4),
    ("Q:10", None, 5), ("Q:11", None, 5), ("Q:12", None, 6), ("Q:15", None, 7),
    ("Q:25", None, 12), ("Q:6 * C:5", None, 3), ("Q:7 * C:3", None, 3),
    # family III (m in {3, 5}) and m = 7 relatives outside it
    ("Dd:3,3", "III", 1), ("Dd:3,5", "III", 2), ("Dd:4,3", "III", 1),
    ("Dd:4,5", "III", 2), ("Dd:5,3", "III", 1), ("Dd:5,5", "III", 2),
    ("Dd:6,3", "III", 1), ("Dd:6,5", "III", 2), ("Dd:7,3", "III", 1),
    ("Dd:3,3 * C:5", "III", 1), ("Dd:4,3 * C:5", "III", 1),
    ("Dd:4,3 * C:7", "III", 1), ("Dd:3,5 * C:7", "III", 2),
    ("Dd:3,7", None, 3), ("Dd:4,7", None, 3),
    # family IV
    ("Pp:2", "IV", 1), ("Pp:3", "IV", 1), ("Pp:2 * C:5", "IV", 1),
    # family V
    ("Ppp:3", "V", 2), ("Ppp:5", "V", 2), ("Ppp:7", "V", 2), ("Ppp:9", "V", 2),
    # family VI (safe two-slot form Qt:4,m,n,1) and relatives outside it
    ("Qt:4,1,3,1", "VI", 2), ("Qt:4,1,5,1", "VI", 2), ("Qt:4,1,7,1", "VI", 2),
    ("Qt:4,1,9,1", "VI", 2), ("Qt:4,1,11,1", "VI", 2), ("Qt:4,1,13,1", "VI", 2),
    ("Qt:4,1,15,1", "VI", 2), ("Qt:4,5,3,1", "VI", 2), ("Qt:4,7,3,1", "VI", 2),
    ("Qt:4,1,3,1 * C:5", "VI", 2), ("Qt:4,1,3,1 * C:7", "VI", 2),
    ("Qt:4,1,5,1 * C:3", "VI", 2),
    ("Qt:3,1,3,1", None, 3), ("Qt:3,1,3,5", None, None), ("Qt:3,3,5,1", None, None),
    ("Qt:3,1,3,1 * C:5", None, 3), ("Qt:5,1,3,1", None, None),
    ("Qt:4,1,5,3", None, None),
    # non-periodic negatives
    ("C:2*C:2", None, None), ("C:3*C:3", None, None), ("D:4", None, None),
    ("D:8", None, None), ("C:2*C:6", None, None), ("D:6", None, None),
]

_ATOM_ORDER = {"BT": 24, "BO": 48, "BI": 120}


def expr_order(text: str) -> int:
    """Order of the group an expression builds, from the parameters alone."""
    total = 1
    for kind, params in parse_group_expr(text).atoms:
        if kind in _ATOM_ORDER:
            total *= _ATOM_ORDER[kind]
        elif kind == "C":
            total *= params[0]
        elif kind == "D":
            total *= 2 * params[0]
        elif kind == "Q":
            total *= 4 * params[0]
        elif kind == "Dd":
            total *= (1 << params[0]) * params[1]
        elif kind == "Pp":
            total *= 8 * 3 ** params[0]
        elif kind == "Ppp":
            total *= 48 * params[0]
        elif kind == "Qt":
            n, a, b, c = params
            total *= (1 << n) * a * b * c
    return total


@dataclass(frozen=True)
class PoolEntry:
    name: str
    table: GroupTable
    family: str | None       # family tag when the entry is a shipped member
    expected_m_h: int | None


@lru_cache(maxsize=None)
def build_pool(max_order: int = 500) -> tuple[PoolEntry, ...]:
    entries = []
    for expr, family, mh in _POOL_SPEC:
        if expr_order(expr) > max_order:
            continue
        entries.append(PoolEntry(expr, build_named(expr), family, mh))
    return tuple(entries)


def periodic_entries(pool) -> list[PoolEntry]:
    from .periodicity import has_periodic_cohomology

    return [e for e in pool if has_periodic_cohomology(e.table)]
