"""Periodic cohomology detection and the cohomological period.

Periodicity is decided from Sylow structure: every odd Sylow subgroup
cyclic and the Sylow 2-subgroup cyclic or generalized quaternion. The
period is assembled as the lcm of local periods: 2|N:C| at odd primes
with cyclic Sylow subgroup P (N, C its normalizer and centralizer),
2 for a cyclic Sylow 2-subgroup and 4 for a quaternionic one. The local
formula is classical; this artifact validates it empirically against the
shipped classification families rather than proving it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from ._numutil import prime_divisors
from .errors import PercohError
from .group_core import (
    GroupTable,
    normalizer_centralizer,
    recognize_structure,
    sylow_subgroup,
)


@dataclass(frozen=True)
class PeriodicityReport:
    periodic: bool
    period: int | None
    per_prime: tuple[tuple[int, str, int | None], ...]  # (p, sylow tag, p-period)


@lru_cache(maxsize=None)
def periodicity_report(G: GroupTable) -> PeriodicityReport:
    per_prime: list[tuple[int, str, int | None]] = []
    periodic = True
    period = 1
    for p in prime_divisors(G.order):
        S = sylow_subgroup(G, p)
        sub, _ = S.table()
        tag = recognize_structure(sub)
        if tag == "cyclic":
            if p == 2:
                # N/C embeds in the 2-group Aut(C_2^k) but has odd order
                # ([N:C] divides the odd index [N:P]), hence is trivial.
                N, C = normalizer_centralizer(G, S)
                if N.size != C.size:
                    raise PercohError("normalizer/centralizer mismatch at p = 2")
                pp = 2
            else:
                N, C = normalizer_centralizer(G, S)
                pp = 2 * (N.size // C.size)
            per_prime.append((p, "cyclic", pp))
            period = math.lcm(period, pp)
        elif p == 2 and tag == "generalized_quaternion":
            per_prime.append((2, "generalized_quaternion", 4))
            period = math.lcm(period, 4)
        else:
            per_prime.append((p, "other", None))
            periodic = False
    if not periodic:
        return PeriodicityReport(False, None, tuple(per_prime))
    if G.order > 1 and period % 2 != 0:
        raise PercohError("period must be even for a nontrivial group")
    return PeriodicityReport(True, period, tuple(per_prime))


def has_periodic_cohomology(G: GroupTable) -> bool:
    """True iff every Sylow subgroup is cyclic, allowing generalized
    quaternion at p = 2."""
    return periodicity_report(G).periodic


def cohomological_period(G: GroupTable) -> int | None:
    return periodicity_report(G).period


def is_four_periodic(G: GroupTable) -> bool:
    r = periodicity_report(G)
    return r.periodic and 4 % r.period == 0
