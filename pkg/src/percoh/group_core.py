"""Explicit finite groups as multiplication tables, plus structural algorithms.

Everything downstream (character data, periodicity, classification) consumes
the types defined here. Tables are dense and exact; the default order bound
keeps exhaustive algorithms honest. All types are immutable after
construction and every operation is a pure function of its inputs.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import kernels
from ._numutil import p_part
from .errors import (
    ActionNotAutomorphismError,
    ActionNotHomomorphicError,
    BoundExceededError,
    BudgetExceededError,
    InvalidPermutationError,
    NotNormalError,
    PercohError,
)

DEFAULT_ORDER_BOUND = 5000
DEFAULT_ISO_NODE_BUDGET = 10**7

_GEN_NAMES = "abcdefghijklmnopqrstuvwxyz"
_MAX_LABEL = 24


class GroupTable:
    """A finite group as an explicit order x order multiplication table.

    Element 0 is the identity. Labels are advisory display strings;
    equality of groups is decided by tables (see `is_isomorphic`), never
    by labels. Instances hash by identity, which the per-table caches
    rely on; do not add an `__eq__`.
    """

    def __init__(self, mul, labels=None, check: bool = True):
        M = np.asarray(mul, dtype=np.int32)
        if M.ndim == 1:
            n = math.isqrt(M.size)
            M = M.reshape(n, n)
        self.order: int = int(M.shape[0])
        self.mul_array = M
        self.mul_array.setflags(write=False)
        if check:
            self._check_cheap()
        inv = np.argmax(M == 0, axis=1).astype(np.int32)
        self.inv_array = inv
        self.inv_array.setflags(write=False)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != self.order:
                raise ValueError("labels length must equal the group order")
        self.labels = labels
        self._cache: dict = {}

    def _check_cheap(self):
        """O(n^2) sanity: identity row/column, latin square, inverses."""
        M = self.mul_array
        n = self.order
        if M.shape != (n, n):
            raise ValueError("multiplication table must be square")
        idx = np.arange(n, dtype=np.int32)
        if not (np.array_equal(M[0], idx) and np.array_equal(M[:, 0], idx)):
            raise ValueError("element 0 must act as the identity")
        if not (np.array_equal(np.sort(M, axis=1), np.tile(idx, (n, 1)))
                and np.array_equal(np.sort(M, axis=0), np.tile(idx[:, None], (1, n)))):
            raise ValueError("each row and column must be a permutation")
        if not np.array_equal(np.sort(np.argmax(M == 0, axis=1)), idx):
            raise ValueError("inverses must exist and be unique")

    # -- element access ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_array[a, b])

    def inv(self, a: int) -> int:
        return int(self.inv_array[a])

    @property
    def mul_flat(self) -> list[int]:
        """Flat list view used by the loop kernels."""
        got = self._cache.get("mul_flat")
        if got is None:
            got = self.mul_array.ravel().tolist()
            self._cache["mul_flat"] = got
        return got

    @property
    def inv_list(self) -> list[int]:
        got = self._cache.get("inv_list")
        if got is None:
            got = self.inv_array.tolist()
            self._cache["inv_list"] = got
        return got

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return f"g{x}"

    def same_table(self, other: "GroupTable") -> bool:
        return self.order == other.order and np.array_equal(self.mul_array, other.mul_array)

    # -- validation --------------------------------------------------------

    def validate(self, sample: int = 100_000, seed: int = 0) -> None:
        """Check the group axioms on the table.

        Associativity is exhausted for order <= 512 and sampled on at
        least `sample` random triples above that; the cheap O(n^2) checks
        are always rerun. Raises ValueError on any failure.
        """
        self._check_cheap()
        M = self.mul_array.astype(np.int64)
        n = self.order
        if n <= 512:
            chunk = max(1, (1 << 24) // max(n * n, 1))
            for lo in range(0, n, chunk):
                hi = min(n, lo + chunk)
                left = M[M[lo:hi, :], :]   # [a,b,c] = (a*b)*c
                right = M[lo:hi][:, M]     # [a,b,c] = a*(b*c)
                if not np.array_equal(left, right):
                    raise ValueError("associativity fails")
        else:
            rng = np.random.default_rng(seed)
            a = rng.integers(0, n, size=sample)
            b = rng.integers(0, n, size=sample)
            c = rng.integers(0, n, size=sample)
            if not np.array_equal(M[M[a, b], c], M[a, M[b, c]]):
                raise ValueError("associativity fails on sampled triples")

    def __repr__(self):
        return f"GroupTable(order={self.order})"


@dataclass(frozen=True)
class Permutation:
    """A bijection of {0, ..., d-1}; products compose left-to-right."""

    images: tuple[int, ...]

    def __post_init__(self):
        d = len(self.images)
        if sorted(self.images) != list(range(d)):
            raise InvalidPermutationError(f"not a bijection on 0..{d - 1}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(other.images[x] for x in self.images))


class SubgroupSet:
    """A subset of a GroupTable's elements closed under the group operation."""

    def __init__(self, parent: GroupTable, members, verify: bool = True):
        self.parent = parent
        self.members = frozenset(int(m) for m in members)
        if verify:
            self._verify()
        self._cache: dict = {}

    def _verify(self):
        if 0 not in self.members:
            raise ValueError("subgroup must contain the identity")
        mul = self.parent.mul_array
        mem = sorted(self.members)
        arr = np.array(mem, dtype=np.int32)
        prods = mul[np.ix_(arr, arr)]
        if not self.members.issuperset(prods.ravel().tolist()):
            raise ValueError("set is not closed under multiplication")
        if self.parent.order % len(self.members) != 0:
            raise ValueError("subgroup size must divide the group order")

    @classmethod
    def generated(cls, parent: GroupTable, gens) -> "SubgroupSet":
        members = kernels.subgroup_closure(parent.order, parent.mul_flat, list(gens))
        return cls(parent, members, verify=False)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def members_sorted(self) -> tuple[int, ...]:
        got = self._cache.get("sorted")
        if got is None:
            got = tuple(sorted(self.members))
            self._cache["sorted"] = got
        return got

    def bitvector(self) -> bytes:
        bits = bytearray((self.parent.order + 7) // 8)
        for m in self.members:
            bits[m >> 3] |= 1 << (m & 7)
        return bytes(bits)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def is_normal(self) -> bool:
        got = self._cache.get("normal")
        if got is None:
            G = self.parent
            mul = G.mul_array
            inv = G.inv_array
            got = True
            mem = np.array(self.members_sorted, dtype=np.int32)
            for g in range(G.order):
                conj = mul[mul[g, mem], inv[g]]
                if not self.members.issuperset(conj.tolist()):
                    got = False
                    break
            self._cache["normal"] = got
        return got

    def table(self) -> tuple[GroupTable, tuple[int, ...]]:
        """This subgroup as its own GroupTable plus the element embedding."""
        got = self._cache.get("table")
        if got is None:
            elems = self.members_sorted  # identity 0 is minimal, lands at index 0
            pos = {e: i for i, e in enumerate(elems)}
            arr = np.array(elems, dtype=np.int32)
            sub = self.parent.mul_array[np.ix_(arr, arr)]
            M = np.vectorize(pos.__getitem__, otypes=[np.int32])(sub)
            labels = None
            if self.parent.labels is not None:
                labels = tuple(self.parent.labels[e] for e in elems)
            got = (GroupTable(M, labels=labels, check=False), elems)
            self._cache["table"] = got
        return got

    def __repr__(self):
        return f"SubgroupSet(size={self.size} of order {self.parent.order})"


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy partition with representatives and the class squaring map."""

    class_of: tuple[int, ...]
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    square_class: tuple[int, ...]
    inverse_class: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.reps)

    def class_members(self, c: int) -> list[int]:
        return [x for x, cx in enumerate(self.class_of) if cx == c]


class GroupMap:
    """A homomorphism between two GroupTables, given element-wise."""

    def __init__(self, source: GroupTable, target: GroupTable, images, verify: bool = True):
        self.source = source
        self.target = target
        self.images = tuple(int(x) for x in images)
        if verify:
            f = np.array(self.images, dtype=np.int32)
            if self.images[0] != 0:
                raise ValueError("a homomorphism must fix the identity")
            A = source.mul_array
            B = target.mul_array
            if not np.array_equal(f[A], B[f[:, None], f[None, :]]):
                raise ValueError("images do not define a homomorphism")

    def __call__(self, x: int) -> int:
        return self.images[x]

    def is_bijective(self) -> bool:
        return (self.source.order == self.target.order
                and len(set(self.images)) == self.source.order)

    def __repr__(self):
        return f"GroupMap({self.source.order} -> {self.target.order})"


# ---------------------------------------------------------------------------
# construction


def close_generators(gens: list[Permutation], bound: int = DEFAULT_ORDER_BOUND,
                     names: list[str] | None = None) -> GroupTable:
    """Multiplication table of the group generated by permutations.

    Element 0 is the identity; labels record short generator words.
    Raises BoundExceededError if the closure passes `bound`.
    """
    if not gens:
        raise ValueError("need at least one generator")
    d = gens[0].degree
    if any(g.degree != d for g in gens):
        raise ValueError("generators must act on a common domain")
    n, mul, parent = kernels.perm_closure_table([g.images for g in gens], bound)
    if names is None:
        names = [_GEN_NAMES[i] if i < len(_GEN_NAMES) else f"g{i}" for i in range(len(gens))]
    labels = ["1"] * n
    for e in range(1, n):
        pi, pj = parent[e]
        w = names[pj] if labels[pi] == "1" else labels[pi] + "*" + names[pj]
        labels[e] = w if len(w) <= _MAX_LABEL else f"g{e}"
    G = GroupTable(np.array(mul, dtype=np.int32).reshape(n, n), labels=labels, check=False)
    # Element index of each generator (duplicates resolved by comparison).
    gen_elements = [-1] * len(gens)
    for e in range(1, n):
        pi, pj = parent[e]
        if pi == 0 and gen_elements[pj] == -1:
            gen_elements[pj] = e
    ident = tuple(range(d))
    for j, g in enumerate(gens):
        if gen_elements[j] == -1:
            if g.images == ident:
                gen_elements[j] = 0
            else:
                gen_elements[j] = next(gen_elements[i] for i in range(j)
                                       if gens[i].images == g.images)
    G._cache["gen_elements"] = tuple(gen_elements)
    return G


def table_from_elements(gens, mul_fn, identity, bound: int = DEFAULT_ORDER_BOUND,
                        labels_fn=None) -> GroupTable:
    """Generic closure of hashable elements under an abstract product."""
    index = {identity: 0}
    elems = [identity]
    i = 0
    while i < len(elems):
        e = elems[i]
        for g in gens:
            w = mul_fn(e, g)
            if w not in index:
                index[w] = len(elems)
                elems.append(w)
                if len(elems) > bound:
                    raise BoundExceededError(f"closure passed the order bound {bound}")
        i += 1
    n = len(elems)
    M = np.empty((n, n), dtype=np.int32)
    for a in range(n):
        ea = elems[a]
        row = M[a]
        for b in range(n):
            row[b] = index[mul_fn(ea, elems[b])]
    labels = tuple(labels_fn(e) for e in elems) if labels_fn else None
    return GroupTable(M, labels=labels, check=False)


def direct_product(A: GroupTable, B: GroupTable,
                   bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """A x B with componentwise multiplication; (a, b) at index a*|B| + b."""
    n = A.order * B.order
    if n > bound:
        raise BoundExceededError(f"product order {n} passes the bound {bound}")
    nB = B.order
    MA = A.mul_array.astype(np.int64)
    MB = B.mul_array.astype(np.int64)
    M = (MA[:, None, :, None] * nB + MB[None, :, None, :]).reshape(n, n)
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = tuple(f"({A.labels[a]},{B.labels[b]})"
                       for a in range(A.order) for b in range(B.order))
    return GroupTable(M.astype(np.int32), labels=labels, check=False)


def semidirect_product(N: GroupTable, H: GroupTable, action,
                       bound: int = DEFAULT_ORDER_BOUND) -> GroupTable:
    """N ⋊ H for a homomorphism H -> Aut(N) given per H-element.

    `action[h]` lists the image of every N-element under the automorphism
    attached to h; multiplication is (n1,h1)(n2,h2) = (n1·φ_{h1}(n2), h1·h2),
    so the required law is φ(h1·h2) = φ(h1)∘φ(h2). Element (n, h) sits at
    index n*|H| + h; N embeds normally as the h = 0 slice.
    """
    n = N.order * H.order
    if n > bound:
        raise BoundExceededError(f"product order {n} passes the bound {bound}")
    act = np.asarray(action, dtype=np.int32)
    if act.shape != (H.order, N.order):
        raise ValueError("action must give one automorphism per H element")
    idx = np.arange(N.order, dtype=np.int32)
    MN = N.mul_array
    for h in range(H.order):
        a = act[h]
        if not np.array_equal(np.sort(a), idx) or a[0] != 0:
            raise ActionNotAutomorphismError(f"action[{h}] is not a bijection fixing 1")
        if not np.array_equal(a[MN], MN[a[:, None], a[None, :]]):
            raise ActionNotAutomorphismError(f"action[{h}] is not multiplicative")
    MH = H.mul_array
    for h1 in range(H.order):
        comp = act[h1][act]  # comp[h2] = φ(h1)∘φ(h2)
        if not np.array_equal(act[MH[h1]], comp):
            raise ActionNotHomomorphicError(f"action is not a homomorphism at h1={h1}")
    nH = H.order
    part_n = MN.astype(np.int64)[np.arange(N.order)[:, None, None], act[:, :][None, :, :]]
    # part_n[n1, h1, n2] = n1 · φ_{h1}(n2)
    M = (part_n[:, :, :, None] * nH + MH.astype(np.int64)[None, :, None, :]).reshape(n, n)
    return GroupTable(M.astype(np.int32), check=False)


def automorphism_from_generator_images(G: GroupTable, gens: list[int],
                                       images: list[int]) -> list[int]:
    """Extend generator images to a full automorphism; raises if they don't."""
    full = _extend_generator_map(G, G, tuple(gens), tuple(images))
    if full is None:
        raise ActionNotAutomorphismError(
            f"generator images {images} do not extend to an automorphism")
    return list(full)


# ---------------------------------------------------------------------------
# structural computations (cached per table; tables hash by identity)


@lru_cache(maxsize=None)
def element_orders(G: GroupTable) -> tuple[int, ...]:
    n = G.order
    mul = G.mul_flat
    orders = [1] * n
    for x in range(1, n):
        y = x
        k = 1
        while y != 0:
            y = mul[y * n + x]
            k += 1
        orders[x] = k
    return tuple(orders)


def exponent(G: GroupTable) -> int:
    return math.lcm(*element_orders(G)) if G.order > 1 else 1


@lru_cache(maxsize=None)
def conjugacy_classes(G: GroupTable) -> ConjugacyData:
    """Partition into conjugacy classes, with the squaring map on classes."""
    n = G.order
    class_of = kernels.conjugacy_partition(n, G.mul_flat, G.inv_list)
    k = max(class_of) + 1
    reps = [-1] * k
    sizes = [0] * k
    for x, c in enumerate(class_of):
        if reps[c] == -1:
            reps[c] = x
        sizes[c] += 1
    square_class = tuple(class_of[G.mul(r, r)] for r in reps)
    inverse_class = tuple(class_of[G.inv(r)] for r in reps)
    return ConjugacyData(tuple(class_of), tuple(reps), tuple(sizes),
                         square_class, inverse_class)


def center(G: GroupTable) -> SubgroupSet:
    M = G.mul_array
    members = np.nonzero((M == M.T).all(axis=1))[0].tolist()
    return SubgroupSet(G, members, verify=False)


@lru_cache(maxsize=None)
def _small_generating_set(G: GroupTable) -> tuple[int, ...]:
    """Small generating set: a maximal-order element, then a completing
    element if the group is 2-generated, else greedy enlargement."""
    if G.order == 1:
        return ()
    orders = element_orders(G)
    cand = sorted(range(G.order), key=lambda x: (-orders[x], x))
    g1 = cand[0]
    cur = set(kernels.subgroup_closure(G.order, G.mul_flat, [g1]))
    if len(cur) == G.order:
        return (g1,)
    for g2 in cand:
        if g2 in cur:
            continue
        if len(kernels.subgroup_closure(G.order, G.mul_flat, [g1, g2])) == G.order:
            return (g1, g2)
    gens = [g1]
    for x in cand:
        if x not in cur:
            gens.append(x)
            cur = set(kernels.subgroup_closure(G.order, G.mul_flat, gens))
            if len(cur) == G.order:
                break
    return tuple(gens)


def _small_gens_of_members(G: GroupTable, members: tuple[int, ...]) -> tuple[int, ...]:
    """Small generating set for a known subgroup (greedy by index)."""
    gens: list[int] = []
    cur = {0}
    for x in members:
        if x not in cur:
            gens.append(x)
            cur = set(kernels.subgroup_closure(G.order, G.mul_flat, gens))
            if len(cur) == len(members):
                break
    return tuple(gens)


@lru_cache(maxsize=None)
def sylow_subgroup(G: GroupTable, p: int) -> SubgroupSet:
    """A Sylow p-subgroup by normalizer ascent (deterministic).

    Grows a p-subgroup by adjoining p-elements of its normalizer until the
    full p-part of |G| is reached. Returns the trivial subgroup when p
    does not divide |G|.
    """
    n = G.order
    target = p_part(n, p)
    if target == 1:
        return SubgroupSet(G, [0], verify=False)
    orders = element_orders(G)

    def is_p_element(x: int) -> bool:
        o = orders[x]
        while o % p == 0:
            o //= p
        return o == 1 and x != 0

    best = max((x for x in range(n) if is_p_element(x)), key=lambda x: (orders[x], -x))
    members = kernels.subgroup_closure(n, G.mul_flat, [best])
    while len(members) < target:
        mem = set(members)
        norm = _normalizer_members(G, mem)
        grown = False
        for y in norm:
            if y in mem or not is_p_element(y):
                continue
            cand = kernels.subgroup_closure(n, G.mul_flat, list(
                _small_gens_of_members(G, tuple(members))) + [y])
            m = len(cand)
            while m % p == 0:
                m //= p
            if m == 1:
                members = cand
                grown = True
                break
        if not grown:  # cannot happen for a correct table
            raise PercohError("normalizer ascent stalled; table is not a group")
    return SubgroupSet(G, members, verify=False)


def _normalizer_members(G: GroupTable, mem: set[int]) -> list[int]:
    mul = G.mul_array
    inv = G.inv_array
    arr = np.array(sorted(mem), dtype=np.int32)
    out = []
    for g in range(G.order):
        conj = mul[mul[g, arr], inv[g]]
        if mem.issuperset(conj.tolist()):
            out.append(g)
    return out


def normalizer_centralizer(G: GroupTable, S: SubgroupSet) -> tuple[SubgroupSet, SubgroupSet]:
    """(N_G(S), C_G(S)); the centralizer is contained in the normalizer."""
    mem = set(S.members)
    mul = G.mul_array
    arr = np.array(S.members_sorted, dtype=np.int32)
    norm = _normalizer_members(G, mem)
    cent = [g for g in range(G.order)
            if np.array_equal(mul[g, arr], mul[arr, g])]
    return (SubgroupSet(G, norm, verify=False), SubgroupSet(G, cent, verify=False))


@lru_cache(maxsize=None)
def normal_subgroups(G: GroupTable) -> tuple[SubgroupSet, ...]:
    """All normal subgroups, via joins of normal closures of single classes.

    Every normal subgroup is a union of conjugacy classes and is the join
    of the closures of the classes it contains, so iterating joins of
    single-class closures reaches all of them. Sorted by size.
    """
    n = G.order
    mul = G.mul_flat
    C = conjugacy_classes(G)
    k = C.k
    members_by_class = [[] for _ in range(k)]
    for x, c in enumerate(C.class_of):
        members_by_class[c].append(x)

    def signature(members) -> frozenset[int]:
        return frozenset(C.class_of[m] for m in members)

    class_closure: list[tuple[frozenset[int], tuple[int, ...]]] = []
    for c in range(k):
        mem = tuple(kernels.subgroup_closure(n, mul, members_by_class[c]))
        class_closure.append((signature(mem), mem))

    trivial_sig = frozenset({0})
    found: dict[frozenset[int], tuple[int, ...]] = {trivial_sig: (0,)}
    gens_of: dict[frozenset[int], tuple[int, ...]] = {trivial_sig: ()}
    for sig, mem in class_closure:
        if sig not in found:
            found[sig] = mem
            gens_of[sig] = _small_gens_of_members(G, mem)
    work = list(found)
    while work:
        sig = work.pop()
        for c in range(k):
            if c in sig:
                continue
            csig, cmem = class_closure[c]
            seed = list(gens_of[sig]) + list(gens_of.get(csig) or cmem)
            mem = tuple(kernels.subgroup_closure(n, mul, seed))
            msig = signature(mem)
            if msig not in found:
                found[msig] = mem
                gens_of[msig] = _small_gens_of_members(G, mem)
                work.append(msig)
    subs = [SubgroupSet(G, mem, verify=False) for mem in found.values()]
    for s in subs:  # conjugation stability, asserted
        if not s.is_normal():
            raise PercohError("class-closure join produced a non-normal subgroup")
    subs.sort(key=lambda s: (s.size, s.members_sorted))
    return tuple(subs)


def quotient(G: GroupTable, N: SubgroupSet) -> tuple[GroupTable, GroupMap]:
    """Quotient table on cosets of a normal subgroup, plus the projection."""
    if N.parent is not G:
        raise ValueError("subgroup belongs to a different table")
    if not N.is_normal():
        raise NotNormalError(f"subgroup of size {N.size} is not normal")
    n = G.order
    mul = G.mul_array
    narr = np.array(N.members_sorted, dtype=np.int32)
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] != -1:
            continue
        c = len(reps)
        reps.append(x)
        for y in mul[x, narr].tolist():
            coset_of[y] = c
    q = len(reps)
    rarr = np.array(reps, dtype=np.int32)
    cemap = np.array(coset_of, dtype=np.int32)
    Mq = cemap[mul[np.ix_(rarr, rarr)]]
    Q = GroupTable(Mq, check=False)
    proj = GroupMap(G, Q, coset_of, verify=True)
    return Q, proj


# ---------------------------------------------------------------------------
# isomorphism


@lru_cache(maxsize=None)
def derived_subgroup(G: GroupTable) -> SubgroupSet:
    """Commutator subgroup: closure of all [x, y] = x y x^-1 y^-1."""
    mul = G.mul_array
    inv = G.inv_array
    comms: set[int] = set()
    for x in range(G.order):
        t = mul[mul[mul[x, :], inv[x]], inv]  # per y: ((x*y)*x^-1)*y^-1
        comms.update(np.unique(t).tolist())
    members = kernels.subgroup_closure(G.order, G.mul_flat, sorted(comms))
    return SubgroupSet(G, members, verify=False)


@lru_cache(maxsize=None)
def _fingerprint(G: GroupTable):
    orders = element_orders(G)
    hist: dict[int, int] = {}
    for o in orders:
        hist[o] = hist.get(o, 0) + 1
    C = conjugacy_classes(G)
    ab, _ = quotient(G, derived_subgroup(G))
    ab_orders = element_orders(ab)
    ab_hist: dict[int, int] = {}
    for o in ab_orders:
        ab_hist[o] = ab_hist.get(o, 0) + 1
    return (G.order,
            tuple(sorted(hist.items())),
            tuple(sorted(C.sizes)),
            center(G).size,
            tuple(sorted(ab_hist.items())))


@lru_cache(maxsize=None)
def _class_invariants(G: GroupTable) -> tuple[tuple, ...]:
    """Per-class invariant used to restrict candidate images.

    (class size, element order) refined through the squaring and inverse
    maps; labels are re-canonicalized each round by sorting, so they are
    comparable across different groups.
    """
    C = conjugacy_classes(G)
    orders = element_orders(G)
    base = [(C.sizes[c], orders[C.reps[c]]) for c in range(C.k)]
    ranks = {v: i for i, v in enumerate(sorted(set(base)))}
    labels = [ranks[b] for b in base]
    for _ in range(C.k):
        keys = [(base[c], labels[c], labels[C.square_class[c]], labels[C.inverse_class[c]])
                for c in range(C.k)]
        ranks = {v: i for i, v in enumerate(sorted(set(keys)))}
        nxt = [ranks[k] for k in keys]
        if nxt == labels:
            break
        labels = nxt
    return tuple((base[c], labels[c]) for c in range(C.k))


def _extend_generator_map(A: GroupTable, B: GroupTable, gens: tuple[int, ...],
                          images: tuple[int, ...]):
    """Extend generator images along A's BFS words; None if not a bijective hom."""
    n = A.order
    if n != B.order:
        return None
    mulA = A.mul_flat
    mulB = B.mul_flat
    f = [-1] * n
    f[0] = 0
    order = [0]
    seen_img = bytearray(n)
    seen_img[0] = 1
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for g, img in zip(gens, images):
            y = mulA[x * n + g]
            fy = mulB[f[x] * n + img]
            if f[y] == -1:
                if seen_img[fy]:
                    return None
                f[y] = fy
                seen_img[fy] = 1
                order.append(y)
            elif f[y] != fy:
                return None
    if len(order) != n:
        return None  # gens do not generate A
    # full homomorphism check: f(x*g) = f(x)*f(g) for every x and generator g
    for x in range(n):
        fx = f[x]
        for g, img in zip(gens, images):
            if f[mulA[x * n + g]] != mulB[fx * n + img]:
                return None
    return tuple(f)


def is_isomorphic(A: GroupTable, B: GroupTable,
                  node_budget: int = DEFAULT_ISO_NODE_BUDGET
                  ) -> tuple[bool, GroupMap | None]:
    """Isomorphism test with witness.

    Fast rejection on an invariant fingerprint (order, element-order
    histogram, class sizes, center order, abelianization), then a
    backtracking search over generator images ordered by element order
    and class size. Raises BudgetExceededError after `node_budget` nodes.
    """
    if A is B:
        ident = GroupMap(A, B, list(range(A.order)), verify=False)
        return True, ident
    if _fingerprint(A) != _fingerprint(B):
        return False, None
    gens = _small_generating_set(A)
    if not gens:  # trivial group
        return True, GroupMap(A, B, [0], verify=False)

    invA = _class_invariants(A)
    invB = _class_invariants(B)
    CA = conjugacy_classes(A)
    CB = conjugacy_classes(B)
    ordersB = element_orders(B)
    candidates: list[list[int]] = []
    for i, g in enumerate(gens):
        want = invA[CA.class_of[g]]
        if i == 0:
            # Up to an inner automorphism of B, the first generator may be
            # sent to a class representative.
            cand = [CB.reps[c] for c in range(CB.k) if invB[c] == want]
        else:
            cand = [y for y in range(B.order) if invB[CB.class_of[y]] == want]
        if not cand:
            return False, None
        candidates.append(cand)

    mulA = A.mul_flat
    mulB = B.mul_flat
    ordersA = element_orders(A)
    n = A.order
    nodes = 0
    chosen: list[int] = []

    def compatible(k: int, y: int) -> bool:
        gk = gens[k]
        for j in range(k):
            gj, yj = gens[j], chosen[j]
            if ordersA[mulA[gj * n + gk]] != ordersB[mulB[yj * n + y]]:
                return False
            if ordersA[mulA[gk * n + gj]] != ordersB[mulB[y * n + yj]]:
                return False
            if (mulA[gj * n + gk] == mulA[gk * n + gj]) != (mulB[yj * n + y] == mulB[y * n + yj]):
                return False
        return True

    def search(k: int):
        nonlocal nodes
        if k == len(gens):
            f = _extend_generator_map(A, B, gens, tuple(chosen))
            return f
        for y in candidates[k]:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceededError("isomorphism search node budget exceeded")
            if not compatible(k, y):
                continue
            chosen.append(y)
            f = search(k + 1)
            if f is not None:
                return f
            chosen.pop()
        return None

    f = search(0)
    if f is None:
        return False, None
    return True, GroupMap(A, B, f, verify=False)


# ---------------------------------------------------------------------------
# named reference tables and structure recognition


@lru_cache(maxsize=None)
def cyclic_table(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("cyclic order must be positive")
    idx = np.arange(n, dtype=np.int64)
    M = (idx[:, None] + idx[None, :]) % n
    labels = tuple("1" if a == 0 else f"x^{a}" if a > 1 else "x" for a in range(n))
    return GroupTable(M.astype(np.int32), labels=labels, check=False)


@lru_cache(maxsize=None)
def dihedral_table(m: int) -> GroupTable:
    """Dihedral group of order 2m: rotations x^a and reflections x^a*y."""
    if m < 1:
        raise ValueError("dihedral parameter must be positive")
    n = 2 * m
    M = np.empty((n, n), dtype=np.int32)
    for a in range(m):
        for b in range(2):
            i = 2 * a + b
            for a2 in range(m):
                for b2 in range(2):
                    ra = (a + (a2 if b == 0 else -a2)) % m
                    M[i, 2 * a2 + b2] = 2 * ra + (b ^ b2)
    return GroupTable(M, check=False)


@lru_cache(maxsize=None)
def quaternion_table(n: int) -> GroupTable:
    """Generalized quaternion group of order 4n (n >= 2): x^a y^b, a mod 2n."""
    if n < 2:
        raise ValueError("quaternion parameter must be at least 2")
    size = 4 * n
    M = np.empty((size, size), dtype=np.int32)
    for a in range(2 * n):
        for b in range(2):
            i = 2 * a + b
            for a2 in range(2 * n):
                for b2 in range(2):
                    ra = (a + (a2 if b == 0 else -a2) + (n if b and b2 else 0)) % (2 * n)
                    M[i, 2 * a2 + b2] = 2 * ra + (b ^ b2)
    labels = []
    for a in range(2 * n):
        for b in range(2):
            xs = "" if a == 0 else ("x" if a == 1 else f"x^{a}")
            ys = "" if b == 0 else "y"
            labels.append("*".join(t for t in (xs, ys) if t) or "1")
    return GroupTable(M, labels=tuple(labels), check=False)


def _sl2_table(p: int) -> GroupTable:
    def mul(u, v):
        a, b, c, d = u
        e, f, g, h = v
        return ((a * e + b * g) % p, (a * f + b * h) % p,
                (c * e + d * g) % p, (c * f + d * h) % p)

    gens = [(1, 1, 0, 1), (0, p - 1, 1, 0)]
    return table_from_elements(gens, mul, (1, 0, 0, 1))


@lru_cache(maxsize=None)
def binary_tetrahedral_table() -> GroupTable:
    G = _sl2_table(3)
    if G.order != 24:
        raise PercohError("SL(2,3) construction has wrong order")
    return G


@lru_cache(maxsize=None)
def binary_icosahedral_table() -> GroupTable:
    G = _sl2_table(5)
    if G.order != 120:
        raise PercohError("SL(2,5) construction has wrong order")
    return G


@lru_cache(maxsize=None)
def binary_octahedral_table() -> GroupTable:
    """Unit quaternion model over Z[sqrt(2)]: 24 Hurwitz units and 24 others."""
    half = Fraction(1, 2)

    def qmul(u, v):
        (a1, a2), (b1, b2), (c1, c2), (d1, d2) = u
        (e1, e2), (f1, f2), (g1, g2), (h1, h2) = v

        def rm(x, y):  # (x1 + x2*sqrt2)(y1 + y2*sqrt2)
            return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

        def radd(*terms):
            return (sum(t[0] for t in terms), sum(t[1] for t in terms))

        def rneg(x):
            return (-x[0], -x[1])

        A, B, C, D = (a1, a2), (b1, b2), (c1, c2), (d1, d2)
        E, F, Gc, H = (e1, e2), (f1, f2), (g1, g2), (h1, h2)
        w = radd(rm(A, E), rneg(rm(B, F)), rneg(rm(C, Gc)), rneg(rm(D, H)))
        x = radd(rm(A, F), rm(B, E), rm(C, H), rneg(rm(D, Gc)))
        y = radd(rm(A, Gc), rneg(rm(B, H)), rm(C, E), rm(D, F))
        z = radd(rm(A, H), rm(B, Gc), rneg(rm(C, F)), rm(D, E))
        return (w, x, y, z)

    zero = (Fraction(0), Fraction(0))
    one = (Fraction(1), Fraction(0))
    s = ((Fraction(0), half), (Fraction(0), half), zero, zero)  # (1+i)/sqrt2
    t = ((half, Fraction(0)),) * 4                               # (1+i+j+k)/2
    G = table_from_elements([s, t], qmul, (one, zero, zero, zero))
    if G.order != 48:
        raise PercohError("binary octahedral construction has wrong order")
    return G


def _unique_involution(G: GroupTable) -> bool:
    return sum(1 for o in element_orders(G) if o == 2) == 1


def recognize_structure(G: GroupTable) -> str:
    """Tag the table: cyclic, dihedral, generalized_quaternion, binary_*, other.

    Generalized quaternion 2-groups are decided two ways (unique-involution
    criterion and isomorphism against the reference table) and the paths
    must agree.
    """
    n = G.order
    orders = element_orders(G)
    if max(orders) == n:
        return "cyclic"
    if n >= 8 and n % 4 == 0:
        by_iso = is_isomorphic(G, quaternion_table(n // 4))[0]
        if (n & (n - 1)) == 0:  # 2-group: both criteria, must agree
            by_involution = _unique_involution(G)
            if by_involution != by_iso:
                raise PercohError("generalized-quaternion recognition paths disagree")
        if by_iso:
            return "generalized_quaternion"
    if n >= 4 and n % 2 == 0 and is_isomorphic(G, dihedral_table(n // 2))[0]:
        return "dihedral"
    if n == 24 and is_isomorphic(G, binary_tetrahedral_table())[0]:
        return "binary_tetrahedral"
    if n == 48 and is_isomorphic(G, binary_octahedral_table())[0]:
        return "binary_octahedral"
    if n == 120 and is_isomorphic(G, binary_icosahedral_table())[0]:
        return "binary_icosahedral"
    return "other"


def has_elementary_abelian_p2(G: GroupTable, p: int) -> bool:
    """True iff commuting order-p elements x, y exist with y outside <x>."""
    orders = element_orders(G)
    elems = [x for x in range(G.order) if orders[x] == p]
    mul = G.mul_flat
    n = G.order
    for x in elems:
        powers = set()
        y = x
        while y != 0:
            powers.add(y)
            y = mul[y * n + x]
        for y in elems:
            if y not in powers and mul[x * n + y] == mul[y * n + x]:
                return True
    return False


# ---------------------------------------------------------------------------
# permutation text format


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutations(text: str) -> list[Permutation]:
    """Parse one generator per line in cycle notation, e.g. `(1 2 3)(4 5)`.

    Points are 1-based in the text. All generators are padded to the
    largest point mentioned anywhere in the input.
    """
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("no generators in permutation input")
    parsed: list[list[list[int]]] = []
    degree = 0
    for ln in lines:
        rest = _CYCLE_RE.sub("", ln).strip()
        if rest:
            raise ValueError(f"unparsable permutation text: {ln!r}")
        cycles = []
        for body in _CYCLE_RE.findall(ln):
            pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
            if any(p < 1 for p in pts):
                raise ValueError("points are 1-based")
            if len(set(pts)) != len(pts):
                raise InvalidPermutationError(f"repeated point in cycle: {ln!r}")
            cycles.append(pts)
            degree = max(degree, *pts) if pts else degree
        parsed.append(cycles)
    if degree == 0:
        degree = 1
    out = []
    for cycles in parsed:
        images = list(range(degree))
        for pts in cycles:
            for i, pt in enumerate(pts):
                src = pt - 1
                dst = pts[(i + 1) % len(pts)] - 1
                if images[src] != src:
                    raise InvalidPermutationError("cycles overlap within one generator")
                images[src] = dst
        out.append(Permutation(tuple(images)))
    return out


def subgroup_of_whole(G: GroupTable) -> SubgroupSet:
    return SubgroupSet(G, range(G.order), verify=False)


def trivial_subgroup(G: GroupTable) -> SubgroupSet:
    return SubgroupSet(G, [0], verify=False)
