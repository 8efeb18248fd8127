"""Pure-Python kernels: table closure, conjugacy scan, coset enumeration.

`percoh._kernels_c` is a compiled drop-in replacement for this module;
`percoh.kernels` picks one at import time. Both implement exactly the
same functions with the same semantics, and the test suite checks they
agree, so keep any behavioural change mirrored in the .pyx file.
"""

from __future__ import annotations

from .errors import BoundExceededError, BudgetExceededError

BACKEND = "py"

HLT = 0
FELSCH = 1

# Safety valve for HLT runs that keep recovering cosets via lookahead
# without converging (possible only for infinite groups).
_DEFINE_FACTOR = 50


def perm_closure_table(gens: list[tuple[int, ...]], bound: int):
    """Close a list of bijections under composition and build the Cayley table.

    Composition is left-to-right: (a*b)(x) = b(a(x)). Element 0 is the
    identity. Returns (n, mul, parent) where mul is the flat n*n table
    (mul[i*n+j] = index of element i*j) and parent[e] = (i, j) records
    the BFS definition e = elems[i] * gens[j] (identity has (-1, -1)).
    """
    d = len(gens[0])
    ident = tuple(range(d))
    index = {ident: 0}
    elems = [ident]
    parent = [(-1, -1)]
    i = 0
    while i < len(elems):
        e = elems[i]
        for j, g in enumerate(gens):
            w = tuple(g[e[x]] for x in range(d))
            if w not in index:
                index[w] = len(elems)
                elems.append(w)
                parent.append((i, j))
                if len(elems) > bound:
                    raise BoundExceededError(f"closure passed the order bound {bound}")
        i += 1

    n = len(elems)
    mul = [0] * (n * n)
    for a in range(n):
        mul[a * n] = a
    # Generator columns by explicit composition, remaining columns via the
    # BFS recurrence col_e = col_gen ∘ col_parent.
    gen_elem = [index[g] for g in gens]
    done = [False] * n
    done[0] = True
    for j, g in enumerate(gens):
        k = gen_elem[j]
        if done[k]:
            continue
        for a in range(n):
            e = elems[a]
            mul[a * n + k] = index[tuple(g[e[x]] for x in range(d))]
        done[k] = True
    for e in range(1, n):
        if done[e]:
            continue
        pi, pj = parent[e]
        gcol = gen_elem[pj]
        for a in range(n):
            mul[a * n + e] = mul[mul[a * n + pi] * n + gcol]
        done[e] = True
    return n, mul, parent


def subgroup_closure(n: int, mul: list[int], seed) -> list[int]:
    """Members of the subgroup generated by `seed`, sorted ascending."""
    mem = bytearray(n)
    elems = [0]
    mem[0] = 1
    for s in seed:
        if not mem[s]:
            mem[s] = 1
            elems.append(s)
    i = 0
    while i < len(elems):
        x = elems[i]
        xrow = x * n
        for j in range(i + 1):
            y = elems[j]
            for v in (mul[xrow + y], mul[y * n + x]):
                if not mem[v]:
                    mem[v] = 1
                    elems.append(v)
        i += 1
    return sorted(elems)


def conjugacy_partition(n: int, mul: list[int], inv: list[int]) -> list[int]:
    """Class index per element; classes numbered by smallest representative."""
    class_of = [-1] * n
    nclasses = 0
    for x in range(n):
        if class_of[x] != -1:
            continue
        c = nclasses
        nclasses += 1
        for g in range(n):
            y = mul[mul[g * n + x] * n + inv[g]]
            class_of[y] = c
    return class_of


class _Full(Exception):
    """Internal: a define would pass the live-coset budget."""


class _CosetState:
    """Enumeration state. Columns: generator g at 2g, its inverse at 2g+1."""

    __slots__ = ("ncols", "rows", "p", "nalive", "max_live", "deductions", "ndefines")

    def __init__(self, ngens: int, max_live: int):
        self.ncols = 2 * ngens
        self.rows = [[-1] * self.ncols]
        self.p = [0]
        self.nalive = 1
        self.max_live = max_live
        self.deductions: list[tuple[int, int]] | None = None
        self.ndefines = 1

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def define(self, a: int, x: int) -> int:
        if self.nalive >= self.max_live:
            raise _Full
        b = len(self.rows)
        self.rows.append([-1] * self.ncols)
        self.p.append(b)
        self.nalive += 1
        self.ndefines += 1
        self.rows[a][x] = b
        self.rows[b][x ^ 1] = a
        if self.deductions is not None:
            self.deductions.append((a, x))
            self.deductions.append((b, x ^ 1))
        return b

    def _merge(self, k: int, l: int, queue: list[int]):
        k = self.rep(k)
        l = self.rep(l)
        if k != l:
            if k > l:
                k, l = l, k
            self.p[l] = k
            queue.append(l)
            self.nalive -= 1

    def coincidence(self, a: int, b: int):
        rows = self.rows
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            g = queue[qi]
            qi += 1
            grow = rows[g]
            for x in range(self.ncols):
                d = grow[x]
                if d == -1:
                    continue
                rows[d][x ^ 1] = -1
                mu = self.rep(g)
                nu = self.rep(d)
                if rows[mu][x] != -1:
                    self._merge(nu, rows[mu][x], queue)
                elif rows[nu][x ^ 1] != -1:
                    self._merge(mu, rows[nu][x ^ 1], queue)
                else:
                    rows[mu][x] = nu
                    rows[nu][x ^ 1] = mu
                    if self.deductions is not None:
                        self.deductions.append((mu, x))
                        self.deductions.append((nu, x ^ 1))

    def scan(self, a: int, word):
        """Scan without defining; may record a deduction or a coincidence."""
        rows = self.rows
        f = a
        i = 0
        j = len(word) - 1
        while i <= j and rows[f][word[i]] != -1:
            f = rows[f][word[i]]
            i += 1
        if i > j:
            if f != a:
                self.coincidence(f, a)
            return
        b = a
        while j >= i and rows[b][word[j] ^ 1] != -1:
            b = rows[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            rows[f][word[i]] = b
            rows[b][word[i] ^ 1] = f
            if self.deductions is not None:
                self.deductions.append((f, word[i]))
                self.deductions.append((b, word[i] ^ 1))

    def scan_and_fill(self, a: int, word):
        rows = self.rows
        f = a
        i = 0
        b = a
        j = len(word) - 1
        while True:
            while i <= j and rows[f][word[i]] != -1:
                f = rows[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and rows[b][word[j] ^ 1] != -1:
                b = rows[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                rows[f][word[i]] = b
                rows[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def lookahead(self, relators):
        for b in range(len(self.rows)):
            if self.p[b] != b:
                continue
            for w in relators:
                self.scan(b, w)
                if self.p[b] != b:
                    break


def _relator_variants(relators, ncols):
    """Cyclic rotations of each relator and of its inverse, grouped by first letter."""
    seen = set()
    by_first: list[list[list[int]]] = [[] for _ in range(ncols)]
    for r in relators:
        inv = [x ^ 1 for x in reversed(r)]
        for base in (r, inv):
            for s in range(len(base)):
                w = base[s:] + base[:s]
                key = tuple(w)
                if key not in seen:
                    seen.add(key)
                    by_first[w[0]].append(w)
    return by_first


def coset_enumeration(ngens: int, relators: list[list[int]], max_cosets: int,
                      strategy: int = HLT):
    """Enumerate cosets of the trivial subgroup of <ngens | relators>.

    Relators are lists of column letters (2g for generator g, 2g+1 for its
    inverse). Returns (n, table) where `table` is the standardized
    n x 2*ngens list of rows. Raises BudgetExceededError when the live
    coset count would pass max_cosets.
    """
    if ngens < 1:
        raise ValueError("need at least one generator")
    for r in relators:
        if not r:
            raise ValueError("empty relator")
    t = _CosetState(ngens, max_cosets)
    budget_error = BudgetExceededError(
        f"live cosets would pass max_cosets = {max_cosets}"
    )
    define_cap = _DEFINE_FACTOR * max_cosets + 1000

    if strategy == FELSCH:
        t.deductions = []
        variants = _relator_variants(relators, t.ncols)
        a = 0
        while a < len(t.rows):
            if t.p[a] != a:
                a += 1
                continue
            x = 0
            while x < t.ncols:
                if t.p[a] != a:
                    break
                if t.rows[a][x] == -1:
                    try:
                        t.define(a, x)
                    except _Full:
                        raise budget_error from None
                    while t.deductions:
                        da, dx = t.deductions.pop()
                        if t.p[da] != da:
                            continue
                        for w in variants[dx]:
                            t.scan(da, w)
                            if t.p[da] != da:
                                break
                x += 1
            a += 1
    elif strategy == HLT:
        a = 0
        while a < len(t.rows):
            if t.p[a] != a:
                a += 1
                continue
            try:
                for w in relators:
                    t.scan_and_fill(a, w)
                    if t.p[a] != a:
                        break
                if t.p[a] == a:
                    for x in range(t.ncols):
                        if t.rows[a][x] == -1:
                            t.define(a, x)
            except _Full:
                # Out of budget: lookahead pass, then retry this coset.
                before = t.nalive
                t.lookahead(relators)
                if t.nalive >= t.max_live or t.nalive >= before:
                    raise budget_error from None
                continue
            if t.ndefines > define_cap:
                raise budget_error
            a += 1
    else:
        raise ValueError(f"unknown strategy {strategy}")

    # Standardize: BFS renumbering from coset 0, columns in order.
    n = t.nalive
    new_of = {0: 0}
    order = [0]
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        row = t.rows[c]
        for x in range(t.ncols):
            if row[x] == -1:
                raise AssertionError("incomplete row on a live coset")
            d = t.rep(row[x])
            if d not in new_of:
                new_of[d] = len(order)
                order.append(d)
    if len(order) != n:
        raise AssertionError("coset table not transitive after completion")
    table = [[0] * t.ncols for _ in range(n)]
    for newc, oldc in enumerate(order):
        row = t.rows[oldc]
        for x in range(t.ncols):
            table[newc][x] = new_of[t.rep(row[x])]
    return n, table
