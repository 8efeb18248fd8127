"""Group presentations: parsing, coset enumeration, deficiency, realization.

Grammar (whitespace insignificant, UTF-8 text):

    presentation := '<' gen-list '|' rel-list '>'
    gen-list     := name (',' name)*        name := [a-z][a-z0-9]*
    rel-list     := rel (',' rel)*          rel  := word | word '=' word
    word         := term ('*' term)*        term := name ('^' signed-int)?

A bare word w means w = 1. Relations u = v are stored as the relator
u·v^-1, merging adjacent powers of the same generator but doing no
further free reduction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import group_core, kernels
from ._numutil import pairwise_coprime
from .errors import (
    PresentationSyntaxError,
    RelatorViolationError,
    UnknownGeneratorError,
)

Word = tuple[tuple[int, int], ...]  # ((generator index, nonzero exponent), ...)


@dataclass(frozen=True)
class Presentation:
    """Generators and relator words."""

    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def word_str(self, w: Word) -> str:
        parts = []
        for g, e in w:
            parts.append(self.generators[g] if e == 1 else f"{self.generators[g]}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self):
        rels = ", ".join(self.word_str(w) for w in self.relators)
        return f"<{','.join(self.generators)} | {rels}>"


@dataclass(frozen=True)
class CosetTable:
    """Completed coset table: per-coset action of generators and inverses."""

    ngens: int
    rows: tuple[tuple[int, ...], ...]  # columns 2g (generator g), 2g+1 (inverse)
    status: str
    coset_count: int

    def generator_permutation(self, g: int) -> group_core.Permutation:
        return group_core.Permutation(tuple(row[2 * g] for row in self.rows))


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[a-z][a-z0-9]*)|(?P<int>-?\d+)"
                       r"|(?P<sym>[<>|,*^=]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise PresentationSyntaxError(f"unexpected character {stripped[0]!r}", at)
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _merge_adjacent(terms: list[tuple[int, int]]) -> Word:
    out: list[tuple[int, int]] = []
    for g, e in terms:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            if s == 0:
                out.pop()
            else:
                out[-1] = (g, s)
        else:
            out.append((g, e))
    return tuple(out)


def _invert(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(g, -e) for g, e in reversed(word)]


def parse_presentation(text: str) -> Presentation:
    """Parse presentation text; relations u = v become relators u·v^-1."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind, value=None, what=""):
        nonlocal i
        k, v, pos = toks[i]
        if k != kind or (value is not None and v != value):
            expect = what or (value if value else kind)
            found = repr(v) if v else "end of input"
            raise PresentationSyntaxError(f"expected {expect}, found {found}", pos)
        i += 1
        return v, pos

    take("sym", "<")
    gens: list[str] = []
    gen_index: dict[str, int] = {}
    while True:
        name, pos = take("name", what="generator name")
        if name in gen_index:
            raise PresentationSyntaxError(f"duplicate generator {name!r}", pos)
        gen_index[name] = len(gens)
        gens.append(name)
        if peek()[:2] == ("sym", ","):
            i += 1
            continue
        break
    take("sym", "|")

    def parse_word() -> list[tuple[int, int]]:
        terms = []
        while True:
            name, pos = take("name", what="generator name")
            if name not in gen_index:
                raise UnknownGeneratorError(f"unknown generator {name!r}", pos)
            exp = 1
            if peek()[:2] == ("sym", "^"):
                if toks[i + 1][0] != "int":
                    raise PresentationSyntaxError("expected integer exponent", toks[i + 1][2])
                exp = int(toks[i + 1][1])
                advance(2)
            terms.append((gen_index[name], exp))
            if peek()[:2] == ("sym", "*"):
                advance(1)
                continue
            break
        return terms

    def advance(k):
        nonlocal i
        i += k

    relators: list[Word] = []
    while True:
        start_pos = peek()[2]
        left = parse_word()
        if peek()[:2] == ("sym", "="):
            advance(1)
            right = parse_word()
            rel = _merge_adjacent(left + _invert(right))
        else:
            rel = _merge_adjacent(left)
        if not rel:
            raise PresentationSyntaxError("relator reduces to the empty word", start_pos)
        relators.append(rel)
        if peek()[:2] == ("sym", ","):
            advance(1)
            continue
        break
    take("sym", ">")
    if peek()[0] != "end":
        raise PresentationSyntaxError("trailing input after '>'", peek()[2])
    return Presentation(tuple(gens), tuple(relators))


def load_presentation(text: str) -> Presentation:
    """Parse presentation text that may carry '#' comment lines (file format)."""
    stripped = "\n".join(ln.split("#", 1)[0] for ln in text.splitlines())
    return parse_presentation(stripped)


# ---------------------------------------------------------------------------
# deficiency and Euler characteristic


def deficiency(P: Presentation) -> tuple[int, bool, int]:
    """(deficiency n - m, balanced flag, Euler characteristic 1 - (n - m))."""
    d = len(P.generators) - len(P.relators)
    return d, d == 0, 1 - d


# ---------------------------------------------------------------------------
# coset enumeration


def _letters(word: Word) -> list[int]:
    out = []
    for g, e in word:
        if e > 0:
            out.extend([2 * g] * e)
        else:
            out.extend([2 * g + 1] * (-e))
    return out


def todd_coxeter(P: Presentation, max_cosets: int, strategy: str = "hlt") -> CosetTable:
    """Enumerate cosets of the trivial subgroup.

    On completion, coset_count is the order of the presented group and the
    per-generator coset actions generate its regular representation.
    Raises BudgetExceededError if the live-coset count would pass
    max_cosets (restart with a larger budget; non-termination for an
    infinite group surfaces the same way).
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    strat = {"hlt": kernels.HLT, "felsch": kernels.FELSCH}[strategy]
    relators = [_letters(w) for w in P.relators]
    n, rows = kernels.coset_enumeration(len(P.generators), relators, max_cosets, strat)
    table = CosetTable(len(P.generators), tuple(tuple(r) for r in rows), "complete", n)
    _verify_coset_table(P, table)
    return table


def _verify_coset_table(P: Presentation, T: CosetTable):
    """Exhaustive checks: generator actions are permutations, relators trace."""
    n = T.coset_count
    for g in range(T.ngens):
        col = [row[2 * g] for row in T.rows]
        if sorted(col) != list(range(n)):
            raise RelatorViolationError("generator action is not a permutation")
        back = [row[2 * g + 1] for row in T.rows]
        if any(back[col[c]] != c for c in range(n)):
            raise RelatorViolationError("inverse column mismatch")
    rel_letters = [_letters(w) for w in P.relators]
    for c in range(n):
        for w in rel_letters:
            t = c
            for x in w:
                t = T.rows[t][x]
            if t != c:
                raise RelatorViolationError("relator does not trace to the identity")


def realize_group(P: Presentation, max_cosets: int,
                  strategy: str = "hlt") -> group_core.GroupTable:
    """Realize the presented group as a GroupTable via its regular action."""
    T = todd_coxeter(P, max_cosets, strategy=strategy)
    perms = [T.generator_permutation(g) for g in range(T.ngens)]
    G = group_core.close_generators(perms, bound=T.coset_count,
                                    names=list(P.generators))
    if G.order != T.coset_count:
        raise RelatorViolationError("regular representation closure has wrong order")
    gen_elements = G._cache["gen_elements"]
    for w in P.relators:
        acc = 0
        for g, e in w:
            t = gen_elements[g] if e > 0 else G.inv(gen_elements[g])
            for _ in range(abs(e)):
                acc = G.mul(acc, t)
        if acc != 0:
            raise RelatorViolationError(f"relator {P.word_str(w)} fails in the table")
    return G


# ---------------------------------------------------------------------------
# shipped presentation families


def quaternion_family_presentation(n: int, a: int, b: int, k: int) -> str:
    """Balanced two-generator presentation text for Q(2^n·a; b, 1) x C_k.

    Parameters: n >= 3; a, b, k >= 1 odd and pairwise coprime (so k is
    coprime to 2^n·a·b automatically).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    for v in (a, b, k):
        if v < 1 or v % 2 == 0:
            raise ValueError("a, b, k must be odd and at least 1")
    if not pairwise_coprime([a, b, k]):
        raise ValueError("a, b, k must be pairwise coprime")
    e = (1 << (n - 2)) * a - 1
    lhs = f"y^{k}*x^{b}*y^{k}" if k > 1 else f"y*x^{b}*y"
    rhs = f"x^{b}"
    second = f"x*y*x = y^{e}" if e != 1 else "x*y*x = y"
    return f"<x,y | {lhs} = {rhs}, {second}>"


def quaternion_presentation(n: int) -> str:
    """Standard balanced presentation of the quaternion group of order 4n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return f"<x,y | x^{n} = y^2, y*x*y^-1 = x^-1>"


def quaternion_family_order(n: int, a: int, b: int, k: int) -> int:
    return (1 << n) * a * b * k
