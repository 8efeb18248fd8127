"""Exact modular character data and the quaternionic representation count.

Characters are computed mod a prime p ≡ 1 (mod exponent) with p > |G| by
simultaneous eigenspace splitting of class matrices over F_p. Values are
never lifted to complex numbers: degrees and Frobenius-Schur indicators
are already exact in F_p with this choice of p, which removes all
floating-point and cyclotomic-arithmetic risk. The quaternionic count
m_H is the number of degree-2 rows with indicator -1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from ._numutil import divisors, is_prime
from .errors import (
    LiftFailureError,
    NoSuitablePrimeError,
    SplitFailureError,
)
from .group_core import ConjugacyData, GroupTable, conjugacy_classes, exponent

_PRIME_LIMIT = 1 << 31


@dataclass(frozen=True)
class ClassConstants:
    """Class multiplication constants a[i][j][l] = #{(x,y) in C_i x C_j : xy = z_l}.

    z_l is the fixed class representative; the count is independent of that
    choice. Satisfies sum_l a[i][j][l]*|C_l| = |C_i|*|C_j|.
    """

    k: int
    a: np.ndarray  # shape (k, k, k), int64, read-only


def suitable_prime(order: int, exp: int) -> int:
    """Smallest prime p ≡ 1 (mod exp) with p > max(order, 3)."""
    p = exp + 1
    while p <= max(order, 3):
        p += exp
    while p < _PRIME_LIMIT:
        if is_prime(p):
            return p
        p += exp
    raise NoSuitablePrimeError(f"no prime ≡ 1 mod {exp} above {order} below 2^31")


def class_constants(G: GroupTable, C: ConjugacyData) -> ClassConstants:
    """Exact constants by counting products x*y with x over C_i and y forced."""
    k = C.k
    n = G.order
    mul = G.mul_flat
    inv = G.inv_list
    a = np.zeros((k, k, k), dtype=np.int64)
    for x in range(n):
        i = C.class_of[x]
        xi = inv[x]
        for l in range(k):
            y = mul[xi * n + C.reps[l]]
            a[i, C.class_of[y], l] += 1
    a.setflags(write=False)
    return ClassConstants(k, a)


@dataclass(frozen=True)
class CharacterSummaryModP:
    """Per-irreducible data mod p: values per class, degree, FS indicator.

    `fs_indicators` is None until fs_indicators() fills it. Row order is
    canonical: sorted by (degree, value tuple).
    """

    p: int
    degrees: tuple[int, ...]
    values: tuple[tuple[int, ...], ...]
    fs: tuple[int, ...] | None
    classes: ConjugacyData

    @property
    def k(self) -> int:
        return len(self.degrees)


# ---------------------------------------------------------------------------
# F_p linear algebra (dense, int64, explicit reduction)


def _rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (nonzero rows, pivot columns)."""
    A = A.copy() % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pr = -1
        for rr in range(r, rows):
            if A[rr, c]:
                pr = rr
                break
        if pr == -1:
            continue
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        col = A[:, c].copy()
        col[r] = 0
        A = (A - np.outer(col, A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of the kernel of A over F_p."""
    R, pivots = _rref(A, p)
    cols = A.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for idx, f in enumerate(free):
        basis[idx, f] = 1
        for i, c in enumerate(pivots):
            basis[idx, c] = (-R[i, f]) % p
    return basis


def _charpoly(X: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial mod p via Hessenberg reduction.

    Returns coefficients lowest-degree first, length d+1, monic.
    """
    H = X.copy() % p
    d = H.shape[0]
    for j in range(d - 2):
        pr = -1
        for r in range(j + 1, d):
            if H[r, j]:
                pr = r
                break
        if pr == -1:
            continue
        if pr != j + 1:
            H[[j + 1, pr]] = H[[pr, j + 1]]
            H[:, [j + 1, pr]] = H[:, [pr, j + 1]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        for r in range(j + 2, d):
            f = int(H[r, j]) * inv % p
            if f:
                H[r] = (H[r] - f * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + f * H[:, r]) % p
    polys = [np.array([1], dtype=np.int64)]  # charpoly of leading 0x0 block
    for m in range(1, d + 1):
        # (x - H[m-1,m-1]) * p_{m-1}
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:m + 1] = prev
        cur[:m] = (cur[:m] - H[m - 1, m - 1] * prev) % p
        beta = 1
        for i in range(1, m):
            beta = beta * int(H[m - i, m - i - 1]) % p
            if beta == 0:
                break
            term = beta * int(H[m - 1 - i, m - 1]) % p
            if term:
                cur[:m - i] = (cur[:m - i] - term * polys[m - 1 - i]) % p
        polys.append(cur % p)
    return polys[d]


def _poly_roots(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in F_p by chunked evaluation (p stays small at this scale)."""
    roots: list[int] = []
    chunk = 1 << 16
    for lo in range(0, p, chunk):
        xs = np.arange(lo, min(p, lo + chunk), dtype=np.int64)
        acc = np.zeros_like(xs)
        for c in coeffs[::-1]:
            acc = (acc * xs + int(c)) % p
        roots.extend(xs[acc == 0].tolist())
    return roots


# ---------------------------------------------------------------------------
# Dixon splitting


def _class_matrix(G: GroupTable, C: ConjugacyData, i: int) -> np.ndarray:
    """M_i with M_i[j, l] = a[i][j][l]; columns index the fixed-z classes."""
    k = C.k
    n = G.order
    mul = G.mul_flat
    M = np.zeros((k, k), dtype=np.int64)
    members = [x for x in range(n) if C.class_of[x] == i]
    for x in members:
        xi = G.inv(x)
        base = xi * n
        for l in range(k):
            y = mul[base + C.reps[l]]
            M[C.class_of[y], l] += 1
    return M


def _central_character_vectors(G: GroupTable) -> tuple[int, ConjugacyData, np.ndarray]:
    """Common eigenvectors of all class matrices, normalized at the identity class."""
    C = conjugacy_classes(G)
    k = C.k
    p = suitable_prime(G.order, exponent(G))
    # Subspaces as (basis rows in RREF, pivot columns).
    eye = np.eye(k, dtype=np.int64)
    subspaces: list[tuple[np.ndarray, list[int]]] = [(eye, list(range(k)))]
    order_idx = sorted(range(k), key=lambda c: (-C.sizes[c], c))
    for ci in order_idx:
        if ci == 0:
            continue  # identity class acts as the identity matrix
        if all(B.shape[0] == 1 for B, _ in subspaces):
            break
        M = _class_matrix(G, C, ci) % p
        nxt: list[tuple[np.ndarray, list[int]]] = []
        for B, pivots in subspaces:
            d = B.shape[0]
            if d == 1:
                nxt.append((B, pivots))
                continue
            img = (B @ M.T) % p                    # row r = M · b_r
            X = img[:, pivots]                     # M b_r = sum_s X[r,s] b_s
            if not np.array_equal((X @ B) % p, img):
                raise SplitFailureError("subspace not invariant under a class matrix")
            # Coordinate vectors transform as c -> c X, so eigenspaces come
            # from left eigenvectors: kernel of (X - lam I)^T.
            split_dim = 0
            for lam in sorted(_poly_roots(_charpoly(X, p), p)):
                K = _nullspace((X - lam * np.eye(d, dtype=np.int64)).T % p, p)
                if K.shape[0] == 0:
                    raise SplitFailureError("charpoly root with trivial eigenspace")
                sub, sub_piv = _rref((K @ B) % p, p)
                nxt.append((sub, sub_piv))
                split_dim += sub.shape[0]
            if split_dim != d:
                raise SplitFailureError("eigenspace dimensions do not sum up")
        subspaces = nxt
    if any(B.shape[0] != 1 for B, _ in subspaces):
        raise SplitFailureError("splitting finished with a subspace of dimension > 1")
    vecs = np.vstack([B for B, _ in subspaces]) % p
    # Normalize so the identity-class coordinate is 1 (central characters
    # have omega = 1 there, so it cannot vanish).
    out = np.zeros_like(vecs)
    for r in range(k):
        v0 = int(vecs[r, 0])
        if v0 == 0:
            raise SplitFailureError("eigenvector vanishes at the identity class")
        out[r] = vecs[r] * pow(v0, p - 2, p) % p
    return p, C, out


@lru_cache(maxsize=None)
def dixon_table(G: GroupTable) -> CharacterSummaryModP:
    """All irreducible characters mod p, with exact integer degrees.

    Degrees are recovered from d^2 = |G| / sum_i w_i w_{i*} / |C_i| in F_p
    and lifted to the unique divisor of |G| with d^2 <= |G|. Verifies
    sum of squared degrees and modular row orthogonality before returning.
    """
    n = G.order
    p, C, omegas = _central_character_vectors(G)
    k = C.k
    sizes = np.array(C.sizes, dtype=np.int64)
    inv_sizes = np.array([pow(int(s), p - 2, p) for s in C.sizes], dtype=np.int64)
    istar = list(C.inverse_class)
    degs: list[int] = []
    values = np.zeros((k, k), dtype=np.int64)
    cand = [d for d in divisors(n) if d * d <= n]
    for r in range(k):
        w = omegas[r]
        s = int((w * w[istar] % p * inv_sizes % p).sum() % p)
        d2 = n * pow(s, p - 2, p) % p
        matches = [d for d in cand if d * d % p == d2]
        if len(matches) != 1:
            raise SplitFailureError(f"degree lift not unique: {matches}")
        d = matches[0]
        degs.append(d)
        values[r] = w * d % p * inv_sizes % p
    if sum(d * d for d in degs) != n:
        raise SplitFailureError("squared degrees do not sum to the group order")
    # Modular row orthogonality.
    weighted = values[:, istar] * sizes[None, :] % p
    gram = values @ weighted.T % p
    if not np.array_equal(gram, np.eye(k, dtype=np.int64) * (n % p)):
        raise SplitFailureError("modular row orthogonality fails")
    rows = sorted(range(k), key=lambda r: (degs[r], tuple(values[r].tolist())))
    return CharacterSummaryModP(
        p=p,
        degrees=tuple(degs[r] for r in rows),
        values=tuple(tuple(values[r].tolist()) for r in rows),
        fs=None,
        classes=C,
    )


def fs_indicators(G: GroupTable, T: CharacterSummaryModP) -> CharacterSummaryModP:
    """Fill Frobenius-Schur indicators: nu = |G|^-1 sum_i |C_i| chi(rep_i^2).

    The residue is lifted to {-1, 0, +1}, which is unique since p > 3.
    """
    p = T.p
    C = T.classes
    n = G.order
    inv_n = pow(n % p, p - 2, p)
    sizes = np.array(C.sizes, dtype=np.int64)
    sq = list(C.square_class)
    out: list[int] = []
    for row in T.values:
        v = np.array(row, dtype=np.int64)
        nu = int((sizes * v[sq] % p).sum() % p) * inv_n % p
        if nu == 0:
            out.append(0)
        elif nu == 1:
            out.append(1)
        elif nu == p - 1:
            out.append(-1)
        else:
            raise LiftFailureError(f"indicator residue {nu} is not in {{-1,0,1}} mod {p}")
    return replace(T, fs=tuple(out))


@lru_cache(maxsize=None)
def character_summary(G: GroupTable) -> CharacterSummaryModP:
    """Dixon table with indicators filled (cached per table)."""
    return fs_indicators(G, dixon_table(G))


def m_quaternionic(G: GroupTable) -> int:
    """Number of degree-2 irreducibles of quaternionic type (indicator -1)."""
    T = character_summary(G)
    return sum(1 for d, nu in zip(T.degrees, T.fs) if d == 2 and nu == -1)
