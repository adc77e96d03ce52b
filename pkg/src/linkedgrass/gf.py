"""Exact linear algebra over the prime fields F_p, p in {2, 3, 5, ...}.

Vectors are tuples of ints reduced mod p; a subspace is stored as its
reduced row echelon basis (a tuple of row tuples, ordered by pivot), which
makes subspaces canonical, hashable and cheap to compare.  Everything here
is sized for desk-scale ambient dimension (d <= 8 or so), so no attempt is
made to be clever.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

Vec = tuple[int, ...]
Basis = tuple[Vec, ...]


def vec(entries: Iterable[int], p: int) -> Vec:
    return tuple(x % p for x in entries)


def vec_add(a: Vec, b: Vec, p: int) -> Vec:
    return tuple((x + y) % p for x, y in zip(a, b))


def vec_scale(c: int, a: Vec, p: int) -> Vec:
    return tuple((c * x) % p for x in a)


def is_zero(a: Vec) -> bool:
    return all(x == 0 for x in a)


def rref(rows: Iterable[Vec], p: int) -> Basis:
    """Reduced row echelon basis of the span of `rows` (zero rows dropped)."""
    work = [list(r) for r in rows]
    if not work:
        return ()
    ncols = len(work[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(work)):
            if work[r][col] % p != 0:
                piv = r
                break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][col], p - 2, p) if p > 2 else 1
        work[rank] = [(x * inv) % p for x in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] % p != 0:
                c = work[r][col] % p
                work[r] = [(x - c * y) % p for x, y in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(x % p for x in row) for row in work[:rank])


def span(vectors: Iterable[Vec], p: int) -> Basis:
    return rref(vectors, p)


def dim(basis: Basis) -> int:
    return len(basis)


def pivot_columns(basis: Basis) -> tuple[int, ...]:
    return tuple(next(i for i, x in enumerate(row) if x) for row in basis)


def reduce_vec(v: Vec, basis: Basis, p: int) -> Vec:
    """Residual of v after elimination against an rref basis."""
    out = list(v)
    for row in basis:
        piv = next(i for i, x in enumerate(row) if x)
        c = out[piv] % p
        if c:
            out = [(x - c * y) % p for x, y in zip(out, row)]
    return tuple(out)


def contains(basis: Basis, v: Vec, p: int) -> bool:
    return is_zero(reduce_vec(v, basis, p))


def is_subspace(a: Basis, b: Basis, p: int) -> bool:
    """True iff span(a) is contained in span(b)."""
    return all(contains(b, row, p) for row in a)


def sum_spaces(a: Basis, b: Basis, p: int) -> Basis:
    return rref(list(a) + list(b), p)


def left_kernel(rows: Sequence[Vec], p: int) -> Basis:
    """Basis of {lam : sum_i lam_i * rows_i = 0}."""
    m = len(rows)
    if m == 0:
        return ()
    ncols = len(rows[0])
    # eliminate the transposed system; kernel from free columns
    transposed = [tuple(rows[i][c] for i in range(m)) for c in range(ncols)]
    basis = rref(transposed, p)
    pivots = set(pivot_columns(basis))
    free = [j for j in range(m) if j not in pivots]
    out = []
    for j in free:
        lam = [0] * m
        lam[j] = 1
        for row in basis:
            piv = next(i for i, x in enumerate(row) if x)
            lam[piv] = (-row[j]) % p
        out.append(tuple(lam))
    return rref(out, p)


def intersect(a: Basis, b: Basis, p: int) -> Basis:
    """Basis of span(a) & span(b)."""
    if not a or not b:
        return ()
    residuals = [reduce_vec(row, b, p) for row in a]
    lam_basis = left_kernel(residuals, p)
    vecs = []
    for lam in lam_basis:
        v = tuple(0 for _ in a[0])
        for c, row in zip(lam, a):
            v = vec_add(v, vec_scale(c, row, p), p)
        vecs.append(v)
    return rref(vecs, p)


def complement(inner: Basis, outer: Basis, p: int) -> Basis:
    """Greedy complement C with outer = inner (+) C, preferring earlier outer rows."""
    cur = list(inner)
    comp = []
    r = len(rref(cur, p))
    for row in outer:
        cand = rref(cur + [row], p)
        if len(cand) > r:
            comp.append(row)
            cur.append(row)
            r = len(cand)
    return tuple(comp)


def all_vectors(basis: Basis, p: int) -> list[Vec]:
    """All vectors of the span, zero included."""
    if not basis:
        return []
    n = len(basis[0])
    out = []
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = tuple(0 for _ in range(n))
        for c, row in zip(coeffs, basis):
            v = vec_add(v, vec_scale(c, row, p), p)
        out.append(v)
    return out


def nonzero_vectors(basis: Basis, p: int) -> list[Vec]:
    return [v for v in all_vectors(basis, p) if not is_zero(v)]


def gaussian_binomial(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


@lru_cache(maxsize=None)
def subspaces(n: int, k: int, p: int) -> tuple[Basis, ...]:
    """All k-dimensional subspaces of F_p^n as rref bases, lexicographic order."""
    if k == 0:
        return ((),)
    out = []
    for pivots in itertools.combinations(range(n), k):
        free_positions = []
        for r, piv in enumerate(pivots):
            for c in range(piv + 1, n):
                if c not in pivots:
                    free_positions.append((r, c))
        for values in itertools.product(range(p), repeat=len(free_positions)):
            rows = [[0] * n for _ in range(k)]
            for r, piv in enumerate(pivots):
                rows[r][piv] = 1
            for (r, c), val in zip(free_positions, values):
                rows[r][c] = val
            out.append(tuple(tuple(row) for row in rows))
    return tuple(out)


@lru_cache(maxsize=None)
def superspaces(inner: Basis, k: int, n: int, p: int) -> tuple[Basis, ...]:
    """All k-dimensional subspaces of F_p^n containing span(inner), each once."""
    w = len(inner)
    if k < w:
        return ()
    if k == w:
        return (inner,)
    # parametrize by subspaces of a coordinate complement of inner, then
    # re-reduce; the quotient parametrization hits each superspace once
    pivots = set(pivot_columns(inner))
    free_cols = [c for c in range(n) if c not in pivots]
    out = []
    for sub in subspaces(len(free_cols), k - w, p):
        lifted = []
        for row in sub:
            amb = [0] * n
            for x, c in zip(row, free_cols):
                amb[c] = x
            lifted.append(tuple(amb))
        out.append(rref(list(inner) + lifted, p))
    return tuple(out)


def preimage(images_of_basis: Sequence[Vec], target: Basis, p: int) -> Basis:
    """Basis of {x : sum_i x_i * images_of_basis[i] in span(target)}."""
    residuals = [reduce_vec(img, target, p) for img in images_of_basis]
    return left_kernel(residuals, p)
