"""Exact rational linear algebra on dense lists of Fractions."""

from __future__ import annotations

from fractions import Fraction as Q
from itertools import combinations
from typing import Iterable, Sequence

Vector = list[Q]
Matrix = list[list[Q]]


class RangeError(ValueError):
    pass


def q(x) -> Q:
    return x if isinstance(x, Q) else Q(x)


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[q(x) for x in row] for row in rows]


def zeros(m: int, n: int | None = None) -> Matrix:
    n = m if n is None else n
    return [[Q(0)] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    out = zeros(n)
    for i in range(n):
        out[i][i] = Q(1)
    return out


def diag(entries: Sequence) -> Matrix:
    out = zeros(len(entries))
    for i, x in enumerate(entries):
        out[i][i] = q(x)
    return out


def zero_vector(n: int) -> Vector:
    return [Q(0)] * n


def unit_vector(n: int, i: int) -> Vector:
    v = zero_vector(n)
    v[i] = Q(1)
    return v


def transpose(M: Sequence[Sequence[Q]]) -> Matrix:
    return [list(col) for col in zip(*M)] if M else []


def shape(M: Sequence[Sequence[Q]]) -> tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def matmul(A: Sequence[Sequence[Q]], B: Sequence[Sequence[Q]]) -> Matrix:
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [Q(0)] * n
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Sequence[Sequence[Q]], v: Sequence[Q]) -> Vector:
    return [sum((a * x for a, x in zip(row, v) if a and x), Q(0)) for row in A]


def add(A: Sequence[Sequence[Q]], B: Sequence[Sequence[Q]]) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A: Sequence[Sequence[Q]], B: Sequence[Sequence[Q]]) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(c, A: Sequence[Sequence[Q]]) -> Matrix:
    c = q(c)
    return [[c * a for a in row] for row in A]


def commutator(A, B) -> Matrix:
    return sub(matmul(A, B), matmul(B, A))


def vadd(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    return [a + b for a, b in zip(u, v)]


def vsub(u: Sequence[Q], v: Sequence[Q]) -> Vector:
    return [a - b for a, b in zip(u, v)]


def vscale(c, v: Sequence[Q]) -> Vector:
    c = q(c)
    return [c * a for a in v]


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence[Q]], n: int | None = None) -> Vector:
    if n is None:
        n = len(vectors[0])
    out = [Q(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                if x:
                    out[i] += c * x
    return out


def dot(u: Sequence[Q], v: Sequence[Q]) -> Q:
    return sum((a * b for a, b in zip(u, v) if a and b), Q(0))


def is_zero(v) -> bool:
    if v and isinstance(v[0], list):
        return all(not x for row in v for x in row)
    return all(not x for x in v)


def trace(M: Sequence[Sequence[Q]]) -> Q:
    return sum((M[i][i] for i in range(len(M))), Q(0))


def rref(M: Sequence[Sequence[Q]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; the input is not modified."""
    A = [list(map(q, row)) for row in M]
    rows, cols = shape(A)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        prow = [x * inv for x in A[r]]
        A[r] = prow
        nz = [j for j in range(c, cols) if prow[j]]
        for i in range(rows):
            if i != r:
                a = A[i][c]
                if a:
                    row = A[i]
                    for j in nz:
                        row[j] -= a * prow[j]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: Sequence[Sequence[Q]]) -> int:
    return len(rref(M)[1]) if M else 0


def kernel_basis(M: Sequence[Sequence[Q]], ncols: int | None = None) -> list[Vector]:
    """Null space basis, one vector per free column in increasing column order."""
    cols = ncols if ncols is not None else shape(M)[1]
    if not M:
        return [unit_vector(cols, j) for j in range(cols)]
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [Q(0)] * cols
        v[free] = Q(1)
        for row, p in zip(R, pivots):
            if row[free]:
                v[p] = -row[free]
        basis.append(v)
    return basis


def eigenspace(M: Sequence[Sequence[Q]], lam) -> list[Vector]:
    n = len(M)
    lam = q(lam)
    shifted = [[M[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
    return kernel_basis(shifted, n)


def solve(A: Sequence[Sequence[Q]], b: Sequence[Q]) -> Vector | None:
    """One solution of A x = b (free variables set to 0), or None if inconsistent."""
    rows, cols = len(A), (len(A[0]) if A else 0)
    aug = [list(A[i]) + [q(b[i])] for i in range(rows)]
    R, pivots = rref(aug)
    if pivots and pivots[-1] == cols:
        return None
    x = [Q(0)] * cols
    for row, p in zip(R, pivots):
        x[p] = row[cols]
    return x


def inverse(M: Sequence[Sequence[Q]]) -> Matrix:
    n = len(M)
    aug = [list(map(q, M[i])) + [Q(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def det(M: Sequence[Sequence[Q]]) -> Q:
    A = [list(map(q, row)) for row in M]
    n = len(A)
    sign = Q(1)
    result = Q(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Q(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            sign = -sign
        piv = A[c][c]
        result *= piv
        for i in range(c + 1, n):
            a = A[i][c]
            if a:
                f = a / piv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return sign * result


def ext_power_trace(M: Sequence[Sequence[Q]], k: int) -> Q:
    """Trace of the k-th exterior power: the sum of all k-by-k principal minors."""
    m = len(M)
    if not 0 <= k <= m:
        raise RangeError(f"k={k} outside 0..{m}")
    if k == 0:
        return Q(1)
    total = Q(0)
    for idx in combinations(range(m), k):
        total += det([[M[i][j] for j in idx] for i in idx])
    return total


def charpoly(M: Sequence[Sequence[Q]]) -> list[Q]:
    """Coefficients of det(tI - M), leading first, via Faddeev-LeVerrier."""
    n = len(M)
    A = to_matrix(M)
    coeffs = [Q(1)]
    Mk = zeros(n)
    for k in range(1, n + 1):
        Mk = matmul(A, Mk)
        for i in range(n):
            Mk[i][i] += coeffs[-1]
        AM = matmul(A, Mk)
        coeffs.append(-trace(AM) / k)
    return coeffs


# subspaces, always given by a list of spanning vectors


def row_basis(vectors: Sequence[Sequence[Q]]) -> list[Vector]:
    """Reduced echelon basis of the span."""
    vectors = [v for v in vectors]
    if not vectors:
        return []
    return rref(vectors)[0]


def independent_subset(vectors: Sequence[Sequence[Q]]) -> list[int]:
    """Indices of a maximal independent subset, chosen greedily in order."""
    if not vectors:
        return []
    return rref(transpose(vectors))[1]


def in_span(basis: Sequence[Sequence[Q]], v: Sequence[Q]) -> bool:
    if is_zero(v):
        return True
    if not basis:
        return False
    return solve(transpose(basis), v) is not None


def coordinates(basis: Sequence[Sequence[Q]], v: Sequence[Q]) -> Vector:
    """Coordinates of v in an independent family; raises if v is outside the span."""
    if not basis:
        if is_zero(v):
            return []
        raise ValueError("vector not in span")
    x = solve(transpose(basis), v)
    if x is None:
        raise ValueError("vector not in span")
    return x


def span_dim(vectors: Sequence[Sequence[Q]]) -> int:
    return rank(list(vectors)) if vectors else 0


def same_span(a: Sequence[Sequence[Q]], b: Sequence[Sequence[Q]]) -> bool:
    return row_basis(a) == row_basis(b)


def contains(big: Sequence[Sequence[Q]], small: Sequence[Sequence[Q]]) -> bool:
    return span_dim(list(big) + list(small)) == span_dim(big)


def intersection(a: Sequence[Sequence[Q]], b: Sequence[Sequence[Q]]) -> list[Vector]:
    """Basis of span(a) ∩ span(b)."""
    a, b = row_basis(a), row_basis(b)
    if not a or not b:
        return []
    stacked = transpose(a + [vscale(-1, v) for v in b])
    sols = kernel_basis(stacked, len(a) + len(b))
    return row_basis([lincomb(s[: len(a)], a) for s in sols])


def complement_in(big: Sequence[Sequence[Q]], small: Sequence[Sequence[Q]]) -> list[Vector]:
    """Vectors from big extending a basis of small to a basis of span(big)."""
    small = row_basis(small)
    picked = independent_subset(small + list(big))
    return [list(big[i - len(small)]) for i in picked if i >= len(small)]
