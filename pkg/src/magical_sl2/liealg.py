"""Finite-dimensional Lie algebras over Q given by sparse bracket tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import cached_property
from typing import Iterable, Sequence

from . import exactla as la
from .rootsys import DomainError, RootSystem, neg, radd

Vector = list[Q]
Sparse = dict[int, Q]


class LieAlgebra:
    """Basis b_0..b_{n-1} with [b_i, b_j] stored as sparse coordinate dicts."""

    def __init__(
        self,
        labels: Sequence[str],
        table: Sequence[Sequence[Sparse]],
        *,
        name: str = "",
        matrices: Sequence[la.Matrix] | None = None,
        root_system: RootSystem | None = None,
        basis_roots: Sequence | None = None,
        family: str | None = None,
        size: int | None = None,
    ):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.table = [list(row) for row in table]
        self.name = name
        self.matrices = [la.to_matrix(m) for m in matrices] if matrices is not None else None
        self.root_system = root_system
        self.basis_roots = tuple(basis_roots) if basis_roots is not None else None
        self.family = family
        self.size = size
        self._pivots = None
        if self.matrices is not None:
            self._prepare_coordinates()

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or '?'}, dim={self.dim})"

    # coordinates and matrices

    def _prepare_coordinates(self):
        flat = [[x for row in m for x in row] for m in self.matrices]
        pivots = la.independent_subset(la.transpose(flat))
        if len(pivots) != self.dim:
            raise DomainError("matrix realization is not linearly independent")
        square = [[flat[b][p] for b in range(self.dim)] for p in pivots]
        self._pivots = pivots
        self._pivot_inverse = la.inverse(square)

    def from_matrix(self, X: Sequence[Sequence[Q]]) -> Vector:
        """Coordinates of a matrix in the realization; checked exactly."""
        if self._pivots is None:
            raise DomainError(f"{self.name} has no matrix realization")
        flat = [la.q(x) for row in X for x in row]
        coords = la.matvec(self._pivot_inverse, [flat[p] for p in self._pivots])
        if self.to_matrix(coords) != la.to_matrix(X):
            raise DomainError("matrix does not lie in the algebra")
        return coords

    def to_matrix(self, x: Sequence[Q]) -> la.Matrix:
        if self.matrices is None:
            raise DomainError(f"{self.name} has no matrix realization")
        n = len(self.matrices[0])
        out = la.zeros(n)
        for c, m in zip(x, self.matrices):
            if c:
                for i in range(n):
                    for j, v in enumerate(m[i]):
                        if v:
                            out[i][j] += c * v
        return out

    def basis_vector(self, i: int) -> Vector:
        return la.unit_vector(self.dim, i)

    # brackets

    def _check(self, *vs):
        for v in vs:
            if len(v) != self.dim:
                raise DomainError(f"expected a vector of length {self.dim}, got {len(v)}")

    def bracket(self, x: Sequence[Q], y: Sequence[Q]) -> Vector:
        self._check(x, y)
        out = [Q(0)] * self.dim
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j, b in ys:
                for k, c in row[j].items():
                    out[k] += a * b * c
        return out

    def bracket_sparse(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    v = out.get(k, 0) + a * b * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def ad(self, x: Sequence[Q]) -> la.Matrix:
        """Matrix of ad_x; column j is [x, b_j]."""
        self._check(x)
        M = la.zeros(self.dim)
        for i, a in enumerate(x):
            if not a:
                continue
            row = self.table[i]
            for j in range(self.dim):
                for k, c in row[j].items():
                    M[k][j] += a * c
        return M

    def ad_on(self, x: Sequence[Q], vectors: Sequence[Sequence[Q]]) -> la.Matrix:
        """Matrix whose columns are [x, v] for v in vectors."""
        return la.transpose([self.bracket(x, v) for v in vectors]) if vectors else []

    @cached_property
    def killing_gram(self) -> la.Matrix:
        # tr(ad_i ad_j) = sum_{l,k} c_{il}^k c_{jk}^l
        n = self.dim
        G = la.zeros(n)
        for i in range(n):
            for j in range(i, n):
                s = Q(0)
                rj = self.table[j]
                for l_, col in enumerate(self.table[i]):
                    for k, c in col.items():
                        d = rj[k].get(l_)
                        if d:
                            s += c * d
                G[i][j] = G[j][i] = s
        return G

    def killing_form(self, x: Sequence[Q], y: Sequence[Q]) -> Q:
        self._check(x, y)
        return la.dot(x, la.matvec(self.killing_gram, y))

    def jacobi_failures(self, triples: Iterable[tuple[int, int, int]] | None = None, limit: int = 1):
        """Basis triples where the Jacobi identity fails (at most ``limit``)."""
        n = self.dim
        if triples is None:
            triples = ((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
        bad = []
        unit = lambda i: {i: Q(1)}  # noqa: E731
        for i, j, k in triples:
            s: Sparse = {}
            for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                inner = self.table[b][c]
                for key, val in self.bracket_sparse(unit(a), inner).items():
                    s[key] = s.get(key, 0) + val
            if any(s.values()):
                bad.append((i, j, k))
                if len(bad) >= limit:
                    break
        return bad

    def is_antisymmetric(self) -> bool:
        for i in range(self.dim):
            if self.table[i][i]:
                return False
            for j in range(i + 1, self.dim):
                a, b = self.table[i][j], self.table[j][i]
                if set(a) != set(b) or any(a[k] != -b[k] for k in a):
                    return False
        return True

    def restrict(self, basis: Sequence[Sequence[Q]], name: str = "") -> "LieAlgebra":
        """The subalgebra spanned by ``basis`` as a Lie algebra in its own coordinates."""
        basis = [list(v) for v in basis]
        k = len(basis)
        table = [[{} for _ in range(k)] for _ in range(k)]
        if k:
            T = la.transpose(basis)
            for a in range(k):
                for b in range(a + 1, k):
                    br = self.bracket(basis[a], basis[b])
                    if la.is_zero(br):
                        continue
                    c = la.solve(T, br)
                    if c is None:
                        raise DomainError("subspace is not closed under the bracket")
                    d = {i: v for i, v in enumerate(c) if v}
                    table[a][b] = d
                    table[b][a] = {i: -v for i, v in d.items()}
        return LieAlgebra([f"x{i}" for i in range(k)], table, name=name)


def _table_from_matrices(mats: Sequence[la.Matrix], coords) -> list[list[Sparse]]:
    n = len(mats)
    table = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = coords(la.commutator(mats[i], mats[j]))
            d = {k: v for k, v in enumerate(c) if v}
            table[i][j] = d
            table[j][i] = {k: -v for k, v in d.items()}
    return table


def _elementary(n: int, i: int, j: int) -> la.Matrix:
    m = la.zeros(n)
    m[i][j] = Q(1)
    return m


def classical_form(family: str, size: int) -> la.Matrix:
    """Gram matrix J of the anti-diagonal form preserved by so/sp."""
    J = la.zeros(size)
    for i in range(size):
        if family == "so":
            J[i][size - 1 - i] = Q(1)
        else:
            J[i][size - 1 - i] = Q(1 if i < size // 2 else -1)
    return J


def make_classical(family: str, size: int) -> LieAlgebra:
    """sl_n, so_N or sp_2n with anti-diagonal invariant forms.

    Basis order: strictly upper triangular elements, then the diagonal
    (Cartan) elements, then strictly lower triangular elements.
    """
    family = family.lower()
    if family == "sl" and size >= 2:
        upper, lower, labels_u, labels_l = [], [], [], []
        for i in range(size):
            for j in range(size):
                if i < j:
                    upper.append(_elementary(size, i, j))
                    labels_u.append(f"E{i}{j}" if size <= 10 else f"E{i},{j}")
                elif i > j:
                    lower.append(_elementary(size, i, j))
                    labels_l.append(f"E{i}{j}" if size <= 10 else f"E{i},{j}")
        cartan = []
        for i in range(size - 1):
            m = la.zeros(size)
            m[i][i], m[i + 1][i + 1] = Q(1), Q(-1)
            cartan.append(m)
        mats = upper + cartan + lower
        labels = labels_u + [f"H{i}" for i in range(size - 1)] + labels_l
    elif family in ("so", "sp") and (size >= 3 if family == "so" else size >= 2 and size % 2 == 0):
        n = size
        prime = lambda i: n - 1 - i  # noqa: E731
        eps = [1 if (family == "so" or i < n // 2) else -1 for i in range(n)]
        upper, diag_, lower = [], [], []
        seen = set()
        for i in range(n):
            for j in range(n):
                # X = E_ij - eps_i eps_j E_{j'i'} (so: eps = 1); sp adds E_{i,i'}
                key_pair = (prime(j), prime(i))
                if family == "so" and i + j >= n - 1:
                    continue
                if family == "sp" and j > prime(i):
                    continue
                if (i, j) in seen:
                    continue
                m = _elementary(n, i, j)
                if (i, j) != key_pair:
                    sgn = Q(eps[i] * eps[j])
                    m[key_pair[0]][key_pair[1]] -= sgn
                seen.add((i, j))
                seen.add(key_pair)
                label = f"X{i},{j}"
                if i == j:
                    diag_.append((label, m))
                elif j > i:
                    upper.append((label, m))
                else:
                    lower.append((label, m))
        entries = upper + diag_ + lower
        labels = [e[0] for e in entries]
        mats = [e[1] for e in entries]
    else:
        raise DomainError(f"invalid classical algebra {family}{size}")
    probe = LieAlgebra(labels, [[{}] * len(mats)] * len(mats), matrices=mats)
    table = _table_from_matrices(probe.matrices, probe.from_matrix)
    return LieAlgebra(labels, table, name=f"{family}{size}", matrices=mats, family=family, size=size)


def make_chevalley(rs: RootSystem) -> LieAlgebra:
    """Chevalley basis: e_beta (positive roots), h_i, then e_{-beta}."""
    N = rs.structure_constants
    pos = list(rs.positive)
    r = rs.rank
    roots = pos + [None] * r + [neg(b) for b in pos]
    index = {b: k for k, b in enumerate(roots) if b is not None}
    n = len(roots)
    table = [[{} for _ in range(n)] for _ in range(n)]
    hpos = len(pos)
    for a_idx, a in enumerate(roots):
        for b_idx, b in enumerate(roots):
            if a_idx == b_idx:
                continue
            if a is None and b is None:
                continue
            if a is None:
                i = a_idx - hpos
                v = rs.pairing(b, i)
                if v:
                    table[a_idx][b_idx] = {b_idx: Q(v)}
            elif b is None:
                i = b_idx - hpos
                v = rs.pairing(a, i)
                if v:
                    table[a_idx][b_idx] = {a_idx: Q(-v)}
            else:
                s = radd(a, b)
                if not any(s):
                    cor = rs.coroot(a)
                    table[a_idx][b_idx] = {hpos + i: c for i, c in enumerate(cor) if c}
                elif s in index:
                    table[a_idx][b_idx] = {index[s]: Q(N[(a, b)])}
    labels = (
        ["e" + "".join(map(str, b)) for b in pos]
        + [f"h{i + 1}" for i in range(r)]
        + ["f" + "".join(map(str, b)) for b in pos]
    )
    return LieAlgebra(labels, table, name=rs.label, root_system=rs, basis_roots=roots)


@dataclass
class Subalgebra:
    """A subspace of a host algebra, spanned by a reduced echelon basis."""

    host: LieAlgebra
    basis: list[Vector]
    closed: bool = False

    @classmethod
    def span(cls, host: LieAlgebra, vectors: Sequence[Sequence[Q]], check_closed: bool = False):
        sub = cls(host, la.row_basis(list(vectors)))
        if check_closed:
            if not sub.is_closed():
                raise DomainError("span is not a subalgebra")
            sub.closed = True
        return sub

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_closed(self) -> bool:
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                if not la.in_span(self.basis, self.host.bracket(self.basis[a], self.basis[b])):
                    return False
        return True

    def contains(self, v: Sequence[Q]) -> bool:
        return la.in_span(self.basis, v)


def _as_parts(L) -> tuple[LieAlgebra, list[Vector]]:
    if isinstance(L, Subalgebra):
        return L.host, L.basis
    return L, [L.basis_vector(i) for i in range(L.dim)]


def centralizer(L, S: Sequence[Sequence[Q]]) -> Subalgebra:
    """Elements of L (an algebra or a subalgebra) commuting with every s in S."""
    host, basis = _as_parts(L)
    S = [s for s in S if not la.is_zero(s)]
    if not S:
        return Subalgebra(host, la.row_basis(basis), closed=True)
    rows = []
    for s in S:
        rows.extend(host.ad_on(s, basis))
    sols = la.kernel_basis(rows, len(basis))
    out = Subalgebra.span(host, [la.lincomb(c, basis, host.dim) for c in sols])
    out.closed = out.is_closed()
    assert out.closed
    return out


def center(L) -> Subalgebra:
    host, basis = _as_parts(L)
    return centralizer(L, basis)


def derived_subalgebra(L) -> Subalgebra:
    host, basis = _as_parts(L)
    brs = [host.bracket(basis[a], basis[b]) for a in range(len(basis)) for b in range(a + 1, len(basis))]
    return Subalgebra(host, la.row_basis([v for v in brs if not la.is_zero(v)]), closed=True)


def bracket(L: LieAlgebra, x, y) -> Vector:
    return L.bracket(x, y)


def killing_form(L: LieAlgebra, x, y) -> Q:
    return L.killing_form(x, y)
