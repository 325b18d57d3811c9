"""Root systems of simple types with Chevalley structure constants.

Simple roots follow Bourbaki numbering.  The Cartan matrix is stored with
``cartan[i][j] = <alpha_j, alpha_i^vee>``, so row i lists the values of the
simple roots on the coroot h_i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property

from . import exactla as la

Root = tuple[int, ...]


class DomainError(ValueError):
    pass


class ConstructionError(RuntimeError):
    pass


def _chain(n: int) -> list[list[int]]:
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
        if i + 1 < n:
            A[i][i + 1] = A[i + 1][i] = -1
    return A


def cartan_matrix(kind: str, rank: int) -> list[list[int]]:
    kind = kind.upper()
    valid = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if not valid.get(kind, False):
        raise DomainError(f"no simple type {kind}{rank}")
    A = _chain(rank)
    if kind == "B":
        A[rank - 1][rank - 2] = -2
    elif kind == "C":
        A[rank - 2][rank - 1] = -2
    elif kind == "D":
        A[rank - 2][rank - 1] = A[rank - 1][rank - 2] = 0
        A[rank - 3][rank - 1] = A[rank - 1][rank - 3] = -1
    elif kind == "E":
        # Bourbaki: 1-3-4-5-..., with 2 attached to 4
        A = [[0] * rank for _ in range(rank)]
        edges = [(0, 2), (2, 3), (3, 1)] + [(k, k + 1) for k in range(3, rank - 1)]
        for i in range(rank):
            A[i][i] = 2
        for i, j in edges:
            A[i][j] = A[j][i] = -1
    elif kind == "F":
        A[2][1] = -2
    elif kind == "G":
        A = [[2, -3], [-1, 2]]
    return A


def simple_root_norms(kind: str, rank: int) -> list[int]:
    """Squared lengths (alpha_i, alpha_i), long roots normalised to 2 (6 for G2)."""
    kind = kind.upper()
    if kind == "B":
        return [2] * (rank - 1) + [1]
    if kind == "C":
        return [1] * (rank - 1) + [2]
    if kind == "F":
        return [2, 2, 1, 1]
    if kind == "G":
        return [2, 6]
    return [2] * rank


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    norms: tuple[int, ...]
    positive: tuple[Root, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def label(self) -> str:
        return f"{self.kind}{self.rank}"

    @property
    def roots(self) -> tuple[Root, ...]:
        """Positive roots followed by their negatives, in the same order."""
        return self.positive + tuple(neg(r) for r in self.positive)

    def is_root(self, r: Root) -> bool:
        return r in self._index

    def pairing(self, beta: Root, i: int) -> int:
        """<beta, alpha_i^vee>."""
        return sum(b * a for b, a in zip(beta, self.cartan[i]))

    def inner(self, a: Root, b: Root) -> Q:
        total = Q(0)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        total += ai * bj * Q(self.cartan[i][j] * self.norms[i], 2)
        return total

    def coroot(self, a: Root) -> list[Q]:
        """Coordinates of a^vee in the basis of simple coroots."""
        na = self.inner(a, a)
        return [Q(c * self.norms[i]) / na for i, c in enumerate(a)]

    def height(self, r: Root) -> int:
        return sum(r)

    @cached_property
    def structure_constants(self) -> dict[tuple[Root, Root], int]:
        return chevalley_constants(self)


def neg(r: Root) -> Root:
    return tuple(-x for x in r)


def radd(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _positive_roots(cartan: list[list[int]]) -> list[Root]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # p = how far we can go down the alpha_i string from beta
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q_up = p - sum(b * a for b, a in zip(beta, cartan[i]))
                if q_up > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), r))


def build_root_system(kind: str, rank: int) -> RootSystem:
    kind = kind.upper()
    A = cartan_matrix(kind, rank)
    pos = _positive_roots(A)
    rs = RootSystem(
        kind=kind,
        rank=rank,
        cartan=tuple(tuple(r) for r in A),
        norms=tuple(simple_root_norms(kind, rank)),
        positive=tuple(pos),
    )
    for k, r in enumerate(rs.roots):
        rs._index[r] = k
    return rs


def _string_below(rs: RootSystem, beta: Root, alpha: Root) -> int:
    p = 0
    cur = beta
    while True:
        cur = tuple(b - a for b, a in zip(cur, alpha))
        if not rs.is_root(cur):
            return p
        p += 1


def chevalley_constants(rs: RootSystem) -> dict[tuple[Root, Root], int]:
    """N_{a,b} for every ordered pair of roots whose sum is a root.

    Signs are fixed on extraspecial pairs (taken positive) and propagated with
    the standard identities; the result is checked against the Jacobi identity
    when the Lie algebra is assembled.
    """
    positive = rs.positive
    order = {r: k for k, r in enumerate(positive)}
    extraspecial: dict[Root, tuple[Root, Root]] = {}
    for xi in positive:
        if sum(xi) < 2:
            continue
        for a in positive:  # height-then-lex order, so simple roots come first
            b = tuple(x - y for x, y in zip(xi, a))
            if rs.is_root(b) and all(c >= 0 for c in b):
                extraspecial[xi] = (a, b)
                break

    memo: dict[tuple[Root, Root], Q] = {}

    def sq(r: Root) -> Q:
        return rs.inner(r, r)

    def N(a: Root, b: Root) -> Q:
        c = radd(a, b)
        if not rs.is_root(c):
            return Q(0)
        key = (a, b)
        if key in memo:
            return memo[key]
        apos = order.get(a) is not None
        bpos = order.get(b) is not None
        if apos and bpos:
            val = _positive_pair(a, b, c)
        elif not apos and not bpos:
            val = -N(neg(a), neg(b))
        elif apos:
            if c in order:
                val = -sq(c) / sq(a) * N(neg(b), c)
            else:
                val = sq(c) / sq(b) * N(neg(c), a)
        else:
            val = -N(b, a)
        memo[key] = val
        return val

    def _positive_pair(g: Root, d: Root, xi: Root) -> Q:
        a, b = extraspecial[xi]
        p = _string_below(rs, b, a)
        if (g, d) == (a, b):
            return Q(p + 1)
        if (g, d) == (b, a):
            return Q(-(p + 1))
        nab = Q(p + 1)
        total = Q(0)
        da = tuple(x - y for x, y in zip(d, a))
        ga = tuple(x - y for x, y in zip(g, a))
        if rs.is_root(da):
            total += N(d, neg(a)) * N(g, neg(b)) / sq(da)
        if rs.is_root(ga):
            total += N(neg(a), g) * N(d, neg(b)) / sq(ga)
        return sq(xi) * total / nab

    table: dict[tuple[Root, Root], int] = {}
    roots = rs.roots
    for a in roots:
        for b in roots:
            if rs.is_root(radd(a, b)):
                v = N(a, b)
                if v.denominator != 1:
                    raise ConstructionError(f"non-integral N for {a},{b}: {v}")
                table[(a, b)] = int(v)
    return table


@dataclass(frozen=True)
class WeightedDiagram:
    root_system: RootSystem
    weights: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.weights) != self.root_system.rank:
            raise DomainError("one weight per simple root is required")
        if any(w not in (0, 1, 2) for w in self.weights):
            raise DomainError("diagram weights must lie in {0,1,2}")


def h_from_weighted_diagram(d: WeightedDiagram) -> list[Q]:
    """Coordinates x of h = sum x_j h_j with alpha_i(h) = weight_i.

    alpha_i(h_j) = cartan[j][i], so x solves A^T x = w.
    """
    A = la.to_matrix(d.root_system.cartan)
    x = la.solve(la.transpose(A), [Q(w) for w in d.weights])
    assert x is not None
    return x


def root_value(rs: RootSystem, beta: Root, weights) -> int:
    """beta(h) for the Cartan element attached to diagram weights."""
    return sum(b * w for b, w in zip(beta, weights))
