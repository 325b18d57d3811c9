"""sl2-triples and their Jacobson-Morozov decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from itertools import combinations, product
from typing import Sequence

from . import exactla as la
from .liealg import LieAlgebra, classical_form, make_classical
from .rootsys import DomainError, WeightedDiagram, h_from_weighted_diagram, root_value

Vector = list[Q]


class NotAnOrbitDiagram(DomainError):
    pass


@dataclass
class Sl2Triple:
    algebra: LieAlgebra
    e: Vector
    h: Vector
    f: Vector
    label: str = ""
    # matrices of the standard representation centralising the triple, one
    # per generator of the component group of its centraliser (classical only)
    component_group: list = field(default_factory=list, repr=False)

    def relations_hold(self) -> bool:
        L = self.algebra
        return (
            L.bracket(self.h, self.e) == la.vscale(2, self.e)
            and L.bracket(self.h, self.f) == la.vscale(-2, self.f)
            and L.bracket(self.e, self.f) == self.h
        )


def _grading_indices(L: LieAlgebra, h: Vector) -> dict[int, list[Vector]] | None:
    """Fast path: ad_h diagonal in the given basis."""
    adh = L.ad(h)
    for i in range(L.dim):
        for j in range(L.dim):
            if i != j and adh[i][j]:
                return None
    out: dict[int, list[Vector]] = {}
    for i in range(L.dim):
        w = adh[i][i]
        if w.denominator != 1:
            return None
        out.setdefault(int(w), []).append(L.basis_vector(i))
    return out


def grading(L: LieAlgebra, h: Vector) -> dict[int, list[Vector]]:
    """Integer eigenspaces of ad_h, keyed by eigenvalue."""
    fast = _grading_indices(L, h)
    if fast is not None:
        return dict(sorted(fast.items()))
    adh = L.ad(h)
    out: dict[int, list[Vector]] = {}
    found = 0
    bound = 0
    while found < L.dim:
        for lam in ((bound,) if bound == 0 else (bound, -bound)):
            space = la.eigenspace(adh, lam)
            if space:
                out[lam] = space
                found += len(space)
        bound += 1
        if bound > 2 * L.dim + 2:
            raise ArithmeticError("ad_h does not have an integral diagonalisable spectrum")
    return dict(sorted(out.items()))


def _solve_f(L: LieAlgebra, e: Vector, h: Vector, gr: dict[int, list[Vector]]) -> Vector | None:
    """f in g_{-2} with [e, f] = h, or None."""
    if la.is_zero(e):
        return la.zero_vector(L.dim) if la.is_zero(h) else None
    space = gr.get(-2, [])
    if not space:
        return None
    cols = L.ad_on(e, space)
    c = la.solve(cols, h)
    if c is None:
        return None
    return la.lincomb(c, space, L.dim)


# partitions


def partition_is_valid(family: str, size: int, parts: Sequence[int]) -> bool:
    if sum(parts) != size or any(p <= 0 for p in parts):
        return False
    if family == "sl":
        return True
    bad_parity = 0 if family == "so" else 1
    for p in set(parts):
        if p % 2 == bad_parity and parts.count(p) % 2:
            return False
    return True


def partitions(n: int, largest: int | None = None):
    """Partitions of n in reverse lexicographic order, starting with (n)."""
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def orbit_partitions(family: str, size: int) -> list[tuple[int, ...]]:
    return [p for p in partitions(size) if partition_is_valid(family, size, list(p))]


def _jordan_data(family: str, parts: Sequence[int]):
    """Weight vectors and the invariant form in a Jordan basis.

    Returns (vectors, pairing) where vectors is a list of (block, k, weight)
    and pairing maps a vector index to (partner index, form value).
    """
    parts = sorted(parts, reverse=True)
    vectors = []
    start = []
    for b, d in enumerate(parts):
        start.append(len(vectors))
        for k in range(d):
            vectors.append((b, k, d - 1 - 2 * k))
    pairing: dict[int, tuple[int, Q]] = {}
    if family == "sl":
        return parts, vectors, start, pairing, []
    symmetric = family == "so"
    singles, pairs = [], []
    b = 0
    while b < len(parts):
        d = parts[b]
        self_dual = (d % 2 == 1) == symmetric
        if self_dual:
            singles.append(b)
            b += 1
        else:
            pairs.append((b, b + 1))
            b += 2
    eps = 1 if symmetric else -1
    zero_sign: list[tuple[int, int]] = []
    # odd single blocks in so carry a zero-weight vector; alternate signs so they pair up
    odd_singles = [b for b in singles if parts[b] % 2 == 1]
    sign_of = {b: (1 if t % 2 == 0 else -1) for t, b in enumerate(odd_singles)}
    for b in singles:
        d = parts[b]
        m = (d - 1) // 2
        s = Q(sign_of.get(b, 1))
        if d % 2 == 1:
            s *= (-1) ** m  # so the middle vector has B(x, x) = sign_of[b]
        for k in range(d):
            pairing[start[b] + k] = (start[b] + d - 1 - k, s * (-1) ** k)
        if d % 2 == 1:
            zero_sign.append((start[b] + m, sign_of[b]))
    for b1, b2 in pairs:
        d = parts[b1]
        for k in range(d):
            val = Q((-1) ** k)
            pairing[start[b1] + k] = (start[b2] + d - 1 - k, val)
            # B(v_{b2,d-1-k}, v_{b1,k}) = eps * B(v_{b1,k}, v_{b2,d-1-k})
            pairing[start[b2] + d - 1 - k] = (start[b1] + k, eps * val)
    return parts, vectors, start, pairing, zero_sign


def triple_from_partition(family: str, size: int, partition: Sequence[int], algebra: LieAlgebra | None = None) -> Sl2Triple:
    family = family.lower()
    parts = list(partition)
    if not partition_is_valid(family, size, parts):
        raise DomainError(f"{tuple(parts)} is not a valid {family}{size} orbit partition")
    L = algebra if algebra is not None else make_classical(family, size)
    parts, vectors, start, pairing, zero_sign = _jordan_data(family, parts)
    N = size
    # E in the Jordan basis: e v_{b,k} = v_{b,k-1}
    E = la.zeros(N)
    for idx, (b, k, w) in enumerate(vectors):
        if k > 0:
            E[idx - 1][idx] = Q(1)
    # columns of T: new basis vectors u_0..u_{N-1} in Jordan coordinates
    T = la.zeros(N)
    pos_vectors = sorted((i for i, v in enumerate(vectors) if v[2] > 0), key=lambda i: (-vectors[i][2], i))
    if family == "sl":
        order = sorted(range(N), key=lambda i: (-vectors[i][2], i))
        for col, i in enumerate(order):
            T[i][col] = Q(1)
    else:
        J = classical_form(family, N)
        for col, i in enumerate(pos_vectors):
            partner, val = pairing[i]
            mirror = N - 1 - col
            T[i][col] = Q(1)
            T[partner][mirror] = J[col][mirror] / val
        zeros_ = [i for i, v in enumerate(vectors) if v[2] == 0]
        lo = len(pos_vectors)
        if family == "so":
            plus = [i for i, s in zero_sign if s > 0]
            minus = [i for i, s in zero_sign if s < 0]
            col = lo
            for x1, x2 in zip(plus, minus):
                # u = (x1 + x2)/2 and u' = x1 - x2 are isotropic with B(u, u') = 1
                T[x1][col], T[x2][col] = Q(1, 2), Q(1, 2)
                T[x1][N - 1 - col], T[x2][N - 1 - col] = Q(1), Q(-1)
                col += 1
            if len(plus) > len(minus):
                T[plus[-1]][N // 2] = Q(1)
        else:
            done = set()
            col = lo
            for i in zeros_:
                if i in done:
                    continue
                partner, val = pairing[i]
                T[i][col] = Q(1)
                T[partner][N - 1 - col] = J[col][N - 1 - col] / val
                done.update((i, partner))
                col += 1
        # sanity: T^t G T = J
        G = la.zeros(N)
        for i, (p, v) in pairing.items():
            G[i][p] = v
        assert la.matmul(la.matmul(la.transpose(T), G), T) == J, "form mismatch"
    Tinv = la.inverse(T)
    e_mat = la.matmul(la.matmul(Tinv, E), T)
    weights = [vectors[i][2] for i in range(N)]
    h_mat = la.matmul(la.matmul(Tinv, la.diag(weights)), T)
    e = L.from_matrix(e_mat)
    h = L.from_matrix(h_mat)
    f = _solve_f(L, e, h, grading(L, h))
    if f is None:
        raise ArithmeticError("no f in g_{-2} completes the triple")
    triple = Sl2Triple(L, e, h, f, label=",".join(map(str, parts)))
    triple.component_group = _component_generators(family, N, parts, start, T, Tinv, pairing)
    assert triple.relations_hold()
    return triple


def _component_generators(family, N, parts, start, T, Tinv, pairing) -> list[la.Matrix]:
    """Reflections in the orthogonal multiplicity spaces.

    A self-dual block may be negated without disturbing the form or e.  In
    so_N with N even we pair reflections so the determinant stays 1 (for N odd
    a reflection times -Id lies in SO_N and acts the same way on the algebra).
    """
    if family == "sl":
        return []
    symmetric = family == "so"
    singles = []
    b = 0
    while b < len(parts):
        if (parts[b] % 2 == 1) == symmetric:
            singles.append(b)
            b += 1
        else:
            b += 2
    by_size: dict[int, list[int]] = {}
    for b in singles:
        by_size.setdefault(parts[b], []).append(b)

    def negate(blocks):
        D = la.identity(N)
        for blk in blocks:
            for k in range(parts[blk]):
                D[start[blk] + k][start[blk] + k] = Q(-1)
        return la.matmul(la.matmul(Tinv, D), T)

    gens = []
    for d, blocks in sorted(by_size.items()):
        b = blocks[0]
        if symmetric and N % 2 == 0 and d % 2 == 1:
            others = [x for x in singles if x != b and parts[x] % 2 == 1]
            if others:
                gens.append(negate([b, others[0]]))
        else:
            gens.append(negate([b]))
    return gens


def _weight_two_roots(L: LieAlgebra, weights) -> list[int]:
    out = []
    for idx, beta in enumerate(L.basis_roots):
        if beta is not None and root_value(L.root_system, beta, weights) == 2:
            out.append(idx)
    return out


def triple_from_weighted_diagram(L: LieAlgebra, d: WeightedDiagram, max_candidates: int | None = None) -> Sl2Triple:
    """Search e among small combinations of weight-2 root vectors.

    Candidates are {0,1} combinations ordered by support size, then
    {-1,0,1,2} combinations; e is accepted once some f in g_{-2} satisfies
    [e, f] = h, which makes (e, h, f) an sl2-triple.
    """
    if L.root_system is None or L.root_system.cartan != d.root_system.cartan:
        raise DomainError("diagram and algebra come from different root systems")
    rs = L.root_system
    hx = h_from_weighted_diagram(d)
    h = la.zero_vector(L.dim)
    hpos = len(rs.positive)
    for i, c in enumerate(hx):
        h[hpos + i] = c
    if la.is_zero(h):
        z = la.zero_vector(L.dim)
        return Sl2Triple(L, z, z[:], z[:], label=d.label)
    gr = grading(L, h)
    cands = _weight_two_roots(L, d.weights)
    m = len(cands)
    budget = max_candidates if max_candidates is not None else 4 ** m
    tried = 0

    def attempt(coeffs) -> Sl2Triple | None:
        e = la.zero_vector(L.dim)
        for idx, c in zip(cands, coeffs):
            e[idx] = Q(c)
        f = _solve_f(L, e, h, gr)
        if f is None:
            return None
        return Sl2Triple(L, e, h, f, label=d.label)

    for k in range(1, m + 1):
        for support in combinations(range(m), k):
            coeffs = [0] * m
            for s in support:
                coeffs[s] = 1
            tried += 1
            if tried > budget:
                raise NotAnOrbitDiagram(f"no e found for {d.weights} within {budget} candidates")
            t = attempt(coeffs)
            if t is not None:
                return t
    for coeffs in product((-1, 0, 1, 2), repeat=m):
        if all(c in (0, 1) for c in coeffs):
            continue
        tried += 1
        if tried > budget:
            break
        t = attempt(coeffs)
        if t is not None:
            return t
    raise NotAnOrbitDiagram(f"{d.weights} is not the diagram of a nilpotent orbit")


@dataclass
class Module:
    highest_weight: int
    vector: Vector
    chain: list[Vector]  # chain[k] = ad_f^k(vector)


@dataclass
class JMData:
    triple: Sl2Triple
    grading: dict[int, list[Vector]]
    u: list[Vector]
    u_plus: list[Vector]
    p: list[Vector]
    centralizer_e: list[Vector]
    modules: list[Module]
    trivial_multiplicity: int
    c: list[Vector]
    even: bool
    adapted: la.Matrix = field(repr=False)  # columns are adapted basis vectors
    adapted_inverse: la.Matrix = field(repr=False)
    columns: list[tuple[int, int]] = field(repr=False)  # (module index or -1 for c, depth)

    @property
    def algebra(self) -> LieAlgebra:
        return self.triple.algebra

    @property
    def weights(self) -> list[int]:
        """Highest weights n_j of the nontrivial modules."""
        return [m.highest_weight for m in self.modules]


def jm_decompose(triple: Sl2Triple) -> JMData:
    L = triple.algebra
    e, h, f = triple.e, triple.h, triple.f
    gr = grading(L, h)
    u = [v for w, vs in gr.items() if w > 0 for v in vs]
    u_plus = [v for w, vs in gr.items() if w >= 2 for v in vs]
    p = [v for w, vs in gr.items() if w >= 0 for v in vs]
    modules: list[Module] = []
    c: list[Vector] = []
    ge: list[Vector] = []
    for w in sorted(gr, reverse=True):
        if w < 0:
            break
        space = gr[w]
        sols = la.kernel_basis(L.ad_on(e, space), len(space)) if not la.is_zero(e) else [
            la.unit_vector(len(space), i) for i in range(len(space))
        ]
        hw = [la.lincomb(s, space, L.dim) for s in sols]
        ge.extend(hw)
        if w == 0:
            c = hw
            continue
        for v in hw:
            chain = [v]
            for _ in range(w):
                chain.append(L.bracket(f, chain[-1]))
            assert not la.is_zero(chain[-1])
            assert la.is_zero(L.bracket(f, chain[-1]))
            modules.append(Module(w, v, chain))
    columns: list[tuple[int, int]] = []
    cols: list[Vector] = []
    for v in c:
        cols.append(v)
        columns.append((-1, 0))
    for mi, mod in enumerate(modules):
        for k, v in enumerate(mod.chain):
            cols.append(v)
            columns.append((mi, k))
    if len(cols) != L.dim:
        raise ArithmeticError("module bookkeeping does not cover the algebra")
    P = la.transpose(cols)
    Pinv = la.inverse(P)
    even = all(w % 2 == 0 for w in gr)
    return JMData(
        triple=triple,
        grading=gr,
        u=u,
        u_plus=u_plus,
        p=p,
        centralizer_e=ge,
        modules=modules,
        trivial_multiplicity=len(c),
        c=c,
        even=even,
        adapted=P,
        adapted_inverse=Pinv,
        columns=columns,
    )


def primitive_decompose(jm: JMData, x: Sequence[Q]) -> dict[tuple[int, int], Vector]:
    """Write x = sum ad_f^k(y_{n,k}) with y_{n,k} in g_e ∩ g_n."""
    coeffs = la.matvec(jm.adapted_inverse, [la.q(t) for t in x])
    n_dim = jm.algebra.dim
    out: dict[tuple[int, int], Vector] = {}
    for col, (c, (mi, k)) in enumerate(zip(coeffs, jm.columns)):
        if not c:
            continue
        if mi < 0:
            key, base = (0, 0), jm.c[col]
        else:
            mod = jm.modules[mi]
            key, base = (mod.highest_weight, k), mod.vector
        y = out.setdefault(key, la.zero_vector(n_dim))
        for i, b in enumerate(base):
            if b:
                y[i] += c * b
    return out


def recompose(jm: JMData, parts: dict[tuple[int, int], Vector]) -> Vector:
    L = jm.algebra
    total = la.zero_vector(L.dim)
    for (n, k), y in parts.items():
        v = y
        for _ in range(k):
            v = L.bracket(jm.triple.f, v)
        total = la.vadd(total, v)
    return total


@dataclass
class SlodowySlice:
    basepoint: Vector
    directions: list[Vector]

    @property
    def dim(self) -> int:
        return len(self.directions)


def slodowy_slice(jm: JMData) -> SlodowySlice:
    return SlodowySlice(jm.triple.f, list(jm.centralizer_e))
