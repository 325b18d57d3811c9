"""Graded Hamiltonian spaces built by Whittaker induction, with sampled exact checks.

A point of ``[S + (m ∩ g_e)] x^H G`` is a pair ``(x, g)``: ``x`` lists the fiber
coordinates (symplectic coordinates first, then coordinates on ``m ∩ g_e``)
and ``g`` is a matrix of the standard representation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Callable, Sequence

from . import exactla as la
from .liealg import LieAlgebra
from .magical import NotMagicalError, analyze
from .rootsys import DomainError
from .sl2jm import JMData, Sl2Triple, grading

Vector = list[Q]
Membership = Callable[[la.Matrix], bool]

SCALARS = (Q(1), Q(-1), Q(2), Q(-2), Q(1, 2), Q(-1, 2), Q(3), Q(-3), Q(1, 3), Q(-1, 3))


class StructuralError(RuntimeError):
    """Raised when an input that should be magical behaves otherwise."""


@dataclass
class SymplecticRep:
    omega: la.Matrix
    actions: list[la.Matrix]  # one per basis element of the subalgebra

    @property
    def dim(self) -> int:
        return len(self.omega)

    @classmethod
    def zero(cls, count: int) -> "SymplecticRep":
        return cls(omega=[], actions=[[] for _ in range(count)])


@dataclass
class BZSVTriple:
    algebra: LieAlgebra
    h_basis: list[Vector]
    member: Membership = field(repr=False)
    rep: SymplecticRep
    rho: Sl2Triple | None = None  # None is the trivial map
    name: str = ""

    def validate(self) -> None:
        L = self.algebra
        if L.matrices is None:
            raise DomainError("Whittaker induction needs a matrix realization")
        if self.rho is not None:
            for x in (self.rho.e, self.rho.h, self.rho.f):
                for y in self.h_basis:
                    if not la.is_zero(L.bracket(x, y)):
                        raise DomainError("the sl2 image does not commute with the subalgebra")
        S = self.rep
        if len(S.actions) != len(self.h_basis):
            raise DomainError("one action matrix is needed per subalgebra basis element")
        if S.dim % 2 or (S.dim and la.det(S.omega) == 0) or la.transpose(S.omega) != la.scale(-1, S.omega):
            raise DomainError("omega is not a symplectic Gram matrix")
        for A in S.actions:
            if S.dim and la.add(la.matmul(la.transpose(A), S.omega), la.matmul(S.omega, A)) != la.zeros(S.dim):
                raise DomainError("an action matrix does not preserve omega")
        if S.dim:
            for a, x in enumerate(self.h_basis):
                for b in range(a + 1, len(self.h_basis)):
                    z = L.bracket(x, self.h_basis[b])
                    if not la.in_span(self.h_basis, z):
                        raise DomainError("the subalgebra is not closed")
                    coeffs = la.coordinates(self.h_basis, z)
                    expected = la.zeros(S.dim)
                    for c, A in zip(coeffs, S.actions):
                        expected = la.add(expected, la.scale(c, A))
                    if la.commutator(S.actions[a], S.actions[b]) != expected:
                        raise DomainError("the action matrices do not form a representation")


def moment_map_linear(S: SymplecticRep) -> Callable[[Sequence], Vector]:
    """x -> (1/2 omega(X x, x))_X, the quadratic moment map of a linear action."""

    def mu(x: Sequence) -> Vector:
        x = [la.q(t) for t in x]
        wx = la.matvec(S.omega, x) if S.dim else []
        # omega(u, x) = u^T Omega x
        return [la.dot(la.matvec(A, x), wx) / 2 if S.dim else Q(0) for A in S.actions]

    return mu


def killing_embedding(L: LieAlgebra, h_basis: list[Vector]) -> Callable[[Sequence[Q]], Vector]:
    """A functional on the subalgebra, as the element y of it with K(y, X_a) = value_a."""
    if not h_basis:
        return lambda lam: la.zero_vector(L.dim)
    K = [[L.killing_form(a, b) for b in h_basis] for a in h_basis]
    if la.det(K) == 0:
        raise DomainError("the Killing form is degenerate on the subalgebra")
    Kinv = la.inverse(K)

    def iota(lam: Sequence[Q]) -> Vector:
        return la.lincomb(la.matvec(Kinv, list(lam)), h_basis, L.dim)

    return iota


def group_one_parameter(L: LieAlgebra, h: Vector | None, t: Q) -> la.Matrix:
    """t^h for a diagonal h with integer entries in the standard representation."""
    N = len(L.matrices[0])
    if h is None:
        return la.identity(N)
    H = L.to_matrix(h)
    entries = []
    for i in range(N):
        if any(H[i][j] for j in range(N) if j != i):
            raise DomainError("the neutral element is not diagonal")
        if H[i][i].denominator != 1:
            raise DomainError("the neutral element has non-integral eigenvalues")
        entries.append(t ** int(H[i][i]))
    return la.diag(entries)


def adjoint(L: LieAlgebra, g: la.Matrix, x: Vector, g_inv: la.Matrix | None = None) -> Vector:
    """Ad_g(x) = g x g^{-1}."""
    gi = g_inv if g_inv is not None else la.inverse(g)
    return L.from_matrix(la.matmul(la.matmul(g, L.to_matrix(x)), gi))


@dataclass
class WhittakerSpace:
    bzsv: BZSVTriple
    fiber: list[Vector] = field(repr=False)  # basis of m ∩ g_e
    weights: list[int]  # per fiber coordinate, symplectic ones first
    basepoint: Vector = field(repr=False)
    m_basis: list[Vector] = field(repr=False)

    @property
    def algebra(self) -> LieAlgebra:
        return self.bzsv.algebra

    @property
    def s_dim(self) -> int:
        return self.bzsv.rep.dim

    @property
    def dim(self) -> int:
        return len(self.weights)

    def fiber_element(self, x: Sequence[Q]) -> Vector:
        """f + iota(mu_S(s)) + xi, the value of the moment map at g = 1."""
        d = self.s_dim
        s, xi = list(x[:d]), list(x[d:])
        out = la.vadd(self.basepoint, la.lincomb(xi, self.fiber, self.algebra.dim))
        if d:
            iota = killing_embedding(self.algebra, self.bzsv.h_basis)
            out = la.vadd(out, iota(moment_map_linear(self.bzsv.rep)(s)))
        return out

    def mu(self, x: Sequence[Q], g: la.Matrix) -> Vector:
        """Ad_{g^{-1}}(f + iota(mu_S(s)) + xi)."""
        return adjoint(self.algebra, la.inverse(g), self.fiber_element(x), g_inv=g)

    def grade(self, t: Q, x: Sequence[Q], g: la.Matrix) -> tuple[Vector, la.Matrix]:
        """t acts on the fiber by its weights and on G by left multiplication by t^rho."""
        rho = self.bzsv.rho
        tr = group_one_parameter(self.algebra, rho.h if rho is not None else None, t)
        return [t**w * a for w, a in zip(self.weights, x)], la.matmul(tr, g)

    def require_member(self, g: la.Matrix) -> None:
        if not self.bzsv.member(g):
            raise DomainError("element is not in the subgroup")

    def equivalent(self, p: tuple[Sequence[Q], la.Matrix], r: tuple[Sequence[Q], la.Matrix]) -> bool:
        """(x, g) ~ (Ad_k x, k g) for k in H; only defined when S = 0."""
        if self.s_dim:
            raise NotImplementedError("equivalence is only implemented for S = 0")
        (x1, g1), (x2, g2) = p, r
        k = la.matmul(g2, la.inverse(g1))
        self.require_member(k)
        X1 = self.fiber_element(x1)
        X2 = self.fiber_element(x2)
        return adjoint(self.algebra, k, X1) == X2


def killing_perp(L: LieAlgebra, basis: Sequence[Vector]) -> list[Vector]:
    if not basis:
        return [L.basis_vector(i) for i in range(L.dim)]
    G = L.killing_gram
    return la.kernel_basis([la.matvec(G, b) for b in basis], L.dim)


def whittaker_space(b: BZSVTriple, probes: Sequence[la.Matrix] = ()) -> WhittakerSpace:
    """Fiber basis and grading of [S + (m ∩ g_e)] x^H G; probes are checked for H-membership."""
    b.validate()
    L = b.algebra
    for g in probes:
        if not b.member(g):
            raise DomainError("a supplied element fails the subgroup membership test")
    m = killing_perp(L, b.h_basis)
    if b.rho is None:
        layers = {0: [L.basis_vector(i) for i in range(L.dim)]}
        e = None
    else:
        layers = grading(L, b.rho.h)
        e = b.rho.e
    fiber: list[Vector] = []
    weights = [1] * b.rep.dim
    for t in sorted(layers):
        space = layers[t]
        ge = space if e is None else [la.lincomb(k, space, L.dim) for k in la.kernel_basis(L.ad_on(e, space), len(space))]
        piece = la.intersection(m, ge) if ge else []
        fiber.extend(piece)
        weights.extend([2 + t] * len(piece))
    base = b.rho.f if b.rho is not None else la.zero_vector(L.dim)
    return WhittakerSpace(bzsv=b, fiber=fiber, weights=weights, basepoint=list(base), m_basis=m)


# membership tests


def trivial_group(g: la.Matrix) -> bool:
    return g == la.identity(len(g))


def ad_matrix(L: LieAlgebra, g: la.Matrix) -> la.Matrix:
    gi = la.inverse(g)
    return la.transpose([adjoint(L, g, L.basis_vector(j), g_inv=gi) for j in range(L.dim)])


def fixed_by(L: LieAlgebra, sigma: la.Matrix) -> Membership:
    """g with Ad_g commuting with sigma."""

    def member(g: la.Matrix) -> bool:
        A = ad_matrix(L, g)
        return la.matmul(A, sigma) == la.matmul(sigma, A)

    return member


def centralizing(L: LieAlgebra, elements: Sequence[Vector]) -> Membership:
    mats = [L.to_matrix(x) for x in elements]

    def member(g: la.Matrix) -> bool:
        return all(la.matmul(g, X) == la.matmul(X, g) for X in mats)

    return member


def stabilizing(L: LieAlgebra, basis: Sequence[Vector]) -> Membership:
    """g whose adjoint action preserves the span of basis."""

    def member(g: la.Matrix) -> bool:
        gi = la.inverse(g)
        return all(la.in_span(basis, adjoint(L, g, x, g_inv=gi)) for x in basis)

    return member


# sampling


def sample_rational(rng: random.Random, bound: int = 5) -> Q:
    return Q(rng.randint(-bound, bound), rng.randint(1, 3))


def sample_vector(rng: random.Random, n: int) -> Vector:
    return [sample_rational(rng) for _ in range(n)]


def _nilpotent_generators(L: LieAlgebra) -> list[la.Matrix]:
    out = []
    for M in L.matrices:
        n = len(M)
        if all(M[i][j] == 0 for i in range(n) for j in range(n) if i >= j) or all(
            M[i][j] == 0 for i in range(n) for j in range(n) if i <= j
        ):
            out.append(M)
    return out


def exp_nilpotent(X: la.Matrix) -> la.Matrix:
    n = len(X)
    out = la.identity(n)
    term = la.identity(n)
    for k in range(1, n + 1):
        term = la.scale(Q(1, k), la.matmul(term, X))
        if la.is_zero(term):
            break
        out = la.add(out, term)
    return out


def sample_group_element(L: LieAlgebra, rng: random.Random, factors: int = 4) -> la.Matrix:
    """A product of exponentials of rational multiples of nilpotent basis matrices."""
    gens = _nilpotent_generators(L)
    g = la.identity(len(L.matrices[0]))
    for _ in range(factors):
        X = rng.choice(gens)
        c = sample_rational(rng, 3) or Q(1)
        g = la.matmul(g, exp_nilpotent(la.scale(c, X)))
    return g


def _rng(seed: int, i: int) -> random.Random:
    return random.Random(f"{seed}:{i}")


def _fmt(x):
    if isinstance(x, Q):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_fmt(y) for y in x]
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    return x


@dataclass
class CheckReport:
    operation: str
    samples: int
    seed: int
    passed: bool
    counterexample: dict | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "operation": self.operation,
            "samples": self.samples,
            "seed": self.seed,
            "passed": self.passed,
            "counterexample": _fmt(self.counterexample),
            "notes": list(self.notes),
        }


def _need_samples(samples: int) -> None:
    if samples < 1:
        raise DomainError("at least one sample is required")


def check_weight2(ws: WhittakerSpace, samples: int, seed: int) -> CheckReport:
    """mu(t.(x, g)) == t^2 mu(x, g)."""
    _need_samples(samples)
    L = ws.algebra
    for i in range(samples):
        rng = _rng(seed, i)
        x = sample_vector(rng, ws.dim)
        g = sample_group_element(L, rng)
        t = rng.choice(SCALARS)
        lhs = ws.mu(*ws.grade(t, x, g))
        rhs = la.vscale(t * t, ws.mu(x, g))
        if lhs != rhs:
            return CheckReport(
                "weight2", samples, seed, False,
                {"sample": i, "x": x, "g": g, "t": t, "lhs": lhs, "rhs": rhs},
            )
    return CheckReport("weight2", samples, seed, True)


def check_g_equivariance(
    ws: WhittakerSpace, samples: int, seed: int, mu: Callable | None = None
) -> CheckReport:
    """mu(x, g g0) == Ad_{g0^{-1}} mu(x, g)."""
    _need_samples(samples)
    L = ws.algebra
    mu = mu or ws.mu
    for i in range(samples):
        rng = _rng(seed, i)
        x = sample_vector(rng, ws.dim)
        g = sample_group_element(L, rng)
        g0 = sample_group_element(L, rng)
        lhs = mu(x, la.matmul(g, g0))
        rhs = adjoint(L, la.inverse(g0), mu(x, g), g_inv=g0)
        if lhs != rhs:
            return CheckReport(
                "equivariance", samples, seed, False,
                {"sample": i, "x": x, "g": g, "g0": g0, "lhs": lhs, "rhs": rhs},
            )
    return CheckReport("equivariance", samples, seed, True)


# the two spaces attached to a magical triple


@dataclass
class CayleyPair:
    """M' = (f + v) x^C G and M = m x^H G with the inclusion phi between them."""

    jm: JMData
    primed: WhittakerSpace
    target: WhittakerSpace

    def phi(self, x: Sequence[Q], g: la.Matrix) -> tuple[Vector, la.Matrix]:
        X = self.primed.fiber_element(x)
        return la.coordinates(self.target.fiber, X), g


def _magical_report(jm: JMData):
    report = analyze(jm)
    if not report.is_magical:
        raise StructuralError(
            f"sign involution is not an automorphism at basis pair {report.certificate}"
        )
    return report


def cayley_pair(jm: JMData) -> CayleyPair:
    report = _magical_report(jm)
    L = jm.algebra
    rho = jm.triple
    c_member = centralizing(L, [rho.e, rho.h, rho.f])
    primed = whittaker_space(
        BZSVTriple(L, list(jm.c), c_member, SymplecticRep.zero(len(jm.c)), rho, name="M'")
    )
    target = whittaker_space(
        BZSVTriple(L, report.h_basis, fixed_by(L, report.sigma), SymplecticRep.zero(len(report.h_basis)), None, name="M")
    )
    return CayleyPair(jm, primed, target)


def cayley_morphism_check(jm: JMData, samples: int, seed: int) -> CheckReport:
    """Moment maps agree along phi, and phi intertwines the two gradings up to H."""
    _need_samples(samples)
    pair = cayley_pair(jm)
    L = jm.algebra
    Mp, M = pair.primed, pair.target
    for i in range(samples):
        rng = _rng(seed, i)
        x = sample_vector(rng, Mp.dim)
        g = sample_group_element(L, rng)
        t = rng.choice(SCALARS)
        y, gy = pair.phi(x, g)
        if Mp.mu(x, g) != M.mu(y, gy):
            return CheckReport(
                "cayley-morphism", samples, seed, False,
                {"sample": i, "x": x, "g": g, "moment_primed": Mp.mu(x, g), "moment": M.mu(y, gy)},
            )
        lhs = pair.phi(*Mp.grade(t, x, g))
        rhs = M.grade(t, y, gy)
        try:
            same = M.equivalent(lhs, rhs)
        except DomainError as exc:
            raise StructuralError(f"t^rho is not in H for t = {t}") from exc
        if not same:
            return CheckReport(
                "cayley-morphism", samples, seed, False,
                {"sample": i, "x": x, "g": g, "t": t, "lhs": list(lhs), "rhs": list(rhs)},
            )
    return CheckReport("cayley-morphism", samples, seed, True)


@dataclass
class TangentData:
    ker1: list[Vector]
    ker2: list[Vector]
    rank1: int
    rank2: int
    dim_v: int
    dim_m: int
    covers: bool  # v + Im D2 = m

    @property
    def kernels_match(self) -> bool:
        return len(self.ker1) == len(self.ker2) and la.contains(self.ker2, self.ker1)

    @property
    def cokernels_match(self) -> bool:
        return self.dim_v - self.rank1 == self.dim_m - self.rank2 and self.covers


def tangent_complexes(report, v: Vector) -> TangentData:
    """D1: c -> v, X -> [X, v] and D2: h -> m, X -> [X, f + v]."""
    jm = report.jm
    L = jm.algebra
    f = jm.triple.f
    vbasis = [mod.vector for mod in jm.modules]
    c = jm.c
    d1 = [L.bracket(X, v) for X in c]
    d2 = [L.bracket(X, la.vadd(f, v)) for X in report.h_basis]
    D1 = la.transpose([la.coordinates(vbasis, y) for y in d1]) if c and vbasis else []
    D2 = la.transpose([la.coordinates(report.m_basis, y) for y in d2])
    ker1 = [la.lincomb(k, c, L.dim) for k in la.kernel_basis(D1, len(c))] if D1 else list(c)
    ker2 = [la.lincomb(k, report.h_basis, L.dim) for k in la.kernel_basis(D2, len(report.h_basis))]
    rank1 = la.rank(D1) if D1 else 0
    rank2 = la.rank(D2)
    covers = la.span_dim(vbasis + d2) == len(report.m_basis)
    return TangentData(ker1, ker2, rank1, rank2, len(vbasis), len(report.m_basis), covers)


def tangent_quasi_iso_check(jm: JMData, samples: int, seed: int) -> CheckReport:
    _need_samples(samples)
    report = _magical_report(jm)
    vbasis = [mod.vector for mod in jm.modules]
    dims = []
    for i in range(samples):
        rng = _rng(seed, i)
        v = la.lincomb(sample_vector(rng, len(vbasis)), vbasis, jm.algebra.dim)
        td = tangent_complexes(report, v)
        dims.append((len(td.ker1), td.dim_v - td.rank1))
        if not (td.kernels_match and td.cokernels_match):
            return CheckReport(
                "tangent", samples, seed, False,
                {
                    "sample": i,
                    "v": v,
                    "ker": [len(td.ker1), len(td.ker2)],
                    "coker": [td.dim_v - td.rank1, td.dim_m - td.rank2],
                    "covers": td.covers,
                },
            )
    notes = [
        "first differential taken as X -> [X, v] on the affine slice f + v",
        "(dim H^0, dim H^1) per sample: " + ", ".join(f"({a},{b})" for a, b in sorted(set(dims))),
    ]
    return CheckReport("tangent", samples, seed, True, notes=notes)
