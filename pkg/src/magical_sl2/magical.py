"""The sign involution of an sl2-triple, magicality, real forms and Cayley data."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Sequence

from . import exactla as la
from . import tables
from .liealg import LieAlgebra, Subalgebra, center, centralizer, derived_subalgebra, make_chevalley, make_classical
from .rootsys import DomainError, WeightedDiagram, build_root_system
from .sl2jm import JMData, Sl2Triple, jm_decompose, orbit_partitions, triple_from_partition, triple_from_weighted_diagram

Vector = list[Q]


class NotMagicalError(DomainError):
    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class TableMismatch(ArithmeticError):
    pass


class PreconditionError(DomainError):
    pass


FAMILIES = {
    1: "split",
    2: "hermitian tube type",
    3: "special orthogonal",
    4: "exceptional",
}


def ambient_type(L: LieAlgebra) -> tuple[str, int]:
    if L.root_system is not None:
        return L.root_system.kind, L.root_system.rank
    if L.family == "sl":
        return "A", L.size - 1
    if L.family == "sp":
        return "C", L.size // 2
    if L.family == "so":
        return ("B", (L.size - 1) // 2) if L.size % 2 else ("D", L.size // 2)
    raise DomainError(f"cannot determine the type of {L.name}")


def classical_for_type(kind: str, rank: int) -> tuple[str, int] | None:
    kind = kind.upper()
    if kind == "A" and rank >= 1:
        return "sl", rank + 1
    if kind == "B" and rank >= 2:
        return "so", 2 * rank + 1
    if kind == "C" and rank >= 2:
        return "sp", 2 * rank
    if kind == "D" and rank >= 3:
        return "so", 2 * rank
    return None


# sign involution


def _signs(jm: JMData) -> list[int]:
    return [1 if mi < 0 else (-1) ** (k + 1) for mi, k in jm.columns]


def sigma_involution(jm: JMData) -> la.Matrix:
    """+1 on c and (-1)^(k+1) on the depth-k layer of each nontrivial module."""
    P, Pinv = jm.adapted, jm.adapted_inverse
    signs = _signs(jm)
    scaled = [[P[i][j] * signs[j] for j in range(len(signs))] for i in range(len(P))]
    S = la.matmul(scaled, Pinv)
    assert la.matmul(S, S) == la.identity(len(S)), "sigma is not an involution"
    return S


def _sparse_columns(M: la.Matrix) -> list[dict[int, Q]]:
    n = len(M)
    cols = [dict() for _ in range(n)]
    for i in range(n):
        for j, v in enumerate(M[i]):
            if v:
                cols[j][i] = v
    return cols


def _apply_sparse(cols: list[dict[int, Q]], x: dict[int, Q]) -> dict[int, Q]:
    out: dict[int, Q] = {}
    for j, a in x.items():
        for i, v in cols[j].items():
            s = out.get(i, 0) + a * v
            if s:
                out[i] = s
            else:
                out.pop(i, None)
    return out


def is_magical(jm: JMData, sigma: la.Matrix | None = None) -> tuple[bool, tuple[int, int] | None]:
    """Whether sigma preserves brackets; on failure the first basis pair (i, j), i <= j."""
    L = jm.algebra
    S = sigma if sigma is not None else sigma_involution(jm)
    cols = _sparse_columns(S)
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = _apply_sparse(cols, L.table[i][j])
            rhs = L.bracket_sparse(cols[i], cols[j])
            if lhs != rhs:
                return False, (i, j)
    return True, None


# Lie-theoretic invariants of subalgebras


def lie_rank(L: LieAlgebra, basis: Sequence[Vector] | None = None, tries: int = 3, seed: int = 0) -> int:
    """Rank as the minimal nilpotent-part dimension of ad_x over sampled elements."""
    if basis is None:
        basis = [L.basis_vector(i) for i in range(L.dim)]
    basis = list(basis)
    k = len(basis)
    if k == 0:
        return 0
    sub = L.restrict(basis)
    rng = random.Random(seed)
    best = k
    for _ in range(tries):
        x = [Q(rng.randint(-9, 9)) for _ in range(k)]
        A = sub.ad(x)
        power = A
        prev = la.rank(power)
        for _ in range(k):
            power = la.matmul(power, A)
            r = la.rank(power)
            if r == prev:
                break
            prev = r
        best = min(best, k - prev)
    return best


def _std_dims(dim: int, rank: int) -> set[int]:
    """Dimensions of standard representations of simple algebras of this size."""
    out = set()
    if rank >= 1 and dim == rank * (rank + 2):
        out.add(rank + 1)
    for k in range(2, 4 * dim + 3):
        if k * (k - 1) // 2 == dim and k // 2 == rank:
            out.add(k)
    if dim == rank * (2 * rank + 1):
        out.add(2 * rank)
    out |= {v for (d, r), v in {(14, 2): 7, (52, 4): 26, (78, 6): 27, (133, 7): 56}.items() if (d, r) == (dim, rank)}
    return out


def _simple_names(dim: int, r: int) -> list[str]:
    names = []
    if dim == r * (r + 2):
        names.append(f"sl{r + 1}")
    if dim == r * (2 * r + 1):
        names += [f"so{2 * r + 1}", f"sp{2 * r}"]
    if dim == r * (2 * r - 1) and r >= 3:
        names.append(f"so{2 * r}")
    for d, rr, nm in ((14, 2, "g2"), (52, 4, "f4"), (78, 6, "e6"), (133, 7, "e7"), (248, 8, "e8")):
        if (dim, r) == (d, rr):
            names.append(nm)
    return names


def _generated_ideal(L: LieAlgebra, sub: list[Vector], x: Vector) -> list[Vector]:
    ideal = la.row_basis([x])
    while True:
        grown = la.row_basis(ideal + [L.bracket(s, y) for s in sub for y in ideal])
        if len(grown) == len(ideal):
            return ideal
        ideal = grown


def simple_factors(L: LieAlgebra, basis: Sequence[Vector]) -> list[list[Vector]]:
    """Split a semisimple subalgebra into simple ideals.

    Ideals are generated by host basis vectors lying in the subalgebra; for the
    algebras built here those are root vectors, each inside one simple factor.
    Falls back to a single factor when that does not exhaust the subalgebra.
    """
    sub = la.row_basis(list(basis))
    if not sub:
        return []
    ideals: list[list[Vector]] = []
    for i in range(L.dim):
        u = L.basis_vector(i)
        if not la.in_span(sub, u) or any(la.in_span(I, u) for I in ideals):
            continue
        ideals.append(_generated_ideal(L, sub, u))
    minimal = [I for I in ideals if not any(len(J) < len(I) and la.contains(I, J) for J in ideals)]
    unique: list[list[Vector]] = []
    for I in minimal:
        if not any(la.same_span(I, J) for J in unique):
            unique.append(I)
    total = [v for I in unique for v in I]
    if sum(len(I) for I in unique) == len(sub) and la.span_dim(total) == len(sub):
        return unique
    return [sub]


def algebra_type(L: LieAlgebra, basis: Sequence[Vector]) -> str:
    """Readable isomorphism type of a reductive subalgebra, e.g. ``sl3+sl3+C^2``."""
    basis = la.row_basis(list(basis))
    if not basis:
        return "0"
    sub = Subalgebra(L, basis)
    z = center(sub).dim
    parts = []
    for factor in simple_factors(L, derived_subalgebra(sub).basis):
        dim, r = len(factor), lie_rank(L, factor)
        names = _simple_names(dim, r)
        if not names and (dim, r) == (6, 2):
            names = ["so4"]
        parts.append("=".join(names) if names else f"simple(dim={dim},rank={r})")
    if z:
        parts.append("C" if z == 1 else f"C^{z}")
    return "+".join(parts)


# reports


@dataclass
class MagicalReport:
    jm: JMData
    sigma: la.Matrix = field(repr=False)
    is_magical: bool
    certificate: tuple[int, int] | None
    h_basis: list[Vector] = field(default_factory=list, repr=False)
    m_basis: list[Vector] = field(default_factory=list, repr=False)
    dim_center_h: int | None = None
    real_form: str | None = None
    candidates: list[str] = field(default_factory=list)
    ambiguous: bool = False

    @property
    def algebra(self) -> LieAlgebra:
        return self.jm.algebra

    @property
    def dim_h(self) -> int:
        return len(self.h_basis)

    @property
    def dim_m(self) -> int:
        return len(self.m_basis)

    @property
    def label(self) -> str:
        return self.jm.triple.label


def analyze(jm: JMData) -> MagicalReport:
    S = sigma_involution(jm)
    if la.is_zero(jm.triple.e):
        # the zero map is not an sl2-triple; sigma is the identity there
        return MagicalReport(jm=jm, sigma=S, is_magical=False, certificate=None)
    ok, cert = is_magical(jm, S)
    report = MagicalReport(jm=jm, sigma=S, is_magical=ok, certificate=cert)
    if ok:
        n = len(S)
        report.h_basis = la.eigenspace(S, 1)
        report.m_basis = la.eigenspace(S, -1)
        assert len(report.h_basis) + len(report.m_basis) == n
        report.dim_center_h = center(Subalgebra(jm.algebra, report.h_basis)).dim
        identify_real_form(report)
    return report


def magical_report(triple: Sl2Triple) -> MagicalReport:
    return analyze(jm_decompose(triple))


def identify_real_form(report: MagicalReport) -> str | None:
    """Look up (type, rank, dim h, dim z(h)); ambiguous keys list every candidate."""
    if not report.is_magical:
        raise NotMagicalError("real form requested for a non-magical triple", report.certificate)
    kind, rank = ambient_type(report.algebra)
    hits = [
        r for r in tables.real_forms(kind, rank) if r.dim_h == report.dim_h and r.dim_zh == report.dim_center_h
    ]
    report.candidates = [r.label for r in hits]
    report.ambiguous = len(hits) > 1
    report.real_form = hits[0].name if len(hits) == 1 else ("unidentified" if not hits else None)
    return report.real_form


def real_form_names(report: MagicalReport) -> set[str]:
    return {name for lab in report.candidates for name in lab.split("=")}


def _split_labels(kind: str, rank: int) -> set[str]:
    return {
        "A": {f"sl({rank + 1},R)"},
        "B": {f"so({rank},{rank + 1})"},
        "C": {f"sp({2 * rank},R)"},
        "D": {f"so({rank},{rank})"},
        "G": {"g2(2)"},
        "F": {"f4(4)"},
        "E": {f"e{rank}({rank})"},
    }[kind]


def classification_families(kind: str, rank: int, label: str) -> list[int]:
    """Which cases of the classification of canonical real forms contain this label."""
    import re

    fams = []
    if label in _split_labels(kind, rank) or label == "sl(2,R)":
        fams.append(1)
    m = re.fullmatch(r"su\((\d+),(\d+)\)", label)
    if (m and m.group(1) == m.group(2)) or label in ("sp(%d,R)" % (2 * rank), "e7(-25)"):
        fams.append(2)
    m = re.fullmatch(r"so\((\d+),(\d+)\)", label)
    if m:
        p = min(int(m.group(1)), int(m.group(2)))
        if p == 2 and int(m.group(1)) + int(m.group(2)) >= 5:
            fams.append(2)
        if p >= 3:
            fams.append(3)
    m = re.fullmatch(r"so\*\((\d+)\)", label)
    if m and int(m.group(1)) % 4 == 0:
        fams.append(2)
    if label in ("e6(2)", "e7(-5)", "e8(-24)", "f4(4)"):
        fams.append(4)
    return sorted(set(fams))


def families_of(report: MagicalReport) -> list[int]:
    kind, rank = ambient_type(report.algebra)
    out = set()
    for name in real_form_names(report):
        out.update(classification_families(kind, rank, name))
    return sorted(out)


# structural identities


def structural_identities(report: MagicalReport) -> dict[str, bool]:
    """Exact checks of the eigenspace decompositions attached to a magical triple."""
    jm = report.jm
    L = jm.algebra
    f = jm.triple.f
    S = report.sigma
    hb, mb = report.h_basis, report.m_basis
    v = [mod.vector for mod in jm.modules]
    ad_f_m = la.row_basis([L.bracket(f, x) for x in mb])
    ad_f2_m = la.row_basis([L.bracket(f, x) for x in ad_f_m])
    out = {}
    out["sigma_squared_identity"] = la.matmul(S, S) == la.identity(len(S))
    out["h_is_c_plus_ad_f_m"] = (
        la.span_dim(jm.c + ad_f_m) == len(jm.c) + len(ad_f_m) and la.same_span(jm.c + ad_f_m, hb)
    )
    out["m_is_v_plus_ad_f2_m"] = la.span_dim(v + ad_f2_m) == len(v) + len(ad_f2_m) and la.same_span(v + ad_f2_m, mb)
    images = [L.bracket(f, x) for x in ad_f_m]
    out["ad_f_bijective"] = len(ad_f_m) == len(ad_f2_m) and la.span_dim(images) == len(ad_f_m)
    hsub = Subalgebra(L, la.row_basis(hb))
    out["h_closed"] = hsub.is_closed()
    out["h_m_in_m"] = all(la.in_span(mb, L.bracket(a, b)) for a in hb for b in mb)
    out["m_m_in_h"] = all(la.in_span(hb, L.bracket(a, b)) for i, a in enumerate(mb) for b in mb[i + 1:])
    out["even"] = jm.even
    out["v_dim_matches_g0_mod_c"] = len(v) == len(jm.grading.get(0, [])) - len(jm.c)
    return out


# Cayley data


@dataclass
class CayleyData:
    report: MagicalReport = field(repr=False)
    g0: list[Vector] = field(repr=False)
    center_g0: list[Vector] = field(repr=False)
    gtilde: list[Vector] = field(repr=False)
    c: list[Vector] = field(repr=False)
    v: list[Vector] = field(repr=False)
    v_weights: list[int]
    v_trivial: list[Vector] = field(repr=False)
    v0: list[Vector] = field(repr=False)
    m_c: int | None
    m_c_weights: list[int]
    l: list[int]
    theta: la.Matrix = field(repr=False)
    notes: list[str] = field(default_factory=list)

    @property
    def r(self) -> int:
        return len(self.center_g0)


def _weight_in(jm: JMData, x: Vector) -> int:
    for w, space in jm.grading.items():
        if la.in_span(space, x):
            return w
    raise ArithmeticError("vector is not homogeneous")


def cayley_data(report: MagicalReport) -> CayleyData:
    if not report.is_magical:
        raise NotMagicalError("Cayley data needs a magical triple", report.certificate)
    jm = report.jm
    L = jm.algebra
    g0 = list(jm.grading.get(0, []))
    g0_sub = Subalgebra(L, la.row_basis(g0))
    z = center(g0_sub).basis
    gt = derived_subalgebra(g0_sub).basis
    c = jm.c
    v = [mod.vector for mod in jm.modules]
    v_weights = [mod.highest_weight // 2 for mod in jm.modules]
    notes = []
    # trivial part: joint kernel of the c-action on v, split by weight
    trivial: list[Vector] = []
    trivial_weights: list[int] = []
    v0: list[Vector] = []
    v0_weights: set[int] = set()
    for w in sorted(set(v_weights)):
        block = [x for x, m in zip(v, v_weights) if m == w]
        if c:
            rows = []
            for y in c:
                rows.extend(L.ad_on(y, block))
            ker = la.kernel_basis(rows, len(block))
        else:
            ker = [la.unit_vector(len(block), i) for i in range(len(block))]
        triv = [la.lincomb(k, block, L.dim) for k in ker]
        trivial.extend(triv)
        trivial_weights.extend([w] * len(triv))
        moved = la.row_basis([L.bracket(y, x) for y in c for x in block])
        if moved:
            v0.extend(moved)
            v0_weights.add(w)
        if len(triv) + len(moved) != len(block):
            raise TableMismatch(f"c-action on weight {w} has no stable complement")
    m_c = min(v0_weights) if v0_weights else None
    if len(v0_weights) > 1:
        notes.append(f"nontrivial part spread over weights {sorted(v0_weights)}")
    # theta: +1 on c, -1 on the complementary layers ad_f^{m}(V_{2m}) inside g0
    complement = [
        col for col, (mi, k) in zip(la.transpose(jm.adapted), jm.columns)
        if mi >= 0 and 2 * k == jm.modules[mi].highest_weight
    ]
    basis0 = c + complement
    B = la.transpose([la.coordinates(g0, x) for x in basis0])
    signs = [1] * len(c) + [-1] * len(complement)
    theta = la.matmul([[x * sg for x, sg in zip(row, signs)] for row in B], la.inverse(B))
    cd = CayleyData(
        report=report,
        g0=g0,
        center_g0=z,
        gtilde=gt,
        c=c,
        v=v,
        v_weights=v_weights,
        v_trivial=trivial,
        v0=v0,
        m_c=m_c,
        m_c_weights=sorted(v0_weights),
        l=sorted(trivial_weights),
        theta=theta,
        notes=notes,
    )
    if len(trivial) != len(z):
        raise TableMismatch(f"{len(trivial)} trivial summands but centre of g0 has dimension {len(z)}")
    return cd


# representations of the centraliser on v


@dataclass
class CRepResult:
    r: int
    dim_v0: int
    commutant_dim: int
    label: str
    aliases: list[str]
    c_type: str
    group_generators: int

    def as_tuple(self) -> tuple[int, int, int, str]:
        return (self.r, self.dim_v0, self.commutant_dim, self.label)


def group_action(L: LieAlgebra, g: la.Matrix, x: Vector) -> Vector:
    """Ad_g(x) for a matrix g of the standard representation."""
    X = L.to_matrix(x)
    return L.from_matrix(la.matmul(la.matmul(g, X), la.inverse(g)))


def commutant_dimension(actions: Sequence[la.Matrix], d: int) -> int:
    """dim of {X : X A = A X for every A in actions}, over Q."""
    if d == 0:
        return 0
    rows = []
    for A in actions:
        for i in range(d):
            for j in range(d):
                # (XA - AX)_{ij} = sum_k X_{ik} A_{kj} - A_{ik} X_{kj}
                row = [Q(0)] * (d * d)
                for k in range(d):
                    if A[k][j]:
                        row[i * d + k] += A[k][j]
                    if A[i][k]:
                        row[k * d + j] -= A[i][k]
                if any(row):
                    rows.append(row)
    return d * d - (la.rank(rows) if rows else 0)


def _restricted(L: LieAlgebra, op, basis: list[Vector]) -> la.Matrix:
    return la.transpose([la.coordinates(basis, op(x)) for x in basis])


def c_rep_analysis(cd: CayleyData) -> CRepResult:
    """Trivial summands, the complement v0, its commutant and a table label."""
    jm = cd.report.jm
    L = jm.algebra
    v0 = cd.v0
    actions = [_restricted(L, lambda x, y=y: L.bracket(y, x), v0) for y in cd.c] if v0 else []
    gens = jm.triple.component_group
    if v0 and gens and L.matrices is not None:
        actions += [_restricted(L, lambda x, g=g: group_action(L, g, x), v0) for g in gens]
    comm = commutant_dimension(actions, len(v0))
    c_type = algebra_type(L, cd.c)
    aliases: list[str] = []
    if v0:
        if cd.c:
            rank_c = lie_rank(L, cd.c)
            if len(v0) == len(cd.c) and _hom_nonzero(L, cd.c, v0):
                aliases.append("Ad_C")
            if len(v0) in _std_dims(len(cd.c), rank_c):
                aliases.append("Std_C")
        aliases.append(f"V_{len(v0)}")
    label = aliases[0] if aliases else "0"
    return CRepResult(
        r=len(cd.v_trivial),
        dim_v0=len(v0),
        commutant_dim=comm,
        label=label,
        aliases=aliases,
        c_type=c_type,
        group_generators=len(gens),
    )


def _hom_nonzero(L: LieAlgebra, c: list[Vector], v0: list[Vector]) -> bool:
    """Whether some nonzero c-equivariant map c -> v0 exists."""
    dc, dv = len(c), len(v0)
    rows = []
    ad_c = [_restricted(L, lambda x, y=y: L.bracket(y, x), c) for y in c]
    ad_v = [_restricted(L, lambda x, y=y: L.bracket(y, x), v0) for y in c]
    for A, B in zip(ad_c, ad_v):
        # X A - B X = 0 with X of shape dv x dc
        for i in range(dv):
            for j in range(dc):
                row = [Q(0)] * (dv * dc)
                for k in range(dc):
                    if A[k][j]:
                        row[i * dc + k] += A[k][j]
                for k in range(dv):
                    if B[i][k]:
                        row[k * dc + j] -= B[i][k]
                if any(row):
                    rows.append(row)
    return la.rank(rows) < dv * dc if rows else True


def cayley_summary(cd: CayleyData) -> dict:
    rep = c_rep_analysis(cd)
    L = cd.report.algebra
    return {
        "g0_dim": len(cd.g0),
        "r": cd.r,
        "gtilde_dim": len(cd.gtilde),
        "gtilde_type": algebra_type(L, cd.gtilde),
        "c_dim": len(cd.c),
        "c_type": rep.c_type,
        "v_dim": len(cd.v),
        "v0_dim": rep.dim_v0,
        "v0_label": rep.label,
        "v0_aliases": rep.aliases,
        "commutant_dim": rep.commutant_dim,
        "m_c": cd.m_c,
        "l": cd.l,
        "twists": [f"K^{w + 1}" for w in cd.l],
        "cayley_real_form": _cayley_real_form(cd),
        "v_label": _v_label(rep),
    }


def _v_label(rep: CRepResult) -> str:
    ones = "" if not rep.r else ("1" if rep.r == 1 else f"1^{rep.r}")
    return "+".join(x for x in (rep.label if rep.dim_v0 else "", ones) if x) or "0"


def centralizer_rep_row(cd: CayleyData, rep: CRepResult | None = None):
    """The shipped table row reproduced by this Cayley data, if any."""
    rep = rep or c_rep_analysis(cd)
    kind, rank = ambient_type(cd.report.algebra)
    names = real_form_names(cd.report)
    for row in tables.centralizer_reps(kind, rank):
        if row.real_form not in names:
            continue
        if (row.dim_c, row.dim_v0, row.r) != (len(cd.c), rep.dim_v0, rep.r):
            continue
        if row.v0 == "0" or row.v0 in rep.aliases:
            return row
    return None


def _cayley_real_form(cd: CayleyData) -> str:
    parts = []
    if cd.gtilde:
        parts.append("gtilde^R")
    if cd.r:
        parts.append(f"R^{cd.r}" if cd.r > 1 else "R")
    return " + ".join(parts) if parts else "0"


# sweeps


@dataclass
class OrbitRow:
    label: str
    even: bool
    magical: bool
    real_form: str | None
    candidates: list[str]
    families: list[int]
    report: MagicalReport = field(repr=False)


def orbit_triples(kind_or_family: str, size_or_rank: int):
    """(label, triple) for every orbit: partitions for classical input, shipped diagrams otherwise."""
    key = kind_or_family.lower()
    if key in ("sl", "so", "sp"):
        L = make_classical(key, size_or_rank)
        for p in orbit_partitions(key, size_or_rank):
            yield ",".join(map(str, p)), triple_from_partition(key, size_or_rank, p, algebra=L)
        return
    classical = classical_for_type(key, size_or_rank)
    if classical is not None:
        yield from orbit_triples(*classical)
        return
    rs = build_root_system(key, size_or_rank)
    L = make_chevalley(rs)
    for rec in tables.diagrams(key, size_or_rank):
        d = WeightedDiagram(rs, rec.weights, rec.label)
        yield rec.label, triple_from_weighted_diagram(L, d)


def classify_magical(kind_or_family: str, size_or_rank: int) -> list[OrbitRow]:
    rows = []
    for label, triple in orbit_triples(kind_or_family, size_or_rank):
        rep = magical_report(triple)
        rows.append(
            OrbitRow(
                label=label,
                even=rep.jm.even,
                magical=rep.is_magical,
                real_form=rep.real_form if rep.is_magical else None,
                candidates=rep.candidates,
                families=families_of(rep) if rep.is_magical else [],
                report=rep,
            )
        )
    return rows


def tempered_lookup(report: MagicalReport):
    if not report.is_magical:
        raise NotMagicalError("tempered lookup needs a magical triple", report.certificate)
    kind, rank = ambient_type(report.algebra)
    for row in tables.tempered_rows():
        if (row.kind, row.rank, row.dim_h, row.dim_zh) == (kind, rank, report.dim_h, report.dim_center_h):
            return row
    return None


# factorization


@dataclass
class FactorizationReport:
    rho1: MagicalReport = field(repr=False)
    rho2: MagicalReport = field(repr=False)
    g_e2: list[Vector] = field(repr=False)
    flags: dict[str, bool]
    dims: dict[str, int]

    @property
    def passed(self) -> bool:
        return all(self.flags.values())


def _perp(L: LieAlgebra, basis: list[Vector]) -> list[Vector]:
    """Killing-orthogonal complement of a subspace."""
    if not basis:
        return [L.basis_vector(i) for i in range(L.dim)]
    G = L.killing_gram
    rows = [la.matvec(G, b) for b in basis]
    return la.kernel_basis(rows, L.dim)


def is_principal_in(L: LieAlgebra, basis: list[Vector], triple: Sl2Triple) -> bool:
    """Even grading whose zero part is abelian with dim ker ad_e equal to it."""
    e, h = triple.e, triple.h
    sub = la.row_basis(basis)
    adh = _restricted(L, lambda x: L.bracket(h, x), sub)
    zero = [la.lincomb(k, sub, L.dim) for k in la.eigenspace(adh, 0)]
    if Subalgebra(L, la.row_basis(zero)).dim != center(Subalgebra(L, la.row_basis(zero))).dim:
        return False
    ade = _restricted(L, lambda x: L.bracket(e, x), sub)
    ker = la.kernel_basis(ade, len(sub))
    weights = set()
    for lam in range(-4 * len(sub), 4 * len(sub) + 1):
        if la.eigenspace(adh, lam):
            weights.add(lam)
    return all(w % 2 == 0 for w in weights) and len(ker) == len(zero)


def factorization_check(L: LieAlgebra, rho1: Sl2Triple, rho2: Sl2Triple) -> FactorizationReport:
    r1, r2 = magical_report(rho1), magical_report(rho2)
    if not (r1.is_magical and r2.is_magical):
        raise PreconditionError("both triples must be magical")
    n1 = real_form_names(r1)
    n2 = real_form_names(r2)
    if not n1 & n2:
        raise PreconditionError(f"canonical real forms differ: {sorted(n1)} vs {sorted(n2)}")
    jm1, jm2 = r1.jm, r2.jm
    if jm1.c:
        raise PreconditionError("rho1 is not principal")
    c2 = jm2.c
    zc2 = centralizer(L, c2).basis
    z_of_c2 = center(Subalgebra(L, la.row_basis(c2))).basis
    g_e2 = la.intersection(zc2, _perp(L, c2)) if c2 else la.row_basis(zc2)
    flags: dict[str, bool] = {}
    dims: dict[str, int] = {}
    flags["double_centralizer_splits"] = (
        la.span_dim(z_of_c2 + g_e2) == len(z_of_c2) + len(g_e2) and la.same_span(z_of_c2 + g_e2, zc2)
    )
    flags["g_e2_is_subalgebra"] = Subalgebra(L, g_e2).is_closed()
    flags["image_rho2_in_g_e2"] = all(la.in_span(g_e2, x) for x in (rho2.e, rho2.h, rho2.f))
    flags["rho2_principal_in_g_e2"] = flags["image_rho2_in_g_e2"] and is_principal_in(L, g_e2, rho2)
    rank_ge2 = lie_rank(L, g_e2)
    cd2 = cayley_data(r2)
    gt2 = cd2.gtilde
    rank_gt2 = lie_rank(L, gt2) if gt2 else 0
    perp = _perp(L, g_e2)
    v2 = cd2.v
    v2_in = la.intersection(v2, g_e2)
    v2_out = la.intersection(v2, perp)
    flags["slice2_decomposes"] = len(v2_in) + len(v2_out) == len(v2)
    flags["slice2_perp_is_v0"] = la.same_span(v2_out, cd2.v0)
    flags["slice2_inside_is_rank"] = len(v2_in) == rank_ge2 == cd2.r
    slice1 = jm1.centralizer_e
    flags["slice1_dimension_splits"] = len(slice1) == rank_ge2 + rank_gt2
    flags["gtilde2_split"] = 2 * len(cd2.c) == len(gt2) - rank_gt2
    flags["dimension_match"] = rank_ge2 == len(v2_in)
    dims.update(
        g_e2=len(g_e2),
        rank_g_e2=rank_ge2,
        gtilde2=len(gt2),
        rank_gtilde2=rank_gt2,
        c2=len(c2),
        slice1=len(slice1),
        slice2_in_g_e2=len(v2_in),
        slice2_in_perp=len(v2_out),
        slice1_literal_in_g_e2=len(la.intersection(slice1, g_e2)),
        slice1_literal_in_perp=len(la.intersection(slice1, perp)),
    )
    return FactorizationReport(rho1=r1, rho2=r2, g_e2=g_e2, flags=flags, dims=dims)


def magical_orbits(kind_or_family: str, size_or_rank: int) -> list[OrbitRow]:
    return [row for row in classify_magical(kind_or_family, size_or_rank) if row.magical]


def factorize(kind_or_family: str, size_or_rank: int) -> FactorizationReport:
    """Pick the principal and a non-principal magical orbit with a shared real form."""
    rows = magical_orbits(kind_or_family, size_or_rank)
    principal = [r for r in rows if not r.report.jm.c]
    others = [r for r in rows if r.report.jm.c]
    for p in principal:
        for o in others:
            if real_form_names(p.report) & real_form_names(o.report):
                L = p.report.algebra
                return factorization_check(L, p.report.jm.triple, o.report.jm.triple)
    found = [(r.label, r.real_form) for r in rows]
    raise PreconditionError(f"no principal/non-principal pair shares a real form; magical orbits: {found}")
