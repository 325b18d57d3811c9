import random

import pytest

from magical_sl2 import exactla as la
from magical_sl2.liealg import make_chevalley
from magical_sl2.rootsys import (
    DomainError,
    WeightedDiagram,
    build_root_system,
    cartan_matrix,
    chevalley_constants,
    h_from_weighted_diagram,
    neg,
    radd,
)

POSITIVE_COUNTS = {
    ("A", 1): 1, ("A", 2): 3, ("A", 5): 15, ("B", 3): 9, ("C", 4): 16, ("D", 4): 12, ("D", 6): 30,
    ("G", 2): 6, ("F", 4): 24, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120,
}


@pytest.mark.parametrize("kind, rank", sorted(POSITIVE_COUNTS))
def test_positive_root_counts(kind, rank):
    rs = build_root_system(kind, rank)
    assert len(rs.positive) == POSITIVE_COUNTS[kind, rank]


def _closure_oracle(cartan):
    """Positive roots by reflecting simple roots until nothing new appears."""
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                pair = sum(r[j] * cartan[i][j] for j in range(n))  # <r, alpha_i coroot>
                s = tuple(r[j] - pair * (j == i) for j in range(n))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return {r for r in seen if all(c >= 0 for c in r)}


@pytest.mark.parametrize("kind, rank", [("B", 3), ("C", 3), ("D", 5), ("G", 2), ("F", 4), ("E", 6)])
def test_positive_roots_match_weyl_orbit_oracle(kind, rank):
    rs = build_root_system(kind, rank)
    assert set(rs.positive) == _closure_oracle(rs.cartan)


def test_positive_roots_are_height_then_lex_ordered():
    rs = build_root_system("F", 4)
    keys = [(sum(r), r) for r in rs.positive]
    assert keys == sorted(keys)


@pytest.mark.parametrize("kind, rank", [("A", 0), ("B", 1), ("D", 2), ("G", 3), ("F", 5), ("E", 9), ("X", 2)])
def test_invalid_types_are_rejected(kind, rank):
    with pytest.raises(DomainError):
        build_root_system(kind, rank)


@pytest.mark.parametrize("kind, rank", [("A", 4), ("B", 4), ("C", 4), ("D", 5), ("G", 2), ("F", 4), ("E", 6), ("E", 8)])
def test_cartan_entries(kind, rank):
    A = cartan_matrix(kind, rank)
    for i in range(rank):
        assert A[i][i] == 2
        for j in range(rank):
            if i != j:
                assert A[i][j] in (0, -1, -2, -3)
                assert (A[i][j] == 0) == (A[j][i] == 0)


def test_a1_has_no_structure_constants():
    assert chevalley_constants(build_root_system("A", 1)) == {}


def test_a2_constants_are_unit():
    rs = build_root_system("A", 2)
    N = chevalley_constants(rs)
    assert N and all(abs(v) == 1 for v in N.values())


def test_g2_constants():
    N = chevalley_constants(build_root_system("G", 2))
    assert {abs(v) for v in N.values()} == {1, 2, 3}


@pytest.mark.parametrize("kind, rank", [("B", 3), ("C", 3), ("G", 2), ("F", 4), ("E", 6)])
def test_chevalley_constant_symmetries(kind, rank):
    rs = build_root_system(kind, rank)
    N = chevalley_constants(rs)
    for (a, b), v in N.items():
        assert N[b, a] == -v
        assert N[neg(a), neg(b)] == -v
        assert rs.is_root(radd(a, b))


@pytest.mark.parametrize("kind, rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4), ("E", 6)])
def test_chevalley_jacobi_exhaustive(kind, rank):
    L = make_chevalley(build_root_system(kind, rank))
    assert L.dim == rank + 2 * len(L.root_system.positive)
    assert L.is_antisymmetric()
    assert L.jacobi_failures() == []


@pytest.mark.slow
@pytest.mark.parametrize("kind, rank", [("E", 7), ("E", 8)])
def test_chevalley_jacobi_large(kind, rank):
    L = make_chevalley(build_root_system(kind, rank))
    assert L.jacobi_failures() == []


def test_a2_principal_diagram_gives_diag_2_0_minus2():
    rs = build_root_system("A", 2)
    x = h_from_weighted_diagram(WeightedDiagram(rs, (2, 2)))
    # coroot h_i is E_ii - E_{i+1,i+1} in sl3
    diag = [x[0], x[1] - x[0], -x[1]]
    assert diag == [2, 0, -2]


def test_zero_diagram_gives_zero():
    rs = build_root_system("E", 6)
    assert la.is_zero(h_from_weighted_diagram(WeightedDiagram(rs, (0,) * 6)))


def test_a3_middle_diagram():
    rs = build_root_system("A", 3)
    x = h_from_weighted_diagram(WeightedDiagram(rs, (0, 2, 0)))
    assert [x[0], x[1] - x[0], x[2] - x[1], -x[2]] == [1, 1, -1, -1]


def test_diagram_weights_are_validated():
    rs = build_root_system("A", 2)
    with pytest.raises(DomainError):
        WeightedDiagram(rs, (3, 0))
    with pytest.raises(DomainError):
        WeightedDiagram(rs, (2,))


def test_diagram_h_pairs_with_simple_roots():
    rng = random.Random(5)
    for kind, rank in [("B", 3), ("C", 3), ("G", 2), ("F", 4)]:
        rs = build_root_system(kind, rank)
        w = tuple(rng.choice((0, 1, 2)) for _ in range(rank))
        x = h_from_weighted_diagram(WeightedDiagram(rs, w))
        for i in range(rank):
            assert sum(x[j] * rs.cartan[j][i] for j in range(rank)) == w[i]
