import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from magical_sl2 import exactla as la
from magical_sl2.liealg import (
    LieAlgebra,
    Subalgebra,
    bracket,
    center,
    centralizer,
    classical_form,
    derived_subalgebra,
    killing_form,
    make_chevalley,
    make_classical,
)
from magical_sl2.rootsys import DomainError, build_root_system
from magical_sl2.sl2jm import grading, triple_from_partition
from oracles import commutator

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@pytest.fixture(scope="module")
def sl2():
    L = make_classical("sl", 2)
    e = L.from_matrix([[0, 1], [0, 0]])
    h = L.from_matrix([[1, 0], [0, -1]])
    f = L.from_matrix([[0, 0], [1, 0]])
    return L, e, h, f


@pytest.mark.parametrize("family, size, dim", [("sl", 2, 3), ("sl", 5, 24), ("sp", 4, 10), ("sp", 6, 21), ("so", 5, 10), ("so", 8, 28)])
def test_classical_dimensions(family, size, dim):
    assert make_classical(family, size).dim == dim


@pytest.mark.parametrize("family, size", [("sl", 1), ("so", 2), ("sp", 3), ("gl", 3)])
def test_invalid_classical_sizes(family, size):
    with pytest.raises(DomainError):
        make_classical(family, size)


@pytest.mark.parametrize("family, size", [("sl", 3), ("sp", 4), ("so", 5), ("so", 6)])
def test_bracket_table_is_matrix_commutator(family, size):
    L = make_classical(family, size)
    for i in range(L.dim):
        for j in range(L.dim):
            expected = commutator(L.matrices[i], L.matrices[j])
            assert L.to_matrix(L.bracket(L.basis_vector(i), L.basis_vector(j))) == expected


@pytest.mark.parametrize("family, size", [("sp", 4), ("so", 7)])
def test_realization_preserves_form(family, size):
    L = make_classical(family, size)
    J = classical_form(family, size)
    for M in L.matrices:
        assert la.add(la.matmul(la.transpose(M), J), la.matmul(J, M)) == la.zeros(size)


@pytest.mark.parametrize("family, size", [("sp", 4), ("so", 5), ("so", 8)])
def test_diagonal_elements_form_a_cartan(family, size):
    L = make_classical(family, size)
    diag = [i for i, M in enumerate(L.matrices) if all(M[a][b] == 0 for a in range(size) for b in range(size) if a != b)]
    assert len(diag) == size // 2
    assert all(la.is_zero(L.bracket(L.basis_vector(i), L.basis_vector(j))) for i in diag for j in diag)


def test_sl2_brackets(sl2):
    L, e, h, f = sl2
    assert bracket(L, e, f) == h
    assert L.bracket(h, e) == la.vscale(2, e)
    assert L.bracket(h, f) == la.vscale(-2, f)


def test_sl2_killing_values(sl2):
    L, e, h, f = sl2
    assert killing_form(L, h, h) == 8
    assert killing_form(L, e, e) == 0
    assert killing_form(L, e, f) == 4


def test_chevalley_a1_is_sl2():
    L = make_chevalley(build_root_system("A", 1))
    e, h, f = (L.basis_vector(i) for i in range(3))
    assert L.dim == 3
    assert L.bracket(e, f) == h and L.bracket(h, e) == la.vscale(2, e)


@pytest.mark.parametrize("kind, rank, dim", [("F", 4, 52), ("E", 6, 78), ("G", 2, 14)])
def test_chevalley_dimensions(kind, rank, dim):
    assert make_chevalley(build_root_system(kind, rank)).dim == dim


@pytest.mark.parametrize("family, size", [("sl", 3), ("sp", 4), ("so", 7)])
def test_killing_form_nondegenerate(family, size):
    L = make_classical(family, size)
    assert la.rank(L.killing_gram) == L.dim


def test_killing_form_nondegenerate_chevalley():
    L = make_chevalley(build_root_system("G", 2))
    assert la.rank(L.killing_gram) == L.dim


@given(st.data())
def test_killing_form_symmetric_and_invariant(data):
    L = make_classical("sp", 4)
    x, y, z = (data.draw(st.lists(small, min_size=L.dim, max_size=L.dim)) for _ in range(3))
    assert L.killing_form(x, y) == L.killing_form(y, x)
    assert L.killing_form(L.bracket(x, y), z) == L.killing_form(x, L.bracket(y, z))


@given(st.data())
def test_bracket_is_alternating(data):
    L = make_classical("sl", 3)
    x = data.draw(st.lists(small, min_size=L.dim, max_size=L.dim))
    assert la.is_zero(L.bracket(x, x))


def test_bracket_dimension_mismatch(sl2):
    L, e, h, f = sl2
    with pytest.raises(DomainError):
        L.bracket(e, [Q(1)])


def test_from_matrix_rejects_outsiders():
    L = make_classical("sp", 4)
    with pytest.raises(DomainError):
        L.from_matrix(la.identity(4))


def test_centralizer_of_nothing_is_everything(sl2):
    L = sl2[0]
    assert centralizer(L, []).dim == 3


def test_centralizer_of_h_in_sl2(sl2):
    L, e, h, f = sl2
    C = centralizer(L, [h])
    assert C.dim == 1 and C.contains(h)


def test_centralizer_of_sl4_22_triple():
    t = triple_from_partition("sl", 4, (2, 2))
    C = centralizer(t.algebra, [t.e, t.h, t.f])
    assert C.dim == 3 and C.closed
    assert derived_subalgebra(C).dim == 3  # a copy of sl2


def test_simple_algebra_center_and_derived():
    L = make_classical("sl", 4)
    assert center(L).dim == 0
    assert derived_subalgebra(L).dim == L.dim


def test_levi_of_sl4_22():
    t = triple_from_partition("sl", 4, (2, 2))
    g0 = Subalgebra.span(t.algebra, grading(t.algebra, t.h)[0], check_closed=True)
    assert (center(g0).dim, derived_subalgebra(g0).dim) == (1, 6)


def test_abelian_algebra():
    L = LieAlgebra(["a", "b"], [[{}, {}], [{}, {}]])
    assert center(L).dim == 2 and derived_subalgebra(L).dim == 0


def test_restrict_reproduces_brackets():
    L = make_classical("sl", 3)
    t = triple_from_partition("sl", 3, (3,))
    S = L.restrict([t.e, t.h, t.f])
    assert S.jacobi_failures() == []
    assert S.bracket([1, 0, 0], [0, 0, 1]) == [0, 1, 0]


def test_span_rejects_open_subspace(sl2):
    L, e, h, f = sl2
    with pytest.raises(DomainError):
        Subalgebra.span(L, [e, f], check_closed=True)


def test_jacobi_sampled_e7():
    L = make_chevalley(build_root_system("E", 7))
    rng = random.Random(0)
    triples = [tuple(rng.randrange(L.dim) for _ in range(3)) for _ in range(100_000)]
    assert L.jacobi_failures(triples) == []
