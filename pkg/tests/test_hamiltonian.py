import dataclasses
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magical_sl2 import exactla as la
from magical_sl2.hamiltonian import (
    SCALARS,
    BZSVTriple,
    StructuralError,
    SymplecticRep,
    adjoint,
    cayley_morphism_check,
    cayley_pair,
    centralizing,
    check_g_equivariance,
    check_weight2,
    fixed_by,
    group_one_parameter,
    moment_map_linear,
    sample_group_element,
    tangent_complexes,
    tangent_quasi_iso_check,
    trivial_group,
    whittaker_space,
)
from magical_sl2.liealg import make_classical
from magical_sl2.magical import analyze
from magical_sl2.rootsys import DomainError
from magical_sl2.sl2jm import Sl2Triple, jm_decompose, triple_from_partition


def _jm(family, size, parts):
    return jm_decompose(triple_from_partition(family, size, parts))


def _slodowy(family, size, parts):
    t = triple_from_partition(family, size, parts)
    return whittaker_space(BZSVTriple(t.algebra, [], trivial_group, SymplecticRep.zero(0), t))


def _symmetric_space(family, size, parts):
    rep = analyze(_jm(family, size, parts))
    L = rep.algebra
    return whittaker_space(
        BZSVTriple(L, rep.h_basis, fixed_by(L, rep.sigma), SymplecticRep.zero(len(rep.h_basis)), None)
    )


def _matrix(n, entries):
    M = la.zeros(n)
    for (i, j), v in entries.items():
        M[i][j] = Q(v)
    return M


def _sp4_with_symplectic_fiber():
    """H = sl2 on the middle coordinates acting on its standard plane, rho principal on the outer ones."""
    L = make_classical("sp", 4)
    inner = [_matrix(4, {(1, 2): 1}), _matrix(4, {(1, 1): 1, (2, 2): -1}), _matrix(4, {(2, 1): 1})]
    h_basis = [L.from_matrix(M) for M in inner]
    actions = [
        la.to_matrix([[0, 1], [0, 0]]),
        la.to_matrix([[1, 0], [0, -1]]),
        la.to_matrix([[0, 0], [1, 0]]),
    ]
    rho = Sl2Triple(
        L,
        L.from_matrix(_matrix(4, {(0, 3): 1})),
        L.from_matrix(_matrix(4, {(0, 0): 1, (3, 3): -1})),
        L.from_matrix(_matrix(4, {(3, 0): 1})),
    )
    assert rho.relations_hold()
    S = SymplecticRep(la.to_matrix([[0, 1], [-1, 0]]), actions)
    return whittaker_space(BZSVTriple(L, h_basis, centralizing(L, [rho.e, rho.h, rho.f]), S, rho))


# the quadratic moment map


def _scaling_line():
    # gl1 acting on T*Q = Q + Q* with weights 1 and -1
    return SymplecticRep(la.to_matrix([[0, 1], [-1, 0]]), [la.to_matrix([[1, 0], [0, -1]])])


def test_moment_map_of_zero():
    assert moment_map_linear(_scaling_line())([0, 0]) == [0]


@settings(max_examples=50)
@given(
    st.fractions(-10, 10, max_denominator=5),
    st.fractions(-10, 10, max_denominator=5),
    st.fractions(-4, 4, max_denominator=3),
)
def test_moment_map_cotangent_line(v, xi, t):
    mu = moment_map_linear(_scaling_line())
    assert mu([v, xi]) == [v * xi]
    assert mu([t * v, t * xi]) == [t * t * x for x in mu([v, xi])]


def test_moment_map_quadratic_on_symplectic_fiber():
    S = _sp4_with_symplectic_fiber().bzsv.rep
    mu = moment_map_linear(S)
    for i in range(30):
        rng = random.Random(i)
        x = [Q(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(2)]
        assert mu([2 * a for a in x]) == [4 * y for y in mu(x)]


# BZSV validation


def test_validate_rejects_noncommuting_triple():
    t = triple_from_partition("sl", 3, (3,))
    L = t.algebra
    with pytest.raises(DomainError):
        whittaker_space(BZSVTriple(L, [t.h], trivial_group, SymplecticRep.zero(1), t))


def test_validate_rejects_bad_symplectic_form():
    ws = _sp4_with_symplectic_fiber()
    bad = dataclasses.replace(ws.bzsv, rep=SymplecticRep(la.to_matrix([[1, 0], [0, 1]]), ws.bzsv.rep.actions))
    with pytest.raises(DomainError):
        whittaker_space(bad)


def test_membership_probes():
    t = triple_from_partition("sl", 2, (2,))
    b = BZSVTriple(t.algebra, [], trivial_group, SymplecticRep.zero(0), t)
    with pytest.raises(DomainError):
        whittaker_space(b, probes=[la.to_matrix([[1, 1], [0, 1]])])


# shapes of the Whittaker spaces


def test_sl2_slodowy_fiber():
    ws = _slodowy("sl", 2, (2,))
    assert ws.weights == [4]
    assert la.same_span(ws.fiber, [ws.bzsv.rho.e])


def test_symmetric_space_fiber_weights():
    ws = _symmetric_space("sl", 4, (2, 2))
    assert ws.dim == 8 and set(ws.weights) == {2}
    g = sample_group_element(ws.algebra, random.Random(3))
    x = [Q(i + 1) for i in range(ws.dim)]
    xi = la.lincomb(x, ws.fiber, ws.algebra.dim)
    assert ws.mu(x, g) == adjoint(ws.algebra, la.inverse(g), xi, g_inv=g)


def test_primed_space_sl4():
    pair = cayley_pair(_jm("sl", 4, (2, 2)))
    assert pair.primed.weights == [4, 4, 4, 4]
    assert pair.target.weights == [2] * 8


def test_symplectic_fiber_weights():
    ws = _sp4_with_symplectic_fiber()
    # S scales linearly; m ∩ g_e holds two weight-1 vectors and e itself
    assert ws.weights == [1, 1, 3, 3, 4]
    assert ws.s_dim == 2


def test_one_parameter_subgroup():
    t = triple_from_partition("sl", 4, (2, 2))
    assert group_one_parameter(t.algebra, t.h, Q(2)) == la.diag([Q(2), Q(2), Q(1, 2), Q(1, 2)])


# weight 2 and equivariance


@pytest.mark.parametrize(
    "build",
    [
        lambda: _slodowy("sl", 2, (2,)),
        lambda: _slodowy("sl", 3, (3,)),
        lambda: _slodowy("sp", 4, (2, 2)),
        lambda: _symmetric_space("sl", 4, (2, 2)),
        lambda: cayley_pair(_jm("sl", 4, (2, 2))).primed,
        lambda: cayley_pair(_jm("sp", 4, (2, 2))).primed,
        _sp4_with_symplectic_fiber,
    ],
)
def test_weight2_and_equivariance(build):
    ws = build()
    assert check_weight2(ws, 50, 11).passed
    assert check_g_equivariance(ws, 50, 11).passed


def test_corrupted_grading_fails():
    ws = _slodowy("sl", 3, (3,))
    bad = dataclasses.replace(ws, weights=[3] + ws.weights[1:])
    report = check_weight2(bad, 50, 0)
    assert not report.passed
    assert set(report.counterexample) >= {"x", "g", "t", "lhs", "rhs"}


def test_symplectic_coordinates_need_linear_scaling():
    # giving the S-coordinates weight 2 breaks the identity on a nonzero S
    ws = _sp4_with_symplectic_fiber()
    bad = dataclasses.replace(ws, weights=[2, 2] + ws.weights[2:])
    assert not check_weight2(bad, 50, 0).passed


def test_dropping_adjoint_fails_equivariance():
    ws = _symmetric_space("sl", 4, (2, 2))
    report = check_g_equivariance(ws, 20, 0, mu=lambda x, g: ws.fiber_element(x))
    assert not report.passed


def test_reports_are_reproducible():
    ws = _slodowy("sl", 3, (3,))
    bad = dataclasses.replace(ws, weights=[3] + ws.weights[1:])
    assert check_weight2(bad, 30, 5).as_dict() == check_weight2(bad, 30, 5).as_dict()
    assert check_weight2(ws, 30, 5).as_dict() == check_weight2(ws, 30, 5).as_dict()


def test_zero_samples_rejected():
    with pytest.raises(DomainError):
        check_weight2(_slodowy("sl", 2, (2,)), 0, 0)


def test_scalars():
    assert set(SCALARS) == {Q(1), Q(-1), Q(2), Q(-2), Q(1, 2), Q(-1, 2), Q(3), Q(-3), Q(1, 3), Q(-1, 3)}


# Cayley morphism


@pytest.mark.parametrize("family, size, parts", [("sl", 4, (2, 2)), ("sp", 4, (2, 2)), ("sl", 3, (3,)), ("so", 5, (3, 1, 1))])
def test_cayley_morphism(family, size, parts):
    assert cayley_morphism_check(_jm(family, size, parts), 100, 1).passed


def test_cayley_morphism_at_t_one():
    pair = cayley_pair(_jm("sl", 4, (2, 2)))
    g = sample_group_element(pair.jm.algebra, random.Random(0))
    x = [Q(1), Q(-2), Q(3, 2), Q(1, 3)]
    y, gy = pair.phi(x, g)
    assert pair.phi(*pair.primed.grade(Q(1), x, g)) == pair.target.grade(Q(1), y, gy)
    assert pair.primed.mu(x, g) == pair.target.mu(y, gy)


def test_non_magical_input_is_structural_error():
    with pytest.raises(StructuralError):
        cayley_morphism_check(_jm("sl", 3, (2, 1)), 5, 0)


def test_rho_torus_lies_in_h():
    pair = cayley_pair(_jm("sl", 4, (2, 2)))
    for t in SCALARS:
        pair.target.require_member(group_one_parameter(pair.jm.algebra, pair.jm.triple.h, t))


# tangent complexes


def test_tangent_at_v_zero():
    jm = _jm("sl", 4, (2, 2))
    rep = analyze(jm)
    td = tangent_complexes(rep, la.zero_vector(jm.algebra.dim))
    assert la.same_span(td.ker2, jm.c)
    assert td.kernels_match and td.cokernels_match


@pytest.mark.parametrize("family, size, parts", [("sl", 4, (2, 2)), ("sp", 4, (2, 2)), ("sp", 6, (2, 2, 2)), ("so", 7, (5, 1, 1))])
def test_tangent_quasi_iso(family, size, parts):
    report = tangent_quasi_iso_check(_jm(family, size, parts), 20, 7)
    assert report.passed, report.counterexample


def test_tangent_non_magical():
    with pytest.raises(StructuralError):
        tangent_quasi_iso_check(_jm("sl", 3, (2, 1)), 1, 0)
