"""Characteristic-polynomial identities and spectral-curve bookkeeping for U(n,n)-Higgs bundles.

Characteristic polynomials are det(tI - M), coefficients listed from the
leading one down.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from math import comb
from typing import Sequence

from . import exactla as la
from .liealg import classical_form
from .rootsys import DomainError

CONVENTION = "det(tI - M), leading coefficient first"


class PreconditionError(DomainError):
    pass


@dataclass(frozen=True)
class SpectralParams:
    n: int
    g: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("n must be at least 1")
        if self.g < 2:
            raise DomainError("the genus must be at least 2")


@dataclass
class CharpolyReport:
    matrix: la.Matrix = field(repr=False)
    computed: list[Q]
    predicted: list[Q]
    convention: str
    signs: list[int] = field(default_factory=list)
    passed: bool = False


def is_symplectic(A: Sequence[Sequence[Q]]) -> bool:
    """A^T J + J A = 0 for the anti-diagonal form J."""
    N = len(A)
    if N % 2:
        return False
    J = classical_form("sp", N)
    return la.add(la.matmul(la.transpose(A), J), la.matmul(J, A)) == la.zeros(N)


def symplectic_charpoly_check(A: Sequence[Sequence[Q]]) -> CharpolyReport:
    """det(tI - A) = t^{2n} + sum_i a_i t^{2(n-i)} with a_i = tr(wedge^{2i} A)."""
    A = la.to_matrix(A)
    if not is_symplectic(A):
        raise PreconditionError("matrix is not in the symplectic Lie algebra")
    N = len(A)
    computed = la.charpoly(A)
    predicted = [Q(0)] * (N + 1)
    predicted[0] = Q(1)
    for i in range(1, N // 2 + 1):
        predicted[2 * i] = la.ext_power_trace(A, 2 * i)
    return CharpolyReport(A, computed, predicted, CONVENTION, passed=computed == predicted)


def shalika_matrix(X: Sequence[Sequence[Q]]) -> la.Matrix:
    """[[0, X], [I, 0]]."""
    n = len(X)
    top = [[Q(0)] * n + [la.q(x) for x in row] for row in X]
    bottom = [[Q(int(i == j)) for j in range(n)] + [Q(0)] * n for i in range(n)]
    return top + bottom


@lru_cache(maxsize=None)
def _probe_signs(n: int) -> tuple[int, ...]:
    # X = I has tr(wedge^i X) = C(n, i), never zero, so each sign is read off directly
    coeffs = la.charpoly(shalika_matrix(la.identity(n)))
    return tuple(int(coeffs[2 * i] / comb(n, i)) for i in range(1, n + 1))


def shalika_signs(n: int) -> list[int]:
    """epsilon_i with det(tI - M) = t^{2n} + sum eps_i tr(wedge^i X) t^{2(n-i)}."""
    eps = list(_probe_signs(n))
    assert eps == [(-1) ** i for i in range(1, n + 1)]
    return eps


def shalika_charpoly_check(X: Sequence[Sequence[Q]]) -> CharpolyReport:
    X = la.to_matrix(X)
    n = len(X)
    M = shalika_matrix(X)
    computed = la.charpoly(M)
    eps = shalika_signs(n)
    predicted = [Q(0)] * (2 * n + 1)
    predicted[0] = Q(1)
    for i in range(1, n + 1):
        predicted[2 * i] = eps[i - 1] * la.ext_power_trace(X, i)
    return CharpolyReport(M, computed, predicted, CONVENTION, signs=eps, passed=computed == predicted)


def random_symplectic(n: int, rng: random.Random, bound: int = 5) -> la.Matrix:
    """A random rational element of sp_2n in the anti-diagonal realization."""
    N = 2 * n
    J = classical_form("sp", N)
    # A = J^{-1} S with S symmetric lies in sp
    S = la.zeros(N)
    for i in range(N):
        for j in range(i, N):
            S[i][j] = S[j][i] = Q(rng.randint(-bound, bound), rng.randint(1, 3))
    return la.matmul(la.inverse(J), S)


def random_square(n: int, rng: random.Random, bound: int = 5) -> la.Matrix:
    return [[Q(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]


# Toledo invariant and Hecke counts


def toledo(deg_v: int, deg_w: int) -> int:
    return deg_v - deg_w


def milnor_wood_bound(p: SpectralParams) -> int:
    return 2 * p.n * (p.g - 1)


def is_maximal(tau: int, p: SpectralParams) -> bool:
    return abs(tau) == milnor_wood_bound(p)


def hecke_counts(p: SpectralParams) -> tuple[int, int]:
    """Points of the spectral curve over the zeros of the determinant section, and subsets of them."""
    points = 4 * p.n * (p.g - 1)
    return points, 2**points


# genus bookkeeping


def spectral_genus(m: int, deg_l: int, g: int) -> int:
    if m < 1 or deg_l < 0:
        raise DomainError("need m >= 1 and deg L >= 0")
    twice = 2 + 2 * m * (g - 1) + deg_l * m * (m - 1)
    if twice % 2:
        raise DomainError("non-integral arithmetic genus")
    return twice // 2


def quotient_genus(g_a: int, fixed: int) -> int:
    """Riemann-Hurwitz for a double cover with the given number of fixed points."""
    if fixed < 0:
        raise DomainError("negative number of fixed points")
    num = 2 * g_a - 2 - fixed
    if num % 4:
        raise DomainError(f"2g - 2 - F = {num} is not divisible by 4")
    return num // 4 + 1


@dataclass(frozen=True)
class PrymDims:
    g_a: int
    g_bar: int
    prym_sl: int
    prym_sp: int
    cayley_fiber: int


def prym_dims(p: SpectralParams) -> PrymDims:
    m = 2 * p.n
    g_a = spectral_genus(m, 2 * p.g - 2, p.g)
    g_bar = quotient_genus(g_a, 4 * p.n * (p.g - 1))
    dims = PrymDims(g_a, g_bar, g_a - p.g, g_a - g_bar, g_bar - p.g)
    assert dims.prym_sl == dims.prym_sp + dims.cayley_fiber
    return dims
