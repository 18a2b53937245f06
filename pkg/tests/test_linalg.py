import itertools
import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kgraphs.errors import EmptyDimension
from kgraphs.linalg.alternative import (PositiveKernel, Witness, kernel_program,
                                        stiemke_alternative, witness_program)
from kgraphs.linalg.intmat import (det, format_matrix, hermite_normal_form, identity,
                                   lattice_member, matmul, matvec, smith_normal_form,
                                   stable_kernel, transpose, zeros)
from kgraphs.linalg.lp import (INFEASIBLE, OPTIMAL, UNBOUNDED, check_farkas, check_feasible,
                               lp_solve_exact, primitive)

from conftest import int_matrices


def random_unimodular(rng, n, steps=12):
    W = identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            W[0] = [-x for x in W[0]]
            continue
        c = rng.randint(-3, 3)
        W[i] = [a + c * b for a, b in zip(W[i], W[j])]
        if rng.random() < 0.3:
            W[i], W[j] = W[j], W[i]
    return W


def check_smith(A, snf):
    m, n = len(A), len(A[0])
    assert matmul(matmul(snf.U, A), snf.V) == snf.D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    for i in range(m):
        for j in range(n):
            if i != j:
                assert snf.D[i][j] == 0
    d = snf.invariant_factors
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0


# -- Hermite -----------------------------------------------------------------

def test_hermite_example():
    hf = hermite_normal_form([[4, 6]])
    assert hf.H == [[2, 0]]
    assert matmul([[4, 6]], hf.U) == hf.H
    assert [row[0] for row in hf.U] == [-1, 1]


@pytest.mark.parametrize("side", ["column", "row"])
def test_hermite_identity_and_zero(side):
    hf = hermite_normal_form(identity(3), side=side)
    assert hf.H == identity(3) and hf.U == identity(3)
    assert hermite_normal_form(zeros(2, 3), side=side).H == zeros(2, 3)


@given(int_matrices(max_rows=5, max_cols=5))
def test_row_hermite_invariant_under_left_unimodular(A):
    rng = random.Random(len(A) * 31 + sum(map(sum, A)))
    W = random_unimodular(rng, len(A))
    h1 = hermite_normal_form(A, side="row")
    h2 = hermite_normal_form(matmul(W, A), side="row")
    assert h1.H == h2.H
    assert matmul(h1.U, A) == h1.H and abs(det(h1.U)) == 1


@given(int_matrices(max_rows=5, max_cols=5))
def test_column_hermite_invariant_under_right_unimodular(A):
    rng = random.Random(len(A[0]) * 17 + sum(map(sum, A)))
    W = random_unimodular(rng, len(A[0]))
    h1 = hermite_normal_form(A)
    h2 = hermite_normal_form(matmul(A, W))
    assert h1.H == h2.H
    assert matmul(A, h1.U) == h1.H


def test_format_matrix_is_row_major_text():
    assert format_matrix([[1, -2], [30, 4]]).splitlines()[1].split() == ["30", "4"]


# -- Smith ---------------------------------------------------------------------

@pytest.mark.parametrize("A,factors", [
    ([[2, 0], [0, 3]], (1, 6)),
    (identity(4), (1, 1, 1, 1)),
    ([[2, 4], [6, 8]], (2, 4)),
])
def test_smith_examples(A, factors):
    snf = smith_normal_form(A)
    assert snf.invariant_factors == factors
    check_smith(A, snf)


@given(int_matrices(max_rows=6, max_cols=6))
def test_smith_invariants(A):
    check_smith(A, smith_normal_form(A))


@given(int_matrices(max_rows=4, max_cols=4))
def test_smith_first_factor_is_entry_gcd(A):
    snf = smith_normal_form(A)
    g = 0
    for row in A:
        for x in row:
            g = gcd(g, x)
    assert snf.invariant_factors[0] == g


# -- lattice membership -------------------------------------------------------------

def test_lattice_member_examples():
    assert lattice_member([[4, 6]], [2]) == [-1, 1]
    assert lattice_member([[4, 6]], [1]) is None
    assert lattice_member([[4, 6]], [0]) == [0, 0]


@given(int_matrices(max_rows=3, max_cols=3, lo=-3, hi=3),
       st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_lattice_member_against_enumeration(A, b):
    b = b[:len(A)]
    n = len(A[0])
    x = lattice_member(A, b)
    if x is not None:
        assert matvec(A, x) == b
        return
    # no solution: the image of a generous box must miss b as well
    for y in itertools.product(range(-6, 7), repeat=n):
        assert matvec(A, list(y)) != b


# -- stable kernels -------------------------------------------------------------------

def test_stable_kernel_examples():
    assert stable_kernel([[2]]).rank == 0
    K = stable_kernel([[0, 1], [0, 0]])
    assert K.rank == 2 and K.contains([1, 0]) and K.contains([5, -7])
    K = stable_kernel([[1, 1], [1, 1]])
    assert K.rank == 1 and K.contains([1, -1]) and not K.contains([1, 0])


@given(int_matrices(max_rows=5, lo=-3, hi=3, square=True),
       st.lists(st.integers(-4, 4), min_size=5, max_size=5), st.integers(2, 5))
def test_stable_kernel_laws(A, x, m):
    N = len(A)
    x = x[:N]
    K = stable_kernel(A)
    assert K.power <= N
    for b in K.basis:
        assert K.contains(matvec(A, b))                     # A K in K
    assert K.contains(x) == K.contains(matvec(A, x))        # x in K iff Ax in K
    assert K.contains(x) == K.contains([m * v for v in x])  # saturated


# -- exact LP ---------------------------------------------------------------------------

def test_lp_infeasible_with_farkas():
    # x >= 1 and -x >= 0, written as -x <= -1 and x <= 0
    res = lp_solve_exact([0], A_ub=[[-1], [1]], b_ub=[-1, 0])
    assert res.status == INFEASIBLE
    assert res.farkas == (1, 1)
    assert check_farkas(res.farkas, 1, A_ub=[[-1], [1]], b_ub=[-1, 0])


def test_lp_exact_rational_optimum():
    res = lp_solve_exact([1], A_ub=[[1]], b_ub=[Fraction(3, 7)])
    assert res.status == OPTIMAL and res.x == (Fraction(3, 7),) and res.value == Fraction(3, 7)


def test_lp_kernel_program_for_zero_matrix():
    res = lp_solve_exact(**kernel_program([[0]], 1))
    assert res.status == OPTIMAL and res.value == 1 and res.x[0] == 1


def test_lp_unbounded_ray():
    res = lp_solve_exact([1, 1], A_ub=[[1, -1]], b_ub=[1])
    assert res.status == UNBOUNDED and res.ray is not None


@given(int_matrices(max_rows=4, max_cols=4, lo=-3, hi=3),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_lp_resubstitution(A, b, c):
    m, n = len(A), len(A[0])
    A_ub = A + [[1] * n]               # keep the region bounded
    b_ub = b[:m] + [10]
    res = lp_solve_exact(c[:n], A_ub=A_ub, b_ub=b_ub)
    if res.status == OPTIMAL:
        assert check_feasible(res.x, A_ub=A_ub, b_ub=b_ub)
        assert res.value == sum(Fraction(ci) * xi for ci, xi in zip(c, res.x))
        # no vertex of a small integer grid does better
        for y in itertools.product(range(0, 4), repeat=n):
            if check_feasible(y, A_ub=A_ub, b_ub=b_ub):
                assert sum(ci * yi for ci, yi in zip(c, y)) <= res.value
    else:
        assert res.status == INFEASIBLE
        assert check_farkas(res.farkas, n, A_ub=A_ub, b_ub=b_ub)


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)


# -- Stiemke alternative ------------------------------------------------------------------

@pytest.mark.parametrize("M,expected", [
    ([[0]], PositiveKernel(xi=(Fraction(1),))),
    ([[-1]], Witness(x=(-1,), Mx=(1,))),
    ([[1, -1]], Witness(x=(1, 0), Mx=(1,))),
])
def test_stiemke_examples(M, expected):
    assert stiemke_alternative(M) == expected


def test_stiemke_degenerate():
    with pytest.raises(EmptyDimension):
        stiemke_alternative([])
    assert stiemke_alternative([[], []], cols=0) == PositiveKernel(xi=(1, 1))


@given(int_matrices(max_rows=4, max_cols=5, lo=-3, hi=3))
def test_stiemke_exclusive_and_verified(M):
    N, P = len(M), len(M[0])
    alt = stiemke_alternative(M)
    if isinstance(alt, PositiveKernel):
        assert all(x > 0 for x in alt.xi)
        assert all(sum(M[v][p] * alt.xi[v] for v in range(N)) == 0 for p in range(P))
        # the witness system is infeasible, with a checkable certificate
        prog = witness_program(M, P)
        res = lp_solve_exact(**prog)
        assert res.status == INFEASIBLE
        assert check_farkas(res.farkas, P, A_ub=prog["A_ub"], b_ub=prog["b_ub"],
                            free=prog["free"])
    else:
        assert tuple(matvec(M, alt.x)) == alt.Mx
        assert all(c >= 0 for c in alt.Mx) and any(alt.Mx)
        # no strictly positive kernel vector of M^T: either none at all, or t* = 0
        res = lp_solve_exact(**kernel_program(M, P))
        assert res.status == INFEASIBLE or (res.status == OPTIMAL and res.value == 0)


def test_transpose_roundtrip():
    A = [[1, 2, 3], [4, 5, 6]]
    assert transpose(transpose(A)) == A
