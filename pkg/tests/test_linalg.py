"""Exact linear algebra: rref, rank, nullspace, solve, quotient coordinates.

Ranks over F_p are cross-checked against sympy's DomainMatrix as an
independent implementation.
"""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from codim2.linalg import (
    LinearSolver,
    as_matrix,
    eye_matrix,
    in_span,
    independent_columns,
    matmul,
    nullspace,
    quotient_basis,
    quotient_coords,
    rank,
    rref,
    solve,
    zeros_matrix,
)

P = 32003


def sympy_rank(rows, p):
    dom = GF(p) if p else QQ
    m = DomainMatrix([[dom(int(c)) for c in row] for row in rows], (len(rows), len(rows[0])), dom)
    return m.rank()


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-8, 8), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@settings(max_examples=80)
@given(matrices, st.sampled_from([2, 3, 101, P]))
def test_rank_matches_independent_implementation(rows, p):
    a = as_matrix(rows, p)
    assert rank(a, p) == sympy_rank(rows, p)


@settings(max_examples=40)
@given(matrices)
def test_rank_over_rationals(rows):
    a = as_matrix(rows, 0)
    assert rank(a, 0) == sympy_rank(rows, 0)


@settings(max_examples=60)
@given(matrices, st.sampled_from([3, P]))
def test_nullspace_is_kernel_basis(rows, p):
    a = as_matrix(rows, p)
    ns = nullspace(a, p)
    assert ns.shape == (a.shape[1], a.shape[1] - rank(a, p))
    prod = matmul(a, ns, p)
    assert not np.any(prod)
    assert rank(ns, p) == ns.shape[1]


@settings(max_examples=60)
@given(matrices, st.sampled_from([3, P]))
def test_solve_recovers_consistent_systems(rows, p):
    a = as_matrix(rows, p)
    x = as_matrix([[i + 1] for i in range(a.shape[1])], p)
    b = matmul(a, x, p)
    got = solve(a, b, p)
    assert got is not None
    assert np.array_equal(matmul(a, got, p), b)


def test_solve_detects_inconsistency():
    a = as_matrix([[1], [0]], P)
    b = as_matrix([[0], [1]], P).reshape(-1)
    assert solve(a, b, P) is None
    assert not in_span(a, b, P)


def test_rref_shape_and_pivots():
    a = as_matrix([[0, 2, 4], [1, 1, 1], [1, 3, 5]], P)
    r, piv = rref(a, P)
    assert piv == [0, 1]
    assert r[0, 0] == 1 and r[1, 1] == 1
    assert not np.any(r[2])
    # third column is forced: col2 = -col0 + 2*col1
    assert r[0, 2] == P - 1 and r[1, 2] == 2


def test_independent_columns_greedy_leftmost():
    a = as_matrix([[1, 2, 0, 1], [2, 4, 1, 0]], P)
    assert independent_columns(a, P) == [0, 2]


def test_empty_shapes():
    for p in (P, 0):
        z = zeros_matrix(0, 3, p)
        assert rank(z, p) == 0
        assert nullspace(z, p).shape == (3, 3)
        assert rank(zeros_matrix(3, 0, p), p) == 0
        assert nullspace(zeros_matrix(3, 0, p), p).shape == (0, 0)
        s = solve(zeros_matrix(0, 2, p), zeros_matrix(0, 1, p), p)
        assert s is not None and s.shape == (2, 1)


def test_matmul_blocked_matches_direct():
    rng = np.random.default_rng(0)
    a = rng.integers(0, P, size=(7, 90)).astype(np.int64)
    b = rng.integers(0, P, size=(90, 4)).astype(np.int64)
    want = (a.astype(object) @ b.astype(object)) % P
    assert np.array_equal(matmul(a, b, P), want.astype(np.int64))


def test_linear_solver_matches_one_shot_solve():
    a = as_matrix([[1, 2, 3], [0, 1, 4], [1, 3, 7]], P)
    ls = LinearSolver(a, P)
    assert ls.rank == rank(a, P)
    b = matmul(a, as_matrix([[5], [6], [7]], P), P).reshape(-1)
    x = ls.solve(b)
    assert x is not None
    assert np.array_equal(matmul(a, x.reshape(-1, 1), P).reshape(-1), b)
    bad = as_matrix([[1], [0], [0]], P).reshape(-1)
    assert ls.solve(bad) is None


def test_quotient_basis_dimensions_and_coordinates():
    # ambient F_p^3; space = everything, sub = span(e0 + e1)
    space = eye_matrix(3, P)
    sub = as_matrix([[1], [1], [0]], P)
    reps, solver = quotient_basis(space, sub, P)
    assert len(reps) == 2
    v = as_matrix([[3], [1], [2]], P).reshape(-1)
    coords = quotient_coords(solver, sub.shape[1], v)
    assert coords.shape == (2,)
    # class of sub itself is zero in the quotient
    zero_coords = quotient_coords(solver, 1, sub.reshape(-1))
    assert not np.any(zero_coords)


def test_quotient_by_full_space_is_zero():
    space = eye_matrix(3, P)
    reps, solver = quotient_basis(space, space, P)
    assert reps == []
    v = as_matrix([[1], [2], [3]], P).reshape(-1)
    assert quotient_coords(solver, 3, v).shape == (0,)


def test_fraction_matrices_stay_exact():
    a = as_matrix([[1, 2], [3, 4]], 0)
    r, piv = rref(a, 0)
    assert piv == [0, 1]
    assert r[0, 1] == Fraction(0)
    x = solve(a, as_matrix([[1], [1]], 0).reshape(-1), 0)
    assert x is not None and list(x) == [Fraction(-1), Fraction(1)]
