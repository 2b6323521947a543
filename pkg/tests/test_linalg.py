import random
from fractions import Fraction

import pytest

from loopforms.cyclo import CycloNum, zeta_power
from loopforms.linalg import (
    SpanSolver,
    identity_matrix,
    is_identity,
    mat_inverse,
    mat_mul,
    mat_pow,
    mat_vec,
    nullspace,
    rank,
    rref,
    vec_add,
    vec_scale,
    zero_vector,
)


def q(x, order=1):
    return CycloNum.rational(order, Fraction(x))


def _random_matrix(rng, rows, cols, order):
    pool = [q(v, order) for v in (-2, -1, 0, 0, 1, 2)] + [zeta_power(order, 1)]
    return tuple(tuple(rng.choice(pool) for _ in range(cols)) for _ in range(rows))


def test_rref_rank_one_fixture():
    # zero rows are dropped; only the reduced nonzero rows come back
    mat = [[q(1), q(2)], [q(2), q(4)]]
    reduced, pivots = rref(mat)
    assert pivots == [0]
    assert len(reduced) == 1
    assert reduced[0] == [q(1), q(2)]


def test_nullspace_hand_fixture():
    mat = [[q(1), q(1), q(0)], [q(0), q(1), q(1)]]
    basis = nullspace(mat, 3, 1)
    assert len(basis) == 1
    v = basis[0]
    assert all(c.is_zero() for c in mat_vec(mat, v))
    # kernel direction (1, -1, 1) up to scale
    scale = v[0]
    assert v == (scale, -scale, scale)


def test_rank_nullity_on_random_matrices():
    rng = random.Random(31337)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        mat = _random_matrix(rng, rows, cols, 3)
        r = rank(mat)
        basis = nullspace(mat, cols, 3)
        assert r + len(basis) == cols
        for v in basis:
            assert all(c.is_zero() for c in mat_vec(mat, v))


def test_mat_pow_zero_exponent_is_identity():
    mat = [[q(0), q(1)], [q(1), q(0)]]
    assert is_identity(mat_pow(mat, 0))
    assert is_identity(mat_pow(mat, 2))


def test_mat_inverse_on_random_invertible():
    rng = random.Random(404)
    produced = 0
    while produced < 25:
        mat = _random_matrix(rng, 3, 3, 4)
        if rank(mat) < 3:
            continue
        produced += 1
        assert is_identity(mat_mul(mat, mat_inverse(mat)))


def test_mat_mul_associativity():
    rng = random.Random(8)
    for _ in range(20):
        a = _random_matrix(rng, 2, 3, 3)
        b = _random_matrix(rng, 3, 2, 3)
        c = _random_matrix(rng, 2, 2, 3)
        assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))


def test_span_solver_recovers_coefficients():
    rng = random.Random(55)
    basis = [
        (q(1, 4), q(0, 4), q(2, 4)),
        (q(0, 4), q(1, 4), zeta_power(4, 1)),
    ]
    solver = SpanSolver(basis, 3, 4)
    for _ in range(20):
        c0 = q(rng.randint(-3, 3), 4)
        c1 = q(rng.randint(-3, 3), 4)
        v = vec_add(vec_scale(c0, basis[0]), vec_scale(c1, basis[1]))
        coords = solver.coords(v)
        assert coords == [c0, c1]
    assert not solver.contains((q(0, 4), q(0, 4), q(1, 4)))
    assert solver.contains(zero_vector(3, 4))


def test_identity_matrix_shape():
    eye = identity_matrix(4, 6)
    assert is_identity(eye)
    assert rank(eye) == 4
