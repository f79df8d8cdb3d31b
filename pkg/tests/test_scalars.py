import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from sl2casson.scalars import Backend, BackendError, Matrix, det, inverse, kernel_basis, rank_eps, solve


def cofactor_det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(n))


def test_det_identity_and_diagonal():
    assert det(Matrix.identity(3, Backend.EXACT)) == 1
    assert det(Matrix([[2, 0], [0, 3]])) == 6


def test_det_matches_cofactor_expansion():
    rng = random.Random(0)
    for _ in range(20):
        a = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)] for _ in range(4)]
        assert det(Matrix(a)) == cofactor_det(a)


def test_det_float_matches_numpy():
    a = np.random.default_rng(1).normal(size=(5, 5))
    assert det(Matrix(a)) == pytest.approx(np.linalg.det(a), rel=1e-12)


def test_det_non_square_raises():
    with pytest.raises(ValueError):
        det(Matrix([[1, 2, 3]]))


def test_rank_basic():
    assert rank_eps(Matrix.zeros(3, 3, Backend.EXACT), 0) == 0
    u = np.arange(1.0, 6.0)
    assert rank_eps(Matrix(np.outer(u, u + 1)), 1e-9) == 1


def test_rank_tiny_pivot_is_deficient():
    a = np.diag([1.0, 1e-14])
    assert rank_eps(Matrix(a), 1e-9) == 1


def test_rank_exact_rejects_tolerance():
    with pytest.raises(ValueError):
        rank_eps(Matrix([[1, 2]]), 1e-9)


def test_rank_permutation_invariant():
    rng = np.random.default_rng(2)
    a = rng.normal(size=(4, 2)) @ rng.normal(size=(2, 5))
    r = rank_eps(Matrix(a), 1e-9)
    assert r == 2
    for p in itertools.islice(itertools.permutations(range(4)), 6):
        assert rank_eps(Matrix(a[list(p)][:, ::-1]), 1e-9) == r


def test_kernel_examples():
    (v,) = kernel_basis(Matrix([[1, 1]]), 0)
    assert list(v) == [1, -1]
    assert kernel_basis(Matrix.identity(3, Backend.EXACT), 0) == []


def test_kernel_float_residual():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(4, 2)) @ rng.normal(size=(2, 4))
    ker = kernel_basis(Matrix(a), 1e-9)
    assert len(ker) == 2
    for v in ker:
        assert np.abs(a @ v).max() <= 10 * 1e-9 * np.abs(a).max()


def test_solve_and_inverse_exact():
    M = Matrix([[2, 1], [1, 1]])
    x = solve(M, np.array([Fraction(3), Fraction(2)], dtype=object), 0)
    assert list(x) == [1, 1]
    assert (inverse(M, 0) @ M).a.tolist() == [[1, 0], [0, 1]]


def test_mixed_backends_error():
    with pytest.raises(BackendError):
        Matrix([[1, 2]]) @ Matrix(np.array([[1.0], [2.0]]))
    with pytest.raises(BackendError):
        Matrix(np.array([[0.5]]), Backend.EXACT)
