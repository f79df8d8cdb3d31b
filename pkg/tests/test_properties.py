"""Property-based checks of the algebraic laws the library relies on."""
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from sl2casson.bar import BarChain, bar_boundary
from sl2casson.chern_simons import INF, ModOne, cross_ratio, mobius
from sl2casson.scalars import Matrix, det, rank_eps
from sl2casson.words import GroupRingElt, Word, fox_derivative, reduce_word

letters = st.tuples(st.integers(1, 3), st.sampled_from([1, -1]))
raw_words = st.lists(letters, max_size=8)
words = raw_words.map(reduce_word)
ring_elts = st.lists(st.tuples(words, st.integers(-3, 3)), max_size=4).map(GroupRingElt)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(raw_words)
def test_free_reduction_idempotent(ls):
    w = reduce_word(ls)
    assert reduce_word(tuple(w)) == w
    assert all(a[0] != b[0] or a[1] != -b[1] for a, b in zip(tuple(w), tuple(w)[1:]))


@given(raw_words, raw_words)
def test_free_reduction_is_a_homomorphism(a, b):
    assert reduce_word(a + b) == reduce_word(a) * reduce_word(b)


@given(words)
def test_inverse(w):
    assert (w * w.inverse()).is_identity()


@given(words, words, st.integers(1, 3))
def test_fox_product_rule(u, v, i):
    assert fox_derivative(u * v, i) == fox_derivative(u, i) + GroupRingElt.from_word(u) * fox_derivative(v, i)


@given(words)
def test_fundamental_formula(w):
    # sum_i (dw/dx_i)(x_i - 1) = w - 1
    total = GroupRingElt.zero()
    for i in (1, 2, 3):
        total = total + fox_derivative(w, i) * (GroupRingElt.from_word(Word.gen(i)) - 1)
    assert total == GroupRingElt.from_word(w) - 1


@given(ring_elts, ring_elts, ring_elts)
def test_group_ring_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a * b).augmentation() == a.augmentation() * b.augmentation()


@given(st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(fractions, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_multiplicative_exact(a, b):
    A, B = Matrix(a), Matrix(b)
    assert det(A @ B) == det(A) * det(B)
    assert isinstance(det(A), (int, Fraction))


@given(st.lists(st.lists(fractions, min_size=4, max_size=4), min_size=2, max_size=4))
def test_rank_exact_matches_float(rows):
    assert rank_eps(Matrix(rows), 0) == np.linalg.matrix_rank(np.array(rows, dtype=float), tol=1e-9)


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_modone_group(x, y):
    a, b = ModOne(x), ModOne(y)
    assert 0 <= a.value < 1
    assert (a + b - b).close(a, 1e-9)
    assert (a + (-a)).close(ModOne(0.0), 1e-9)


def _sl2(p):
    a, b, c = p
    return np.array([[a, b], [c, (1 + b * c) / a]])


points = st.floats(-20, 20, allow_nan=False).filter(lambda x: abs(x) > 1e-3)


@settings(max_examples=200)
@given(st.lists(points, min_size=4, max_size=4, unique=True),
       st.tuples(st.floats(0.5, 2), st.floats(-2, 2), st.floats(-2, 2)))
def test_cross_ratio_invariance(pts, p):
    if min(abs(x - y) for i, x in enumerate(pts) for y in pts[i + 1:]) < 1e-2:
        return
    g = _sl2(p)
    moved = [mobius(g, x) for x in pts]
    if any(m == INF or abs(m) > 1e6 for m in moved):
        return
    want = cross_ratio(*pts)
    assert abs(cross_ratio(*moved) - want) <= 1e-6 * max(1.0, abs(want))


bar_terms = st.lists(st.tuples(st.lists(words, min_size=4, max_size=4).map(tuple), st.integers(-2, 2)),
                     max_size=5)


@given(bar_terms)
def test_bar_boundary_squares_to_zero(terms):
    assert bar_boundary(bar_boundary(BarChain(3, terms))).is_zero()
