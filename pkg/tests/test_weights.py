import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsys.motzkin import fundamental_domain, has_rearrangement_move, zero_path
from qsys.weights import (b_matrix, b_matrix_by_mutation, cartan, check_weight_mutation,
                          inverse_mutate_weight_list, matrix_mutation, mutate_weight_list,
                          product_condition_holds, verify_weight_b_relation, weights_for_seed)

positive = st.fractions(Fraction(1, 5), 5).filter(lambda x: x > 0)


@given(st.integers(1, 3).flatmap(lambda r: st.tuples(
    st.just(r), st.integers(1, r), st.lists(positive, min_size=2 * r + 1, max_size=2 * r + 1))))
def test_weight_moves_invert(case):
    r, alpha, ys = case
    y = [None] + ys
    for kind in ("a", "b"):
        if kind == "b" and alpha == r:
            continue
        moved = mutate_weight_list(y, alpha, kind)
        assert inverse_mutate_weight_list(moved, alpha, kind) == y


@pytest.mark.parametrize("r", [2, 3, 4])
def test_weights_follow_every_rearrangement_move(r):
    for M in fundamental_domain(r):
        for alpha in range(1, r + 1):
            if has_rearrangement_move(M, alpha):
                assert check_weight_mutation(M, alpha)


@given(st.lists(positive, min_size=9, max_size=9))
@settings(max_examples=30)
def test_product_condition(ys):
    y = [None] + ys
    for i, m, j, l in itertools.product(range(1, 5), repeat=4):
        if i > m and j > l and m > j:
            assert product_condition_holds(y, i, j, m, l)


def test_zero_path_weights_are_monomials():
    sk = weights_for_seed(zero_path(3))
    assert len(sk.as_list()) == 7
    assert all(w.is_monomial() for w in sk.as_list())


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_exchange_matrix_shape(r):
    for M in fundamental_domain(r):
        B = b_matrix(M)
        assert B.is_skew_symmetric()
        assert B.entries() <= {-2, -1, 0, 1, 2}
        assert B == b_matrix_by_mutation(M)


def test_cartan():
    assert cartan(3) == [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]


skew = st.integers(2, 5).flatmap(lambda n: st.lists(
    st.integers(-3, 3), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
    lambda upper: _skew(n, upper)))


def _skew(n, upper):
    B = [[0] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i + 1, n):
            B[i][j] = next(it)
            B[j][i] = -B[i][j]
    return B


@given(skew, st.data())
def test_matrix_mutation_is_an_involution(B, data):
    k = data.draw(st.integers(0, len(B) - 1))
    once = matrix_mutation(B, k)
    assert all(once[i][j] == -once[j][i] for i in range(len(B)) for j in range(len(B)))
    assert matrix_mutation(once, k) == B


@pytest.mark.parametrize("r", [2, 3])
def test_weight_exchange_relation(r):
    assert all(verify_weight_b_relation(M) for M in fundamental_domain(r))
