from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsys import reference_tables as ref
from qsys.errors import DegenerateSum, PatternMismatch
from qsys.fractions import (FractionNode, cf_series, compose_moves, dictionaries_agree,
                            move_first, move_first_inverse, move_second, rearranged_fraction,
                            second_move_inverse_weights, second_move_weights,
                            verify_mutation_is_rearrangement)
from qsys.graphs import build_gamma
from qsys.laurent import RationalFunction
from qsys.motzkin import fundamental_domain, has_rearrangement_move, zero_path
from qsys.paths import generating_function

N = 10
w = st.fractions(Fraction(1, 7), 7).filter(lambda x: x != 0)


def coeffs(s):
    return [s.coeff(k) for k in range(N + 1)]


@given(w, st.lists(w, min_size=0, max_size=3), w)
@settings(max_examples=40)
def test_first_move_preserves_series(a, diag, deep):
    child = FractionNode(tuple(diag), ((deep, (FractionNode((deep,)),)),))
    root = FractionNode((), ((a, (child,)),))
    moved = move_first(root)
    assert coeffs(moved.evaluate(N)) == coeffs(root.evaluate(N))
    assert coeffs(move_first_inverse(moved).evaluate(N)) == coeffs(root.evaluate(N))


@given(w, w, w, w)
@settings(max_examples=40)
def test_second_move_simple_form(a, b, c, d):
    if a + b == 0:
        return
    Q = FractionNode((d,), (), "Q")
    P = FractionNode((), ((c, (Q,)),), "P")
    N0 = FractionNode((a,), ((b, (P,)),), "N")
    assert coeffs(move_second(N0).evaluate(N)) == coeffs(N0.evaluate(N))


@given(w, w, st.lists(w, min_size=1, max_size=2), st.lists(w, min_size=2, max_size=3))
@settings(max_examples=40)
def test_second_move_general_form(a, b, pdiag, bw):
    if a + b == 0:
        return
    leaf = FractionNode((bw[0],), (), "L")
    P = FractionNode(tuple(pdiag), tuple((x, (leaf,)) for x in bw[1:]), "P")
    N0 = FractionNode((a,), ((b, (P,)),), "N")
    assert coeffs(move_second(N0).evaluate(N)) == coeffs(N0.evaluate(N))


@given(w, w, w)
def test_second_move_weights_invert(a, b, c):
    if a + b == 0 or c == 0:
        return
    assert second_move_inverse_weights(*second_move_weights(a, b, c)) == (a, b, c)


def test_degenerate_and_mismatched_sites():
    with pytest.raises(DegenerateSum):
        second_move_weights(1, -1, 2)
    with pytest.raises(PatternMismatch):
        move_second(FractionNode((1, 2)))
    with pytest.raises(PatternMismatch):
        move_first(FractionNode((1,)))


@pytest.mark.parametrize("r", [1, 2])
def test_fraction_equals_transfer_matrix(r):
    for M in fundamental_domain(r):
        F = generating_function(build_gamma(M), 6)
        C = cf_series(M, 6)
        assert all(F.coeff(k) == C.coeff(k) for k in range(7))


@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_rearranged_zero_path_fraction_keeps_series(alpha):
    M = zero_path(3)
    before = cf_series(M, 6)
    after = rearranged_fraction(M, alpha).evaluate(6)
    for k in range(7):
        assert RationalFunction.coerce(before.coeff(k)) == RationalFunction.coerce(after.coeff(k))


@pytest.mark.parametrize("r", [2, 3])
def test_every_move_is_a_rearrangement(r):
    for M in fundamental_domain(r):
        for alpha in range(1, r + 1):
            if has_rearrangement_move(M, alpha):
                assert verify_mutation_is_rearrangement(M, alpha, order=5)


@pytest.mark.parametrize("rows", [[1], [2], [3], [1, 3], [3, 2], [2, 1], [3, 2, 1]])
def test_composed_dictionaries_match_closed_forms(rows):
    composed = compose_moves(3, rows)
    assert dictionaries_agree(composed.M, composed)


def _product(name, idx, corrected):
    out = 1
    for i in idx:
        out = out * ref.dictionary_entry(name, i, corrected)
    return out


@pytest.mark.parametrize("name", sorted(ref.WEIGHT_DICTIONARIES))
def test_dictionary_relations(name):
    for lhs, rhs in ref.WEIGHT_DICTIONARIES[name]["relations"]:
        assert _product(name, lhs, True) == _product(name, rhs, True)


def test_printed_w3_breaks_the_odd_product():
    assert _product("w", (1, 3, 5, 7), False) != 1
    assert _product("w", (1, 3, 5, 7), True) == 1
