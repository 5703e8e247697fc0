import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsys.errors import IndexOutOfRange
from qsys.laurent import LaurentPoly, VarId
from qsys.motzkin import MotzkinPath, fundamental_domain, zero_path
from qsys.qsystem import (QState, conserved, defect_wronskian, evolve, generating_fraction,
                          shifted_conserved, verify_linear_recursion, wronskian)


def plain_evolution(r, seed, lo, hi):
    """Independent forward/backward recursion on a dict, zero-path seed only."""
    R = {}
    for a in range(0, r + 2):
        for n in range(lo - 2, hi + 3):
            if a in (0, r + 1):
                R[(a, n)] = Fraction(1)
    for a in range(1, r + 1):
        R[(a, 0)], R[(a, 1)] = seed[(a, 0)], seed[(a, 1)]
    for n in range(2, hi + 1):
        for a in range(1, r + 1):
            R[(a, n)] = (R[(a, n - 1)] ** 2 + R[(a + 1, n - 1)] * R[(a - 1, n - 1)]) / R[(a, n - 2)]
    for n in range(-1, lo - 1, -1):
        for a in range(1, r + 1):
            R[(a, n)] = (R[(a, n + 1)] ** 2 + R[(a + 1, n + 1)] * R[(a - 1, n + 1)]) / R[(a, n + 2)]
    return R


@given(st.integers(1, 3), st.lists(st.fractions(Fraction(1, 3), 3), min_size=6, max_size=6))
@settings(max_examples=40, deadline=None)
def test_numeric_evolution_matches_plain_recursion(r, vals):
    seed = {(a, k): vals[2 * (a - 1) + k] for a in range(1, r + 1) for k in (0, 1)}
    st_ = QState(zero_path(r), {VarId(a, k): v for (a, k), v in seed.items()})
    ref = plain_evolution(r, seed, -3, 5)
    for a in range(1, r + 1):
        for n in range(-3, 6):
            assert evolve(st_, a, n) == ref[(a, n)]


def test_r1_all_ones_sequence():
    s = QState.all_ones(zero_path(1))
    assert [evolve(s, 1, n) for n in range(8)] == [1, 1, 2, 5, 13, 34, 89, 233]


@pytest.mark.parametrize("M", fundamental_domain(3), ids=str)
def test_symbolic_matches_numeric_at_random_point(M):
    sym = QState(M)
    pt = sym.oracle_point()
    num = QState(M, pt)
    for a in (1, 2, 3):
        for n in (-2, 0, 3, 4):
            assert LaurentPoly.coerce(evolve(sym, a, n)).evaluate(pt) == evolve(num, a, n)


def test_boundary_rows_and_range():
    s = QState(zero_path(2))
    assert evolve(s, 0, 5) == 1 and evolve(s, 3, -4) == 1
    with pytest.raises(IndexOutOfRange):
        evolve(s, 4, 0)
    with pytest.raises(IndexOutOfRange):
        defect_wronskian(s, 2, 3, 0)


@pytest.mark.parametrize("r", [1, 2])
def test_wronskian_identities_at_zero_path(r):
    s = QState(zero_path(r))
    for n in range(-2, 3):
        for a in range(1, r + 1):
            assert wronskian(s, a, n) == evolve(s, a, n)
        assert wronskian(s, r + 1, n) == 1
        assert wronskian(s, r + 2, n) == 0


@given(st.integers(1, 3), st.integers(0, 2**31))
@settings(max_examples=15, deadline=None)
def test_conserved_values_do_not_move_in_time(r, salt):
    rng = random.Random(salt)
    vals = {v: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for v in zero_path(r).seed_vars()}
    s = QState(zero_path(r), vals)
    base = conserved(s, cross_check=())
    for k in (-2, 1, 3):
        shifted = shifted_conserved(s, k)
        assert [LaurentPoly.coerce(x) for x in shifted] == [LaurentPoly.coerce(x) for x in base.c]


def test_conserved_endpoints_are_one():
    for M in fundamental_domain(2):
        cs = conserved(QState(M))
        assert cs[0] == 1 and cs[3] == 1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_linear_recursion_numeric(r):
    s = QState.all_ones(zero_path(r))
    assert verify_linear_recursion(s, range(-3, 6))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_generating_fraction_series(r):
    s = QState.all_ones(zero_path(r))
    series = generating_fraction(s).series(10)
    assert [series.coeff(n) for n in range(11)] == [evolve(s, 1, n) for n in range(11)]


def test_non_fundamental_seed_is_accepted():
    s = QState(MotzkinPath.of(2, 1))
    assert LaurentPoly.coerce(evolve(s, 1, 0)).is_nonneg()
