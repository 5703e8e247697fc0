import itertools

import pytest

from qsys.graphs import build_gamma
from qsys.laurent import LaurentPoly, bareiss_det
from qsys.motzkin import MotzkinPath, fundamental_domain, zero_path
from qsys.paths import (all_families, enumerate_families, enumerate_paths, find_crossing, flip,
                        generating_function, lgv_check, lgv_route, path_weight_sum,
                        rone_from_paths, too_close, transfer_matrix)
from qsys.paths import _long_heights
from qsys.qsystem import QState, evolve

R2 = fundamental_domain(2)


@pytest.mark.parametrize("M", R2, ids=str)
def test_paths_reproduce_the_solution(M):
    s = QState(M)
    for n in range(0, 5):
        assert rone_from_paths(M, n) == LaurentPoly.coerce(evolve(s, 1, n + M.m(1)))


def test_translated_seed_paths():
    M = MotzkinPath.of(2, 1)
    s = QState(M)
    for n in range(0, 3):
        assert rone_from_paths(M, n) == LaurentPoly.coerce(evolve(s, 1, n + 2))


@pytest.mark.parametrize("M", fundamental_domain(3), ids=str)
def test_series_coefficients_are_path_sums(M):
    G = build_gamma(M)
    F = generating_function(G, 4)
    for k in range(5):
        assert LaurentPoly.coerce(F.coeff(k)) == LaurentPoly.coerce(path_weight_sum(G, k))


def test_path_counts_at_ones_zero_path():
    G = build_gamma(zero_path(2), [None] + [1] * 5)
    assert [len(enumerate_paths(G, k)) for k in range(6)] == \
        [int(evolve(QState.all_ones(zero_path(2)), 1, k)) for k in range(6)]


def _crossing_pairs(M, nmax):
    G = build_gamma(M)
    for n1, n2 in itertools.product(range(1, nmax + 1), range(0, nmax)):
        shifted = [q.shifted(2) for q in enumerate_paths(G, n2)]
        for P, Q in itertools.product(enumerate_paths(G, n1), shifted):
            where = find_crossing(P, Q)
            if where is not None:
                yield G, P, Q, where


@pytest.mark.parametrize("M", [MotzkinPath.of(1, 0, 0), MotzkinPath.of(2, 1, 0)],
                         ids=str)
def test_flip_trades_crossings_for_close_pairs(M):
    seen = 0
    for G, P, Q, where in _crossing_pairs(M, 4):
        P2, Q2 = flip(P, Q, G, where)
        assert P2.weight * Q2.weight == P.weight * Q.weight
        assert too_close(P2, Q2, _long_heights(G))
        P3, Q3 = flip(P2, Q2, G, where)
        assert P3.step_deltas() == P.step_deltas() and Q3.step_deltas() == Q.step_deltas()
        seen += 1
    assert seen > 0


@pytest.mark.parametrize("M", R2, ids=str)
def test_signed_family_sum_is_the_determinant(M):
    """All pairings with signs reproduce the determinant of single path sums."""
    G = build_gamma(M)
    for n in range(1, 3):
        total = LaurentPoly.zero()
        for fam in all_families(M, 2, n, G):
            total = total + fam.sign * LaurentPoly.coerce(fam.weight)
        mat = [[LaurentPoly.coerce(path_weight_sum(G, n + 3 - i - j)) for j in (1, 2)] for i in (1, 2)]
        assert total == bareiss_det(mat)


@pytest.mark.parametrize("M", R2, ids=str)
def test_lgv_r2(M):
    for n in range(0, 3):
        assert lgv_check(M, 2, n)


def test_lgv_report_and_routing():
    rep = lgv_check(zero_path(3), 2, 1, report=True)
    assert rep.ok and rep.families == len(enumerate_families(zero_path(3), 2, 1))
    sub, alpha, n, route = lgv_route(MotzkinPath.of(0, 1, 2), 3, 0)
    assert n >= alpha - 1


def test_transfer_matrix_rows():
    T = transfer_matrix(build_gamma(zero_path(3)))
    assert T.dim == 8
    rows = T.to_rows()
    assert rows[1][0] == "1" and rows[0][1].startswith("t*")
