import pytest

from qsys import reference_tables as ref
from qsys.errors import IndexOutOfRange, OutOfDomain
from qsys.graphs import build_gamma
from qsys.laurent import LaurentPoly, bareiss_det
from qsys.motzkin import fundamental_domain, zero_path
from qsys.paths import enumerate_families, family_sum, generating_function, path_weight_sum
from qsys.qsystem import QState, evolve
from qsys.tilings import (aztec_matchings, aztec_weight_vars, count_tilings, deformed_domain,
                          enumerate_step_paths, enumerate_tilings, halved_aztec,
                          indented_halved_aztec, matching_weights, ones_moves, path_to_tiling,
                          tiling_svg, tiling_to_path, zero_path_weights)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_aztec_diamond_matching_count(n):
    # radius n holds the Aztec diamond of order n - 1
    assert len(aztec_matchings(1, n)) == 2 ** ((n - 1) * n // 2)


def test_matching_range_is_checked():
    with pytest.raises(IndexOutOfRange):
        matching_weights(1, 2, 3)


@pytest.mark.parametrize("n,expected", [(1, 2), (2, 6), (3, 22), (4, 90)])
def test_halved_aztec_counts_are_schroeder(n, expected):
    assert count_tilings(halved_aztec(n, ones_moves())) == expected


def _lgv_by_paths(moves, starts, ends, top):
    mat = [[sum((p.weight for p in enumerate_step_paths(moves, a, e, top)), LaurentPoly.zero())
            for e in ends] for a in starts]
    return LaurentPoly.coerce(bareiss_det(mat))


@pytest.mark.parametrize("n,alpha", [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3)])
def test_indented_domain_is_nonintersecting_paths(n, alpha):
    D = indented_halved_aztec(n, alpha)
    got = LaurentPoly.coerce(count_tilings(D))
    assert got == _lgv_by_paths(aztec_weight_vars(), D.starts, D.ends, D.width // 2)


def test_indentation_needs_room():
    with pytest.raises(OutOfDomain):
        indented_halved_aztec(0, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_halved_aztec_specializes_to_zero_path_series(n):
    r = 3
    D = halved_aztec(n)
    F = generating_function(build_gamma(zero_path(r)), n)
    got = count_tilings(D, zero_path_weights(r))
    assert LaurentPoly.coerce(got) == LaurentPoly.coerce(F.coeff(n))


@pytest.mark.parametrize("M", fundamental_domain(2), ids=str)
def test_deformed_domains_count_paths_and_pairs(M):
    G = build_gamma(M)
    for n in range(1, 4):
        assert LaurentPoly.coerce(count_tilings(deformed_domain(M, n))) == \
            LaurentPoly.coerce(path_weight_sum(G, n))
        assert LaurentPoly.coerce(count_tilings(deformed_domain(M, n, alpha=2))) == \
            LaurentPoly.coerce(family_sum(enumerate_families(M, 2, n)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_tiling_path_round_trip(n):
    D = indented_halved_aztec(n + 1, 2)
    for t in enumerate_tilings(D):
        paths = tiling_to_path(t, D)
        back = path_to_tiling(paths, D)
        assert back.tiles == t.tiles
        assert back.weight == t.weight


def test_diamond_weights_sum_to_the_solution():
    for a, r in [(3, 5), (3, 6), (4, 6), (4, 7)]:
        ws = ref.diamond_3_weights(a, r)
        total = sum(ws, LaurentPoly.zero())
        assert total == evolve(QState(zero_path(r)), a, 3)


def test_printed_diamond_weight_breaks_the_sum():
    ws = ref.diamond_3_weights(3, 5, corrected=False)
    assert sum(ws, LaurentPoly.zero()) != evolve(QState(zero_path(5)), 3, 3)


def test_svg_output():
    D = halved_aztec(2, ones_moves())
    svg = tiling_svg(enumerate_tilings(D)[0], D)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
