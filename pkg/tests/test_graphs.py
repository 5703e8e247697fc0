import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qsys import enumeration as en
from qsys.graphs import (build_Gr, build_gamma, build_heap_graph, conserved_equals_hard_particles,
                         gr_recursion_Z, hard_particle_Z, skeleton_path, skeleton_tree)
from qsys.motzkin import fundamental_domain, max_path, zero_path
from qsys.qsystem import QState


def brute_independent(G, weights):
    """Graded independent-set sums by checking every subset."""
    graded = {}
    for k in range(len(G.vertices) + 1):
        for sub in itertools.combinations(G.vertices, k):
            if any(G.adjacent(a, b) for a, b in itertools.combinations(sub, 2)):
                continue
            term = 1
            for v in sub:
                term *= weights[v]
            graded[k] = graded.get(k, 0) + term
    return [graded.get(k, 0) for k in range(max(graded) + 1)]


@given(st.integers(1, 4).flatmap(lambda r: st.tuples(
    st.just(r), st.lists(st.fractions(Fraction(1, 4), 4), min_size=2 * r + 1, max_size=2 * r + 1))))
@settings(max_examples=40)
def test_gr_recursion_matches_brute_force(case):
    r, ys = case
    y = [None] + ys
    G = build_Gr(r, weights=y)
    brute = brute_independent(G, G.weights)
    rec = gr_recursion_Z(r, y)
    rec = rec[:len(brute)] if len(rec) > len(brute) else rec
    assert [Fraction(x) for x in rec] == [Fraction(x) for x in brute]
    assert [Fraction(x) for x in hard_particle_Z(G, by_count=True)] == [Fraction(x) for x in brute]


@pytest.mark.parametrize("r", [1, 2, 3])
def test_conserved_quantities_are_hard_particle_sums(r):
    for M in fundamental_domain(r):
        assert conserved_equals_hard_particles(QState(M))


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_skeleton_trees_count(r):
    shapes = {skeleton_tree(M).shape() for M in fundamental_domain(r)}
    assert len(shapes) == 2 ** (r - 1)
    # the skeleton path never descends
    for M in fundamental_domain(r):
        v = skeleton_path(M).values
        assert all(b >= a for a, b in zip(v, v[1:]))


@pytest.mark.parametrize("r", [1, 2, 3])
def test_target_graph_edge_counts(r):
    for M in fundamental_domain(r):
        G = build_gamma(M)
        assert len(G.skeleton_edges) == 2 * r + 1
        assert G.skeleton().long_edges == []


@pytest.mark.parametrize("M", [zero_path(3), max_path(3)] + fundamental_domain(2), ids=str)
def test_heap_denominator_clears_the_series(M):
    """The all-ones series times sum_k (-t)^k #independent k-sets is a polynomial."""
    H = build_heap_graph(M, [None] + [1] * (2 * M.r + 1))
    D = en.coeffs(en.denominator_polynomial(M), 41)
    brute = [(-1) ** k * c for k, c in enumerate(brute_independent(H, H.weights))]
    assert D == brute + [0] * (41 - len(brute))
    F = en.all_ones_series(M, 40)
    prod = [sum(D[i] * F[k - i] for i in range(k + 1)) for k in range(41)]
    assert all(c == 0 for c in prod[len(H.vertices) + 1:])


def test_graph_exports():
    G = build_gamma(zero_path(2))
    assert G.to_dot().startswith("digraph")
    assert set(G.to_json_obj()) == {"vertices", "asc", "desc"}
    H = build_heap_graph(zero_path(2))
    assert H.to_dot().startswith("graph heap")
