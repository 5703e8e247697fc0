import itertools

import pytest
from hypothesis import given, strategies as st

from qsys.errors import IllegalMove, NotMotzkin
from qsys.motzkin import (MotzkinPath, apply_move, descending_path, forward_move, fundamental_domain,
                          has_rearrangement_move, is_motzkin, max_path, move_kind, mutation_graph,
                          mutation_sequence, reflect, sequence_paths, translate, zero_path)


def brute_domain(r):
    return sorted(MotzkinPath(v) for v in itertools.product(range(r), repeat=r)
                  if min(v) == 0 and all(abs(a - b) <= 1 for a, b in zip(v, v[1:])))


@pytest.mark.parametrize("r", [1, 2, 3, 4, 5])
def test_fundamental_domain_matches_brute_force(r):
    dom = fundamental_domain(r)
    assert dom == brute_domain(r)
    assert len(dom) == 3 ** (r - 1)


def test_parse_and_validation():
    assert MotzkinPath.parse("0, 1,1") == MotzkinPath.of(0, 1, 1)
    with pytest.raises(NotMotzkin):
        MotzkinPath.parse("0,2")
    with pytest.raises(NotMotzkin):
        MotzkinPath.parse("a,b")
    with pytest.raises(NotMotzkin):
        MotzkinPath(())


def test_named_paths():
    assert max_path(4).values == (0, 1, 2, 3)
    assert descending_path(3).values == (2, 1, 0)
    assert zero_path(2).seed_vars()[1].level == 1


motzkin = st.integers(1, 5).flatmap(
    lambda r: st.lists(st.sampled_from((-1, 0, 1)), min_size=r - 1, max_size=r - 1)
).map(lambda steps: MotzkinPath(tuple(itertools.accumulate([0] + steps))))


@given(motzkin, st.integers(-3, 3))
def test_translate_and_reflect(M, k):
    assert is_motzkin(translate(M, k).values)
    assert reflect(reflect(M)) == M
    assert translate(translate(M, k), -k) == M


@given(motzkin)
def test_canonical_sequence_reaches_path(M):
    M = translate(M, -min(M.values))
    cur = zero_path(M.r)
    for mv in mutation_sequence(M):
        cur = apply_move(cur, mv)
    assert cur == M
    assert sequence_paths(M)[-1] == M
    assert len(mutation_sequence(M)) == sum(M.values)


def test_illegal_moves():
    M = MotzkinPath.of(0, 0)
    with pytest.raises(IllegalMove):
        apply_move(MotzkinPath.of(0, 1), forward_move(MotzkinPath.of(0, 1), 2))
    mv = forward_move(M, 1)
    assert apply_move(M, mv) == MotzkinPath.of(1, 0)


def test_move_kinds():
    assert move_kind(zero_path(3), 3) == "a"
    assert move_kind(zero_path(3), 2) == "b"
    assert move_kind(MotzkinPath.of(0, 0, 1), 2) == "a"
    assert not has_rearrangement_move(MotzkinPath.of(1, 0, 0), 2)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_mutation_graph_edges_stay_in_domain(r):
    dom = set(fundamental_domain(r))
    for M, alpha, N in mutation_graph(r):
        assert M in dom and N in dom
        assert N.m(alpha) == M.m(alpha) + 1
