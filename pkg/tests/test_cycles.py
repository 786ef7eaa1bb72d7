import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import D6_EXAMPLE
from lingames.classical import contradiction_number, ones_under
from lingames.constructions import binary_game, rudin_game, verify_sum_property
from lingames.core import GameMatrix, apply_moves, chsh, standard_form, zero_game
from lingames.cycles import (
    Cycle,
    GameGraph,
    build_h,
    build_h_opt,
    certify_max_contradictions,
    connect_completion,
    cycle_count,
    cycle_gauge,
    cycle_imbalance,
    enumerate_cycles,
    graph_stats,
    is_good_cycle,
    short_cycle_certificate,
    subset_sum_certificate,
)
from test_core import games


def to_nx(g: GameGraph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n_a + g.n_b))
    h.add_edges_from((i, g.n_a + j) for i, j in g.edges)
    return h


def simple_cycles_oracle(n_a, n_b, max_len):
    """Cycles of K_{n_a,n_b} as undirected edge sets, via networkx."""
    k = nx.complete_bipartite_graph(n_a, n_b)
    out = set()
    for c in nx.simple_cycles(k, length_bound=max_len):
        if len(c) >= 4:
            out.add(frozenset(frozenset(e) for e in zip(c, c[1:] + c[:1])))
    return out


def cycle_edges(c: Cycle, n_a):
    return frozenset(frozenset((i, n_a + j)) for i, j in c.entries())


@pytest.mark.parametrize("n_a,n_b,max_len,count", [(2, 2, 4, 1), (3, 3, 6, 15), (2, 3, 4, 3)])
def test_cycle_counts(n_a, n_b, max_len, count):
    assert len(list(enumerate_cycles(n_a, n_b, max_len))) == count
    assert cycle_count(n_a, n_b, max_len) == count


@pytest.mark.parametrize("n_a,n_b,max_len", [(3, 3, 6), (3, 4, 6), (4, 4, 8), (4, 3, 4), (2, 5, 4)])
def test_enumeration_matches_networkx(n_a, n_b, max_len):
    ours = [cycle_edges(c, n_a) for c in enumerate_cycles(n_a, n_b, max_len)]
    assert len(ours) == len(set(ours))
    assert set(ours) == simple_cycles_oracle(n_a, n_b, max_len)
    assert cycle_count(n_a, n_b, max_len) == len(ours)


def test_enumeration_deterministic():
    a = list(enumerate_cycles(3, 4, 6))
    assert a == list(enumerate_cycles(3, 4, 6))
    assert all(c.rows[0] == min(c.rows) and c.cols[0] < c.cols[-1] for c in a)
    with pytest.raises(ValueError):
        list(enumerate_cycles(3, 3, 2))


def test_cycle_validation():
    with pytest.raises(ValueError):
        Cycle((0, 0), (1, 2))
    with pytest.raises(ValueError):
        Cycle((0,), (1,))
    with pytest.raises(IndexError):
        is_good_cycle(chsh(), Cycle((0, 2), (0, 1)))


def test_good_cycle_examples():
    for a in range(5):
        assert is_good_cycle(GameMatrix([[0, 0], [a, a]], 5), Cycle((0, 1), (0, 1)))
    assert not is_good_cycle(chsh(), Cycle((0, 1), (0, 1)))
    assert is_good_cycle(D6_EXAMPLE, Cycle((0, 1, 2), (2, 1, 0)))


@settings(max_examples=80, deadline=None)
@given(games(max_n=3, max_d=7), st.data())
def test_good_cycles_are_attainable(m, data):
    cycles = list(enumerate_cycles(m.n_a, m.n_b, 2 * min(m.n_a, m.n_b)))
    c = data.draw(st.sampled_from(cycles))
    if is_good_cycle(m, c):
        assert set(c.entries()) <= ones_under(m, cycle_gauge(m, c))
    else:
        assert cycle_imbalance(m, c) != 0
        with pytest.raises(ValueError):
            cycle_gauge(m, c)


def test_certificate_examples():
    assert certify_max_contradictions(binary_game(3, 4)).maximal
    cert = certify_max_contradictions(zero_game(3, 3, 4))
    assert cert.verdict == "good-cycle-found" and cert.good_cycle.length == 4
    for n in (2, 3, 4):
        assert certify_max_contradictions(rudin_game(n, n)).maximal


@settings(max_examples=120, deadline=None)
@given(games(max_n=3, max_d=7))
def test_certificate_agrees_with_solver(m):
    cert = certify_max_contradictions(m)
    r = contradiction_number(m)
    maximal = r.beta_c == (m.n_a - 1) * (m.n_b - 1)
    assert cert.maximal == maximal
    if not maximal:
        assert is_good_cycle(m, cert.good_cycle)
    stats = graph_stats(build_h_opt(m, r))
    assert stats.is_connected
    assert stats.edges >= m.n_a + m.n_b - 1
    assert stats.is_tree == maximal


@settings(max_examples=60, deadline=None)
@given(games(max_n=3, max_d=9))
def test_maximal_standard_forms_have_distinct_entries(m):
    s, _ = standard_form(m)
    if certify_max_contradictions(s).maximal:
        free = [s.k[i][j] for i in range(1, s.n_a) for j in range(1, s.n_b)]
        assert 0 not in free and len(set(free)) == len(free)


def test_short_cycle_certificate_is_weaker():
    m = rudin_game(3, 2)
    assert short_cycle_certificate(m, 2).maximal
    assert short_cycle_certificate(m, 2).max_len == 4


def test_subset_sum_examples():
    assert verify_sum_property([2, 4, 8, 16, 32, 64], 3, "disjoint", modulus=128).passed
    assert verify_sum_property([0, 1, 2], 2, "disjoint", modulus=10**9).passed
    assert not subset_sum_certificate(GameMatrix([[0, 1], [1, 2]], 7), 1).passed
    with pytest.raises(ValueError):
        subset_sum_certificate(chsh(), 3)


@settings(max_examples=60, deadline=None)
@given(games(max_n=3, max_d=40), st.integers(1, 3))
def test_subset_sum_pass_implies_girth(m, s):
    s = min(s, m.n_a, m.n_b)
    if subset_sum_certificate(m, s).passed:
        g = graph_stats(build_h_opt(m, contradiction_number(m))).girth
        assert g is None or g > 2 * s
        assert short_cycle_certificate(m, s).maximal


def test_build_h_examples():
    full = build_h(zero_game(2, 3, 3))
    assert len(full.edges) == 6
    assert len(build_h(chsh()).edges) == 3
    s, _ = standard_form(GameMatrix([[3, 1, 4], [1, 5, 9], [2, 6, 5]], 10))
    star = {(0, j) for j in range(3)} | {(i, 0) for i in range(3)}
    assert star <= build_h(s).edges


def test_build_h_opt_examples():
    b = binary_game(3, 4)
    st_ = graph_stats(build_h_opt(b, contradiction_number(b)))
    assert st_.edges == 6 and st_.is_tree
    st_ = graph_stats(build_h_opt(D6_EXAMPLE, contradiction_number(D6_EXAMPLE)))
    assert st_.edges == 6 and st_.girth == 6
    z = zero_game(3, 3, 5)
    assert len(build_h_opt(z, contradiction_number(z)).edges) == 9


def test_build_h_opt_stale_witness():
    r = contradiction_number(D6_EXAMPLE)
    with pytest.raises(ValueError):
        build_h_opt(GameMatrix([[1, 0, 0], [0, 1, 3], [0, 4, 5]], 6), r)


def test_graph_stats_examples():
    k22 = graph_stats(GameGraph(2, 2, frozenset(itertools.product(range(2), range(2)))))
    assert (k22.edges, k22.girth, k22.is_connected, k22.is_tree) == (4, 4, True, False)
    star = GameGraph(3, 3, frozenset({(0, 0), (0, 1), (0, 2), (1, 0), (2, 0)}))
    s = graph_stats(star)
    assert s.girth is None and s.is_tree
    m = rudin_game(3, 2)
    assert graph_stats(build_h_opt(m, contradiction_number(m))).girth in (None, 6)


@settings(max_examples=80, deadline=None)
@given(games(max_n=4, max_d=3))
def test_graph_stats_match_networkx(m):
    g = build_h(m)
    ours = graph_stats(g)
    h = to_nx(g)
    ref = nx.girth(h)
    assert ours.girth == (None if ref == math.inf else ref)
    assert ours.components == nx.number_connected_components(h)
    assert ours.is_tree == nx.is_tree(h)


def test_connect_completion_examples():
    m = GameMatrix([[0, 0], [0, 0]], 3)
    assert connect_completion(m) == (m, [])
    out, moves = connect_completion(GameMatrix([[0, 1], [1, 0]], 2))
    assert apply_moves(GameMatrix([[0, 1], [1, 0]], 2), moves) == out
    stats = graph_stats(build_h(out))
    assert stats.is_connected
    assert {(0, 0), (1, 1)} <= build_h(out).edges
    # both diagonals are already zero, so multiplying one side lands on all-zero
    assert stats.edges == 4
    empty = GameMatrix([[1, 2, 3], [4, 5, 6]], 7)
    out, moves = connect_completion(empty)
    assert graph_stats(build_h(out)).is_connected
    # at most n_a + n_b - 1 rounds, each touching at most n_a + n_b lines
    assert len(moves) <= (empty.n_a + empty.n_b - 1) * (empty.n_a + empty.n_b)


@settings(max_examples=100, deadline=None)
@given(games(max_n=4, max_d=7))
def test_connect_completion_property(m):
    out, moves = connect_completion(m)
    assert apply_moves(m, moves) == out
    assert build_h(m).edges <= build_h(out).edges
    assert graph_stats(build_h(out)).is_connected
