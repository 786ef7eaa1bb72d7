import itertools
import math

import networkx as nx
import numpy as np
import pytest

from conftest import brute_chromatic
from lingames.classical import contradiction_number_naive
from lingames.constructions import binary_game, rudin_game
from lingames.core import random_game, zero_game
from lingames.cycles import certify_max_contradictions
from lingames.errors import BudgetExceeded
from lingames.lowerbound import (
    block_game,
    build_gn,
    chromatic_bounds,
    compose,
    cyclic_count,
    exact_chromatic,
    exhaustive_min_d,
    inverse,
    is_canonical_block,
    is_cyclic,
    is_proper,
    lower_bound_report,
    max_clique,
    min_outputs_lower_bound,
    permutation_certificate,
)


def cycle_type(p):
    seen, lengths = set(), []
    for s in range(len(p)):
        if s in seen:
            continue
        n, i = 0, s
        while i not in seen:
            seen.add(i)
            i = p[i]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def test_is_cyclic_matches_cycle_type():
    for n in range(1, 6):
        for p in itertools.permutations(range(n)):
            t = [c for c in cycle_type(p) if c > 1]
            assert is_cyclic(p) == (len(t) == 1)


def test_gn_examples():
    g3 = build_gn(3)
    assert g3.order == 6
    assert g3.adjacency.sum() == 30 and not g3.adjacency.diagonal().any()
    g4 = build_gn(4)
    assert g4.order == 24 and set(g4.degrees()) == {20}
    g2 = build_gn(2)
    assert g2.adjacency.tolist() == [[False, True], [True, False]]
    assert g4.vertices == sorted(g4.vertices)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_gn_structure(n):
    g = build_gn(n)
    adj = g.adjacency
    assert (adj == adj.T).all()
    assert set(g.degrees()) == {cyclic_count(n)}
    assert cyclic_count(n) == sum(math.factorial(n) // (math.factorial(n - i) * i) for i in range(2, n + 1))
    # spot-check the relation against the definition
    rng = np.random.default_rng(n)
    for _ in range(200):
        a, b = rng.integers(0, g.order, 2)
        p1, p2 = g.vertices[a], g.vertices[b]
        assert adj[a, b] == is_cyclic(compose(p1, inverse(p2)))


def test_gn_cap():
    with pytest.raises(BudgetExceeded):
        build_gn(6)
    with pytest.raises(ValueError):
        build_gn(1)


def test_chromatic_bounds_examples():
    b3 = chromatic_bounds(build_gn(3))
    assert (b3.clique_bound, b3.hoffman_bound, b3.independence_bound) == (6, 6, 6)
    b4 = chromatic_bounds(build_gn(4))
    assert b4.independence_number == 4 and b4.independence_bound == 6
    assert b4.lambda_max == pytest.approx(20)


def test_g4_is_complete_multipartite():
    # six independent 4-sets, all cross pairs adjacent
    g = build_gn(4)
    comp = ~g.adjacency
    np.fill_diagonal(comp, False)
    h = nx.from_numpy_array(comp.astype(int))
    parts = [sorted(c) for c in nx.connected_components(h)]
    assert sorted(len(p) for p in parts) == [4] * 6
    assert all(nx.density(h.subgraph(p)) == 1 for p in parts)


@pytest.mark.parametrize("seed", range(15))
def test_clique_and_chromatic_match_oracles(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(4, 11))
    adj = rng.random((n, n)) < rng.uniform(0.2, 0.8)
    adj = np.triu(adj, 1)
    adj = adj | adj.T
    h = nx.from_numpy_array(adj.astype(int))
    omega = max(len(c) for c in nx.find_cliques(h))
    clique = max_clique(adj)
    assert len(clique) == omega
    assert all(adj[a, b] for a, b in itertools.combinations(clique, 2))
    chi = exact_chromatic(adj)
    assert chi.exact and chi.chi == brute_chromatic(adj)
    assert is_proper(adj, chi.coloring) and max(chi.coloring) + 1 == chi.chi
    cb = chromatic_bounds(adj)
    assert max(cb.clique_bound, cb.independence_bound, cb.hoffman_bound) <= chi.chi


def test_exact_chromatic_examples():
    k6 = exact_chromatic(build_gn(3))
    assert k6.chi == 6
    g4 = exact_chromatic(build_gn(4))
    assert g4.chi == 6 and is_proper(build_gn(4).adjacency, g4.coloring)
    c5 = nx.to_numpy_array(nx.cycle_graph(5)).astype(bool)
    assert exact_chromatic(c5).chi == 3


def test_exact_chromatic_budget_interval():
    # Mycielski graph: clique 2, chromatic 4; a tiny budget cannot close the gap
    m = nx.to_numpy_array(nx.mycielski_graph(4)).astype(bool)
    r = exact_chromatic(m, budget=3, lower=2)
    assert not r.exact and r.chi is None
    assert r.lower <= 4 <= r.upper
    assert exact_chromatic(m).chi == 4


def test_min_outputs_examples():
    assert min_outputs_lower_bound(2) == 2
    assert min_outputs_lower_bound(3) == 6
    assert min_outputs_lower_bound(4) == 10
    rep = lower_bound_report(4, exact=False)
    assert rep["bounds"]["distinctness_floor"] == 10 and rep["chromatic"] is None


def test_permutation_certificate_examples():
    assert permutation_certificate(rudin_game(3, 3)).passed
    z = permutation_certificate(zero_game(3, 3, 5))
    assert not z.passed and is_cyclic(compose(z.pair[0], inverse(z.pair[1])))
    b = binary_game(3, 3)
    assert permutation_certificate(b).passed == certify_max_contradictions(b).maximal is True
    with pytest.raises(ValueError):
        permutation_certificate(binary_game(2, 3))


@pytest.mark.parametrize("seed", range(4))
def test_three_maximality_tests_agree(seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(n * n - 2 * n + 2, 14))
        m = random_game(rng, n, n, d)
        naive = contradiction_number_naive(m).beta_c == (n - 1) ** 2
        assert certify_max_contradictions(m).maximal == naive
        assert permutation_certificate(m).passed == naive


def test_canonical_blocks():
    assert is_canonical_block((1, 2, 3, 6), 3)
    assert not is_canonical_block((6, 3, 2, 1), 3)
    # each orbit has exactly one canonical member
    d = 4
    orbits = {}
    for block in itertools.product(range(d), repeat=4):
        m = block_game(block, 3, d)
        key = min(tuple(m2) for m2 in _orbit(block))
        orbits.setdefault(key, []).append(is_canonical_block(block, 3))
    assert all(sum(flags) == 1 for flags in orbits.values())


def _orbit(block):
    w, x, y, z = block
    mats = [((w, x), (y, z)), ((w, y), (x, z))]
    for a in mats:
        for rp in itertools.permutations(range(2)):
            for cp in itertools.permutations(range(2)):
                yield tuple(a[rp[i]][cp[j]] for i in range(2) for j in range(2))


def oracle_min_d(n, d_max):
    """Least d with a maximal standard form, by the cycle certificate over every block."""
    for d in range(2, d_max + 1):
        for block in itertools.product(range(d), repeat=(n - 1) ** 2):
            if certify_max_contradictions(block_game(block, n, d)).maximal:
                return d
    return None


def test_min_d_examples():
    r = exhaustive_min_d(2, 4)
    assert r.d_min == 2 == oracle_min_d(2, 4)
    assert exhaustive_min_d(3, 4).d_min is None
    assert oracle_min_d(3, 4) is None


def test_min_d_matches_oracle_and_full_sweep():
    r = exhaustive_min_d(3, 8)
    assert r.d_min == oracle_min_d(3, 8)
    assert contradiction_number_naive(r.witness).beta_c == 4
    full = exhaustive_min_d(3, 8, reduce_symmetry=False)
    assert full.d_min == r.d_min
    assert sum(full.checked.values()) > sum(r.checked.values())


def test_min_d_floor():
    for n in (2, 3):
        r = exhaustive_min_d(n, (n - 1) ** 2)
        assert not r.found


def test_min_d_budget():
    with pytest.raises(BudgetExceeded) as info:
        exhaustive_min_d(4, 10, budget=10**5)
    assert "checked" in info.value.progress


@pytest.mark.slow
def test_g5_chromatic_number():
    g = build_gn(5)
    comp = ~g.adjacency
    np.fill_diagonal(comp, False)
    _, alpha = nx.max_weight_clique(nx.from_numpy_array(comp.astype(int)), weight=None)
    assert alpha == 4
    r = exact_chromatic(g, lower=math.ceil(120 / alpha))
    assert r.exact and r.chi == 30 and is_proper(g.adjacency, r.coloring)
