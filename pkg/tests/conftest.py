import itertools

import numpy as np
import pytest

from lingames.constructions import binary_game, rudin_game
from lingames.core import GameMatrix, chsh, zero_game


def brute_beta(m: GameMatrix) -> int:
    """Contradiction number by enumerating every (r, c) pair; no gauge, no decoupling."""
    d, k = m.d, m.k
    best = 0
    for r in itertools.product(range(d), repeat=m.n_a):
        for c in itertools.product(range(d), repeat=m.n_b):
            won = sum(1 for i in range(m.n_a) for j in range(m.n_b)
                      if (k[i][j] + r[i] + c[j]) % d == 0)
            best = max(best, won)
    return m.n_a * m.n_b - best


def brute_chromatic(adj) -> int:
    """Smallest k admitting a proper k-colouring, by plain backtracking."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    nbrs = [np.flatnonzero(adj[v]).tolist() for v in range(n)]

    def colourable(k):
        col = [-1] * n

        def go(v):
            if v == n:
                return True
            for c in range(k):
                if all(col[u] != c for u in nbrs[v]):
                    col[v] = c
                    if go(v + 1):
                        return True
            col[v] = -1
            return False

        return go(0)

    k = 1 if n else 0
    while n and not colourable(k):
        k += 1
    return k


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose per-phase reports so fixtures can see whether the test passed
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


D6_EXAMPLE = GameMatrix([[0, 0, 0], [0, 1, 3], [0, 4, 5]], 6)


@pytest.fixture(scope="session")
def corpus():
    """Games reused across modules: named constructions plus seeded random ones."""
    rng = np.random.default_rng(20240601)
    games = {
        "chsh": chsh(),
        "zero-2x3-d4": zero_game(2, 3, 4),
        "d6-example": D6_EXAMPLE,
        "binary-2x3": binary_game(2, 3),
        "binary-3x3": binary_game(3, 3),
        "binary-3x4": binary_game(3, 4),
        "rudin-3-2": rudin_game(3, 2),
        "rudin-3-3": rudin_game(3, 3),
    }
    for t in range(12):
        n_a, n_b = int(rng.integers(2, 4)), int(rng.integers(2, 4))
        d = int(rng.integers(2, 9))
        games[f"random-{t}"] = GameMatrix(rng.integers(0, d, size=(n_a, n_b)).tolist(), d)
    return games
