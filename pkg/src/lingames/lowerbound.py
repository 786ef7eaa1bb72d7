"""How many outputs does an ``n x n`` game need for maximal contradictions?

Every cycle of ``K_{n,n}`` comes from a pair of permutations ``pi_1, pi_2``
whose quotient ``pi_1 pi_2^{-1}`` is a single cycle.  If the game has no good
cycle, the permutation sums ``sum_j k[j][pi(j)] mod d`` colour the graph
``G_n`` on ``S_n`` (adjacent = quotient is cyclic) properly, so ``d`` is at
least ``chi(G_n)``.  Distinctness of the free block adds the floor
``(n-1)^2 + 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from lingames.classical import contradiction_number_naive
from lingames.core import GameMatrix
from lingames.errors import BudgetExceeded

DEFAULT_GN_CAP = 5


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

def compose(p, q):
    """``(p o q)(i) = p[q[i]]``."""
    return tuple(p[i] for i in q)


def inverse(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def is_cyclic(p) -> bool:
    """True iff ``p`` is a single cycle of length >= 2 (other points fixed)."""
    moved = [i for i, v in enumerate(p) if v != i]
    if not moved:
        return False
    start = moved[0]
    length, i = 1, p[start]
    while i != start:
        length += 1
        i = p[i]
    return length == len(moved)


def cyclic_count(n: int) -> int:
    """Number of cyclic permutations of ``n`` points, the degree of ``G_n``."""
    return sum(math.factorial(n) // (math.factorial(n - i) * i) for i in range(2, n + 1))


@dataclass
class PermGraph:
    n: int
    vertices: list
    adjacency: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    def degrees(self):
        return self.adjacency.sum(axis=1)


def build_gn(n: int, cap: int = DEFAULT_GN_CAP) -> PermGraph:
    if n < 2:
        raise ValueError("n must be >= 2")
    if n > cap:
        raise BudgetExceeded(f"G_{n} has {math.factorial(n)} vertices; cap is n <= {cap}",
                             {"n": n, "cap": cap})
    verts = list(itertools.permutations(range(n)))
    index = {p: t for t, p in enumerate(verts)}
    cyclic = [p for p in verts if is_cyclic(p)]
    adj = np.zeros((len(verts), len(verts)), dtype=bool)
    for t, p2 in enumerate(verts):
        # p1 = c o p2 for every cyclic c gives p1 o p2^{-1} = c
        for c in cyclic:
            adj[index[compose(c, p2)], t] = True
    return PermGraph(n, verts, adj)


# ---------------------------------------------------------------------------
# cliques and colourings on small dense graphs (bitset based)
# ---------------------------------------------------------------------------

def _adjacency(g) -> np.ndarray:
    adj = g.adjacency if isinstance(g, PermGraph) else g
    adj = np.asarray(adj, dtype=bool)
    if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
        raise ValueError("adjacency must be square")
    return adj


def _bitsets(adj):
    out = []
    for row in adj:
        b = 0
        for j in np.flatnonzero(row):
            b |= 1 << int(j)
        out.append(b)
    return out


def _bits(b):
    while b:
        low = b & -b
        yield low.bit_length() - 1
        b ^= low


def max_clique(adj, budget: int = 10**7):
    """Exact maximum clique (branch and bound with greedy colouring bounds).

    Returns a sorted list of vertices.
    """
    adj = np.asarray(adj, dtype=bool)
    nbrs = _bitsets(adj)
    n = len(nbrs)
    best = [0, 0]
    nodes = [0]

    def colour_sort(P):
        order, bounds = [], []
        colour = 0
        Q = P
        while Q:
            colour += 1
            avail = Q
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~nbrs[v] & ~(1 << v)
                Q &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(R, size, P):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded("clique search exceeded its node budget",
                                 {"nodes": nodes[0], "best": best[0]})
        order, bounds = colour_sort(P)
        for t in range(len(order) - 1, -1, -1):
            if size + bounds[t] <= best[0]:
                return
            v = order[t]
            newP = P & nbrs[v]
            if newP:
                expand(R | 1 << v, size + 1, newP)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, R | 1 << v
            P &= ~(1 << v)

    if n:
        expand(0, 0, (1 << n) - 1)
    return sorted(_bits(best[1]))


def independence_set(adj, budget: int = 10**7):
    adj = np.asarray(adj, dtype=bool)
    comp = ~adj
    np.fill_diagonal(comp, False)
    return max_clique(comp, budget)


def dsatur_coloring(adj):
    """Greedy DSATUR colouring; returns a colour list."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    nbrs = [np.flatnonzero(adj[v]).tolist() for v in range(n)]
    colours = [-1] * n
    sat = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if colours[u] < 0),
                key=lambda u: (len(sat[u]), len(nbrs[u]), -u))
        c = 0
        while c in sat[v]:
            c += 1
        colours[v] = c
        for u in nbrs[v]:
            sat[u].add(c)
    return colours


def is_proper(adj, colours) -> bool:
    adj = np.asarray(adj, dtype=bool)
    i, j = np.nonzero(adj)
    c = np.asarray(colours)
    return bool(np.all(c[i] != c[j])) and bool(np.all(c >= 0))


@dataclass(frozen=True)
class ChromaticBounds:
    clique_bound: int
    independence_bound: int
    hoffman_bound: int
    clique: tuple
    independence_number: int
    hoffman_value: float
    lambda_max: float
    lambda_min: float

    def to_obj(self):
        return {
            "clique_bound": self.clique_bound,
            "independence_bound": self.independence_bound,
            "hoffman_bound": self.hoffman_bound,
            "independence_number": self.independence_number,
            "hoffman_value": self.hoffman_value,
            "lambda_max": self.lambda_max,
            "lambda_min": self.lambda_min,
        }


def chromatic_bounds(g, budget: int = 10**7) -> ChromaticBounds:
    adj = _adjacency(g)
    n = adj.shape[0]
    clique = max_clique(adj, budget)
    alpha = len(independence_set(adj, budget))
    eig = np.linalg.eigvalsh(adj.astype(float))
    lmax, lmin = float(eig[-1]), float(eig[0])
    if lmin < 0:
        hoff = 1.0 + lmax / abs(lmin)
        hoff_int = math.ceil(hoff - 1e-9)
    else:  # edgeless graph
        hoff, hoff_int = 1.0, 1
    return ChromaticBounds(
        clique_bound=len(clique),
        independence_bound=-(-n // alpha),
        hoffman_bound=hoff_int,
        clique=tuple(clique),
        independence_number=alpha,
        hoffman_value=hoff,
        lambda_max=lmax,
        lambda_min=lmin,
    )


@dataclass(frozen=True)
class ChromaticResult:
    exact: bool
    lower: int
    upper: int
    coloring: tuple
    nodes: int

    @property
    def chi(self) -> Optional[int]:
        return self.upper if self.exact else None

    def to_obj(self):
        return {"exact": self.exact, "chi": self.chi, "lower": self.lower,
                "upper": self.upper, "nodes": self.nodes}


def exact_chromatic(g, budget: int = 10**6, lower: Optional[int] = None) -> ChromaticResult:
    """Chromatic number by DSATUR branch and bound.

    Seeded with the clique lower bound (or ``lower``) and the greedy DSATUR
    upper bound.  When the node budget runs out the verified interval is
    returned with ``exact=False``.
    """
    adj = _adjacency(g)
    n = adj.shape[0]
    if n == 0:
        return ChromaticResult(True, 0, 0, (), 0)
    if lower is None:
        lower = len(max_clique(adj))
    best = dsatur_coloring(adj)
    upper = max(best) + 1
    if upper <= lower:
        return ChromaticResult(True, upper, upper, tuple(best), 0)

    nbrs = [np.flatnonzero(adj[v]).tolist() for v in range(n)]
    deg = [len(x) for x in nbrs]
    colours = [-1] * n
    # count[v][c] = neighbours of v currently wearing colour c
    count = [[0] * n for _ in range(n)]
    sat = [0] * n
    state = {"upper": upper, "best": best, "nodes": 0}

    def assign(v, c, sign):
        for u in nbrs[v]:
            row = count[u]
            if sign > 0:
                row[c] += 1
                if row[c] == 1:
                    sat[u] += 1
            else:
                row[c] -= 1
                if row[c] == 0:
                    sat[u] -= 1

    def search(coloured, used):
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise _OutOfBudget
        if coloured == n:
            state["upper"] = used
            state["best"] = list(colours)
            return used <= lower
        v = -1
        key = None
        for u in range(n):
            if colours[u] < 0:
                ku = (sat[u], deg[u], -u)
                if key is None or ku > key:
                    key, v = ku, u
        for c in range(min(used + 1, state["upper"] - 1)):
            if count[v][c]:
                continue
            colours[v] = c
            assign(v, c, +1)
            done = search(coloured + 1, max(used, c + 1))
            assign(v, c, -1)
            colours[v] = -1
            if done:
                return True
        return False

    try:
        search(0, 0)
        exact = True
    except _OutOfBudget:
        exact = False
    upper = state["upper"]
    return ChromaticResult(exact, upper if exact else lower, upper,
                           tuple(state["best"]), state["nodes"])


class _OutOfBudget(Exception):
    pass


def lower_bound_report(n: int, exact: bool = True, cap: int = DEFAULT_GN_CAP,
                       chi_budget: int = 10**6) -> dict:
    g = build_gn(n, cap)
    cb = chromatic_bounds(g)
    floor = (n - 1) ** 2 + 1
    parts = {
        "clique_bound": cb.clique_bound,
        "independence_bound": cb.independence_bound,
        "hoffman_bound": cb.hoffman_bound,
        "distinctness_floor": floor,
    }
    chi = None
    if exact:
        seed = max(cb.clique_bound, cb.independence_bound, cb.hoffman_bound)
        chi = exact_chromatic(g, chi_budget, lower=seed)
        parts["chromatic_lower"] = chi.lower
    value = max(parts.values())
    report = {
        "n": n,
        "vertices": g.order,
        "degree": int(g.degrees()[0]),
        "bounds": parts,
        "lower_bound": value,
        "chromatic": chi.to_obj() if chi else None,
        "spectrum": {"lambda_max": cb.lambda_max, "lambda_min": cb.lambda_min},
    }
    return report


def min_outputs_lower_bound(n: int, exact: bool = True, cap: int = DEFAULT_GN_CAP) -> int:
    return lower_bound_report(n, exact, cap)["lower_bound"]


# ---------------------------------------------------------------------------
# permutation sums as a maximality certificate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermutationVerdict:
    passed: bool
    pair: Optional[tuple]  # two permutations with equal sums and cyclic quotient
    permutations: int

    def to_obj(self):
        return {"passed": self.passed,
                "pair": [list(p) for p in self.pair] if self.pair else None,
                "permutations": self.permutations}


def permutation_certificate(m: GameMatrix, cap: int = 7) -> PermutationVerdict:
    """Check that permutation sums differ across every edge of ``G_n``.

    Passing is equivalent to having no good cycle, i.e. maximal
    contradictions.
    """
    if m.n_a != m.n_b:
        raise ValueError("permutation certificate needs a square game")
    n = m.n_a
    if n > cap:
        raise BudgetExceeded(f"n = {n} exceeds the permutation cap {cap}", {"n": n, "cap": cap})
    groups = {}
    perms = list(itertools.permutations(range(n)))
    for p in perms:
        total = sum(m.k[j][p[j]] for j in range(n)) % m.d
        groups.setdefault(total, []).append(p)
    for same in groups.values():
        for p1, p2 in itertools.combinations(same, 2):
            if is_cyclic(compose(p1, inverse(p2))):
                return PermutationVerdict(False, (p1, p2), len(perms))
    return PermutationVerdict(True, None, len(perms))


# ---------------------------------------------------------------------------
# exhaustive search for the smallest modulus
# ---------------------------------------------------------------------------

def _block_images(block, n):
    """Free-block images under row/column permutations and transposition."""
    size = n - 1
    mat = [block[i * size:(i + 1) * size] for i in range(size)]
    mats = [mat, [list(r) for r in zip(*mat)]]
    for base in mats:
        for rp in itertools.permutations(range(size)):
            for cp in itertools.permutations(range(size)):
                yield tuple(base[rp[i]][cp[j]] for i in range(size) for j in range(size))


def is_canonical_block(block, n) -> bool:
    block = tuple(block)
    return all(block <= img for img in _block_images(block, n))


def block_game(block, n, d) -> GameMatrix:
    size = n - 1
    k = [[0] * n]
    for i in range(size):
        k.append([0] + list(block[i * size:(i + 1) * size]))
    return GameMatrix(k, d)


@dataclass(frozen=True)
class MinDResult:
    n: int
    d_max: int
    d_min: Optional[int]
    witness: Optional[GameMatrix]
    checked: dict  # d -> candidates evaluated by the solver
    reduced: bool

    @property
    def found(self) -> bool:
        return self.d_min is not None


def exhaustive_min_d(n: int, d_max: int, budget: int = 10**9,
                     reduce_symmetry: bool = True) -> MinDResult:
    """Least ``d <= d_max`` admitting an ``n x n`` game with ``(n-1)^2`` contradictions.

    Sweeps standard-form free blocks in lexicographic order (keeping only the
    lexicographically smallest representative of each row/column-permutation
    and transposition class when ``reduce_symmetry``) and runs the exhaustive
    solver on each.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    target = (n - 1) ** 2
    spent = 0
    checked = {}
    for d in range(2, d_max + 1):
        checked[d] = 0
        per_call = d ** (n - 1) * n * n
        for block in itertools.product(range(d), repeat=target):
            if reduce_symmetry and not is_canonical_block(block, n):
                continue
            spent += per_call
            if spent > budget:
                raise BudgetExceeded(
                    f"min-d sweep exhausted its budget at d = {d}",
                    {"d": d, "checked": dict(checked), "spent": spent, "budget": budget},
                )
            checked[d] += 1
            m = block_game(block, n, d)
            res = contradiction_number_naive(m, budget=per_call)
            if res.beta_c == target:
                return MinDResult(n, d_max, d, m, checked, reduce_symmetry)
    return MinDResult(n, d_max, None, None, checked, reduce_symmetry)
