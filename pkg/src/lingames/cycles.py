"""The girth method: cycles of a game matrix and certificates built on them.

A cycle is given by ordered distinct rows ``(i_1..i_l)`` and columns
``(j_1..j_l)`` and visits the entries

    (i_1,j_1), (i_2,j_1), (i_2,j_2), ..., (i_l,j_l), (i_1,j_l).

It is *good* when ``sum_t k[i_t][j_t] == sum_t k[i_{t+1}][j_t] (mod d)``;
good cycles are exactly those that some equivalent matrix turns into ones, so
a game reaches the maximal contradiction number ``(n_a-1)(n_b-1)`` iff it has
no good cycle.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from lingames.classical import ClassicalResult, ShiftAssignment, ones_under
from lingames.core import ColMult, GameMatrix, RowMult, apply_moves


@dataclass(frozen=True)
class Cycle:
    rows: tuple
    cols: tuple

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        if len(rows) != len(cols) or len(rows) < 2:
            raise ValueError("a cycle needs l >= 2 rows and l columns")
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise ValueError("cycle rows and columns must be distinct")

    @property
    def length(self) -> int:
        return 2 * len(self.rows)

    def forward_entries(self):
        """Entries ``(i_t, j_t)``."""
        return list(zip(self.rows, self.cols))

    def backward_entries(self):
        """Entries ``(i_{t+1}, j_t)``, indices cyclic."""
        rows = self.rows[1:] + self.rows[:1]
        return list(zip(rows, self.cols))

    def entries(self):
        """All 2l entries in traversal order."""
        out = []
        for f, b in zip(self.forward_entries(), self.backward_entries()):
            out += [f, b]
        return out

    def to_obj(self):
        return {"rows": list(self.rows), "cols": list(self.cols)}


def enumerate_cycles(n_a: int, n_b: int, max_len: int) -> Iterator[Cycle]:
    """Every cycle of ``K_{n_a,n_b}`` of length ``4..max_len`` exactly once.

    Canonical form: ``rows[0]`` is the smallest row and ``cols[0] < cols[-1]``.
    Order: by length, then rows, then columns, lexicographically.
    """
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    for l in range(2, min(max_len // 2, n_a, n_b) + 1):
        for rows in itertools.permutations(range(n_a), l):
            if rows[0] != min(rows):
                continue
            for cols in itertools.permutations(range(n_b), l):
                if cols[0] < cols[-1]:
                    yield Cycle(rows, cols)


def cycle_count(n_a: int, n_b: int, max_len: int) -> int:
    total = 0
    for l in range(2, min(max_len // 2, n_a, n_b) + 1):
        rows = _falling(n_a, l) // l
        cols = _falling(n_b, l) // 2
        total += rows * cols
    return total


def _falling(n, l):
    out = 1
    for t in range(l):
        out *= n - t
    return out


def _check_cycle(m: GameMatrix, c: Cycle):
    if max(c.rows) >= m.n_a or min(c.rows) < 0 or max(c.cols) >= m.n_b or min(c.cols) < 0:
        raise IndexError(f"cycle {c} out of range for a {m.n_a}x{m.n_b} game")


def cycle_imbalance(m: GameMatrix, c: Cycle) -> int:
    """Forward sum minus backward sum, mod d (zero iff good)."""
    _check_cycle(m, c)
    k = m.k
    fwd = sum(k[i][j] for i, j in c.forward_entries())
    bwd = sum(k[i][j] for i, j in c.backward_entries())
    return (fwd - bwd) % m.d


def is_good_cycle(m: GameMatrix, c: Cycle) -> bool:
    return cycle_imbalance(m, c) == 0


def cycle_gauge(m: GameMatrix, c: Cycle) -> ShiftAssignment:
    """Shifts turning every entry of a good cycle into a won entry.

    Walks the cycle as directed arcs ``i_1 -> j_1 -> i_2 -> ... -> i_1`` and
    fixes the shift at the head of each arc; the closing arc is automatically
    satisfied because the cycle is good.  Rows and columns off the cycle keep
    shift 0.
    """
    if not is_good_cycle(m, c):
        raise ValueError("cycle is not good; no gauge makes it all ones")
    d, k = m.d, m.k
    r = [0] * m.n_a
    col = [0] * m.n_b
    l = len(c.rows)
    for t in range(l):
        i, j = c.rows[t], c.cols[t]
        col[j] = (-(k[i][j] + r[i])) % d
        if t + 1 < l:
            nxt = c.rows[t + 1]
            r[nxt] = (-(k[nxt][j] + col[j])) % d
    w = ShiftAssignment(r, col).reduced(d)
    assert set(c.entries()) <= ones_under(m, w)
    return w


@dataclass(frozen=True)
class MaximalityCertificate:
    verdict: str  # "maximal" or "good-cycle-found"
    good_cycle: Optional[Cycle]
    cycles_checked: int
    max_len: int = 0

    @property
    def maximal(self) -> bool:
        return self.verdict == "maximal"

    def to_obj(self):
        return {
            "verdict": self.verdict,
            "good_cycle": self.good_cycle.to_obj() if self.good_cycle else None,
            "cycles_checked": self.cycles_checked,
            "max_len": self.max_len,
        }


def _scan(m: GameMatrix, max_len: int) -> MaximalityCertificate:
    checked = 0
    if max_len < 4:  # no cycle is that short
        return MaximalityCertificate("maximal", None, 0, max_len)
    for c in enumerate_cycles(m.n_a, m.n_b, max_len):
        checked += 1
        if is_good_cycle(m, c):
            return MaximalityCertificate("good-cycle-found", c, checked, max_len)
    return MaximalityCertificate("maximal", None, checked, max_len)


def certify_max_contradictions(m: GameMatrix) -> MaximalityCertificate:
    """Scan all cycles; ``maximal`` means beta_C = (n_a - 1)(n_b - 1)."""
    return _scan(m, 2 * min(m.n_a, m.n_b))


def short_cycle_certificate(m: GameMatrix, s: int) -> MaximalityCertificate:
    """Incidence-restricted check: no good cycle of length <= 2s.

    A ``maximal`` verdict here only certifies girth(H_opt) > 2s.
    """
    return _scan(m, 2 * s)


def subset_sum_certificate(m: GameMatrix, s: int, budget: int = 10**7):
    """Disjoint equal-size entry subsets of size <= s have distinct sums mod d.

    Passing guarantees girth(H_opt) > 2s; it is stronger than
    :func:`short_cycle_certificate`.  Returns a
    :class:`lingames.constructions.SumCheck`.
    """
    from lingames.constructions import verify_sum_property

    if s < 1 or s > min(m.n_a, m.n_b):
        raise ValueError(f"s must lie in 1..{min(m.n_a, m.n_b)}")
    values = [v for row in m.k for v in row]
    return verify_sum_property(values, s, mode="disjoint", modulus=m.d, budget=budget)


# ---------------------------------------------------------------------------
# graphs H and H_opt
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GameGraph:
    n_a: int
    n_b: int
    edges: frozenset

    def adjacency(self):
        """Vertex lists: rows ``0..n_a-1``, columns ``n_a..n_a+n_b-1``."""
        adj = [[] for _ in range(self.n_a + self.n_b)]
        for i, j in sorted(self.edges):
            adj[i].append(self.n_a + j)
            adj[self.n_a + j].append(i)
        return adj


@dataclass(frozen=True)
class GraphStats:
    edges: int
    girth: Optional[int]  # None encodes an acyclic graph
    is_tree: bool
    is_connected: bool
    components: int

    def to_obj(self):
        return {
            "edges": self.edges,
            "girth": self.girth,
            "is_tree": self.is_tree,
            "is_connected": self.is_connected,
            "components": self.components,
        }


def build_h(m: GameMatrix) -> GameGraph:
    edges = frozenset(
        (i, j) for i in range(m.n_a) for j in range(m.n_b) if m.k[i][j] == 0
    )
    return GameGraph(m.n_a, m.n_b, edges)


def build_h_opt(m: GameMatrix, r: ClassicalResult) -> GameGraph:
    ones = ones_under(m, r.witness)
    if ones != r.ones or m.n_a * m.n_b - len(ones) != r.beta_c:
        raise ValueError("stale witness: shifts do not reproduce the recorded ones")
    return GameGraph(m.n_a, m.n_b, frozenset(ones))


def components(g: GameGraph):
    """Connected components as sorted vertex lists, in order of smallest vertex."""
    adj = g.adjacency()
    seen = [False] * len(adj)
    out = []
    for root in range(len(adj)):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def girth(g: GameGraph) -> Optional[int]:
    adj = g.adjacency()
    best = None
    for root in range(len(adj)):
        dist = [-1] * len(adj)
        parent = [-1] * len(adj)
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def graph_stats(g: GameGraph) -> GraphStats:
    comps = components(g)
    connected = len(comps) == 1
    m = len(g.edges)
    return GraphStats(
        edges=m,
        girth=girth(g),
        is_tree=connected and m == g.n_a + g.n_b - 1,
        is_connected=connected,
        components=len(comps),
    )


def connect_completion(m: GameMatrix):
    """Equivalent matrix whose H contains H(m) and is connected.

    Each round takes the component holding the smallest vertex as ``H_1`` and
    the rest as ``H_2``, picks a non-edge ``(i_0, j_0)`` from rows of one side
    to columns of the other, and shifts rows and columns of ``H_2`` by the
    offending exponent ``zeta`` in opposite directions.  Edges inside either
    part are preserved and ``(i_0, j_0)`` becomes an edge, so the component
    count drops every round.
    """
    moves = []
    cur = m
    n_a = m.n_a
    while True:
        comps = components(build_h(cur))
        if len(comps) == 1:
            return cur, moves
        first = set(comps[0])
        a1 = sorted(v for v in first if v < n_a)
        b1 = sorted(v - n_a for v in first if v >= n_a)
        a2 = sorted(set(range(n_a)) - set(a1))
        b2 = sorted(set(range(m.n_b)) - set(b1))
        if a1 and b2:
            i0, j0 = a1[0], b2[0]
            zeta = cur.k[i0][j0]
            rnd = [RowMult(i, zeta) for i in a2] + [ColMult(j, -zeta % m.d) for j in b2]
        else:
            i0, j0 = a2[0], b1[0]
            zeta = cur.k[i0][j0]
            rnd = [RowMult(i, -zeta % m.d) for i in a2] + [ColMult(j, zeta) for j in b2]
        rnd = [mv for mv in rnd if mv.exponent % m.d]
        cur = apply_moves(cur, rnd)
        moves.extend(rnd)
