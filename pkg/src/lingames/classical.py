"""Exact contradiction numbers and classical values.

A deterministic strategy is a pair of shift vectors ``(r, c)``; entry
``(i, j)`` is won when ``k_ij + r_i + c_j = 0 (mod d)``.  The contradiction
number is ``n_a * n_b`` minus the best achievable number of won entries.

Two exact solvers are provided.  Both fix ``r_0 = 0`` (adding a constant to
every row shift and subtracting it from every column shift does not change the
won set) and complete the columns independently: once the row shifts are
known, the best ``c_j`` is a most common value of ``-(k_ij + r_i)`` over
``i``.  They differ in which row-shift vectors they visit:

* ``naive`` visits all ``d**(n_a - 1)`` vectors;
* ``path-gauge`` visits only vectors whose entries are reachable as
  alternating sums along simple paths from row 0 in ``K_{n_a,n_b}``.  Every
  optimal strategy wins a connected set of entries, so its row shifts are
  among these candidates.

Both return the lexicographically smallest optimal ``(row_shifts,
col_shifts)``, so their results are identical whenever both run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from lingames._kernels import completion_search
from lingames.core import GameMatrix
from lingames.errors import BudgetExceeded

DEFAULT_NAIVE_BUDGET = 10**9
DEFAULT_PATH_BUDGET = 10**9
DEFAULT_PATH_CAP = 2 * 10**6


@dataclass(frozen=True)
class ShiftAssignment:
    row_shifts: tuple
    col_shifts: tuple

    def __post_init__(self):
        object.__setattr__(self, "row_shifts", tuple(int(v) for v in self.row_shifts))
        object.__setattr__(self, "col_shifts", tuple(int(v) for v in self.col_shifts))

    def reduced(self, d: int) -> "ShiftAssignment":
        """Same won set, reduced mod d and gauge-fixed to ``row_shifts[0] == 0``."""
        g = self.row_shifts[0]
        return ShiftAssignment(
            [(r - g) % d for r in self.row_shifts],
            [(c + g) % d for c in self.col_shifts],
        )

    def strategy(self, d: int):
        """Deterministic outputs ``a(x) = r_x``, ``b(y) = -c_y``."""
        return list(self.row_shifts), [(-c) % d for c in self.col_shifts]


@dataclass(frozen=True)
class ClassicalResult:
    beta_c: int
    witness: ShiftAssignment
    ones: frozenset
    algorithm: str
    visited: int = 0

    @property
    def ones_count(self) -> int:
        return len(self.ones)


def _check_sizes(m: GameMatrix, s: ShiftAssignment):
    if len(s.row_shifts) != m.n_a or len(s.col_shifts) != m.n_b:
        raise ValueError(
            f"shift sizes {len(s.row_shifts)}x{len(s.col_shifts)} do not match "
            f"game shape {m.n_a}x{m.n_b}"
        )


def ones_under(m: GameMatrix, s: ShiftAssignment) -> frozenset:
    """Entries won by the strategy ``s``."""
    _check_sizes(m, s)
    d = m.d
    return frozenset(
        (i, j)
        for i, r in enumerate(s.row_shifts)
        for j, c in enumerate(s.col_shifts)
        if (m.k[i][j] + r + c) % d == 0
    )


def ones_count_under(m: GameMatrix, s: ShiftAssignment) -> int:
    return len(ones_under(m, s))


def column_completion(m: GameMatrix, row_shifts) -> tuple:
    """Best column shifts for fixed row shifts (smallest value among modes)."""
    d = m.d
    cols = []
    for j in range(m.n_b):
        counts = {}
        for i, r in enumerate(row_shifts):
            v = (-(m.k[i][j] + r)) % d
            counts[v] = counts.get(v, 0) + 1
        top = max(counts.values())
        cols.append(min(v for v, c in counts.items() if c == top))
    return tuple(cols)


def _result(m, row_shifts, algorithm, visited):
    w = ShiftAssignment(row_shifts, column_completion(m, row_shifts))
    ones = ones_under(m, w)
    return ClassicalResult(m.n_a * m.n_b - len(ones), w, ones, algorithm, visited)


def _search_python(m: GameMatrix, candidates):
    """Big-modulus fallback: same lexicographic search with Python ints."""
    d = m.d
    best, best_r, visited = -1, None, 0
    full = m.n_a * m.n_b
    for r in itertools.product(*candidates):
        visited += 1
        total = 0
        for j in range(m.n_b):
            counts = {}
            for i in range(m.n_a):
                v = (-(m.k[i][j] + r[i])) % d
                counts[v] = counts.get(v, 0) + 1
            total += max(counts.values())
        if total > best:
            best, best_r = total, r
            if best == full:
                break
    return best_r, visited


def naive_cost(m: GameMatrix) -> int:
    return m.d ** (m.n_a - 1) * m.n_a * m.n_b


def contradiction_number_naive(m: GameMatrix, budget: int = DEFAULT_NAIVE_BUDGET) -> ClassicalResult:
    cost = naive_cost(m)
    if cost > budget:
        raise BudgetExceeded(
            f"naive search needs {cost} residue evaluations, budget is {budget}",
            {"required": cost, "budget": budget},
        )
    if m.int64_safe:
        _, idx, visited = completion_search(m.array(), m.d, dense=True)
        row_shifts = tuple(int(v) for v in idx)
    else:
        cands = [[0]] + [range(m.d)] * (m.n_a - 1)
        row_shifts, visited = _search_python(m, cands)
    return _result(m, row_shifts, "naive", visited)


def path_candidates(m: GameMatrix, cap: int = DEFAULT_PATH_CAP):
    """Per-row sorted candidate shifts from simple paths leaving row 0.

    Depth-first, columns and rows visited in increasing index order.  Moving
    from row ``u`` (shift ``r_u``) across column ``j`` to row ``v`` fixes
    ``c_j = -(k_uj + r_u)`` and ``r_v = -(k_vj + c_j)``.
    """
    d, k = m.d, m.k
    n_a, n_b = m.n_a, m.n_b
    found = [set() for _ in range(n_a)]
    found[0].add(0)
    steps = 0
    stack = [(0, 0, 1, 0)]  # row, shift, used rows mask, used cols mask
    while stack:
        u, ru, rows_used, cols_used = stack.pop()
        nxt = []
        for j in range(n_b):
            if cols_used >> j & 1:
                continue
            cj = (-(k[u][j] + ru)) % d
            for v in range(n_a):
                if rows_used >> v & 1:
                    continue
                rv = (-(k[v][j] + cj)) % d
                found[v].add(rv)
                steps += 1
                if steps > cap:
                    raise BudgetExceeded(
                        f"path enumeration exceeded {cap} steps",
                        {"steps": steps, "cap": cap},
                    )
                nxt.append((v, rv, rows_used | 1 << v, cols_used | 1 << j))
        stack.extend(reversed(nxt))
    return [sorted(s) for s in found]


def contradiction_number_path_gauge(
    m: GameMatrix, budget: int = DEFAULT_PATH_BUDGET, path_cap: int = DEFAULT_PATH_CAP
) -> ClassicalResult:
    cands = path_candidates(m, path_cap)
    combos = 1
    for c in cands:
        combos *= len(c)
    cost = combos * m.n_a * m.n_b
    if cost > budget:
        raise BudgetExceeded(
            f"path-gauge product has {combos} row vectors ({cost} evaluations), "
            f"budget is {budget}",
            {"combos": combos, "required": cost, "budget": budget,
             "candidate_sizes": [len(c) for c in cands]},
        )
    if m.int64_safe:
        width = max(len(c) for c in cands)
        table = np.zeros((m.n_a, width), dtype=np.int64)
        for i, c in enumerate(cands):
            table[i, :len(c)] = c
        lens = np.array([len(c) for c in cands], dtype=np.int64)
        _, idx, visited = completion_search(m.array(), m.d, table, lens)
        row_shifts = tuple(cands[i][int(t)] for i, t in enumerate(idx))
    else:
        row_shifts, visited = _search_python(m, cands)
    return _result(m, row_shifts, "path-gauge", visited)


def contradiction_number(m: GameMatrix, algorithm: str = "auto",
                         budget: int = DEFAULT_NAIVE_BUDGET) -> ClassicalResult:
    """Dispatch; ``auto`` runs naive when affordable and path-gauge otherwise."""
    if algorithm == "naive":
        return contradiction_number_naive(m, budget)
    if algorithm == "path-gauge":
        return contradiction_number_path_gauge(m, budget)
    if algorithm != "auto":
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if naive_cost(m) <= budget:
        return contradiction_number_naive(m, budget)
    return contradiction_number_path_gauge(m, budget)


def classical_value(r: ClassicalResult, m: GameMatrix) -> Fraction:
    return 1 - Fraction(r.beta_c, m.n_a * m.n_b)


def validate_result(r: ClassicalResult, m: GameMatrix) -> bool:
    """Re-evaluate the witness; True iff it reproduces ``beta_c`` and ``ones``."""
    ones = ones_under(m, r.witness)
    return ones == r.ones and m.n_a * m.n_b - len(ones) == r.beta_c
