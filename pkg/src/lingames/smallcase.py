"""Closed-form contradiction numbers for diagonal, one-row and 3x3 games.

All conditions are evaluated on exponents, so a product of roots of unity
becomes a sum mod d and an inverse becomes a negation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from lingames.core import GameMatrix, standard_form


@dataclass(frozen=True)
class Standard3x3:
    """Free block of ``[[0, 0, 0], [0, w, x], [0, y, z]]``."""
    d: int
    w: int
    x: int
    y: int
    z: int

    def __post_init__(self):
        for name in "wxyz":
            object.__setattr__(self, name, getattr(self, name) % self.d)

    @classmethod
    def from_game(cls, m: GameMatrix) -> "Standard3x3":
        if m.shape != (3, 3):
            raise ValueError("need a 3x3 game")
        s, _ = standard_form(m)
        return cls(m.d, s.k[1][1], s.k[1][2], s.k[2][1], s.k[2][2])

    def game(self) -> GameMatrix:
        return GameMatrix([[0, 0, 0], [0, self.w, self.x], [0, self.y, self.z]], self.d)


def diagonal_beta(diag_exponents, n: int, d: int) -> int:
    """Contradiction number of an ``n x n`` matrix that is zero off the diagonal."""
    diag = [int(v) % d for v in diag_exponents]
    if n < 3:
        raise ValueError("diagonal_beta needs n >= 3")
    if len(diag) != n:
        raise ValueError(f"expected {n} diagonal exponents, got {len(diag)}")
    nonzero = sum(1 for v in diag if v)
    if n >= 4 or nonzero < 3:
        return nonzero
    a, b, c = diag
    # two entries equal to the inverse of the third
    if (b == c == (-a) % d) or (a == c == (-b) % d) or (a == b == (-c) % d):
        return 2
    return 3


def diagonal_game(diag_exponents, d: int) -> GameMatrix:
    n = len(diag_exponents)
    return GameMatrix([[diag_exponents[i] if i == j else 0 for j in range(n)] for i in range(n)], d)


def one_row_beta(last_row_exponents) -> int:
    """Contradictions when every non-trivial entry sits in one row.

    Exponents must already be reduced mod d.
    """
    row = list(last_row_exponents)
    if not row:
        raise ValueError("empty row")
    return len(row) - max(Counter(row).values())


def classify_3x3(g: Standard3x3):
    """``(beta, rule)`` for a standard-form 3x3 game.

    ``rule`` names the case that decided the answer so a disagreement with an
    exhaustive solver points at a single line of the case analysis.
    """
    d, w, x, y, z = g.d, g.w, g.x, g.y, g.z
    vals = (w, x, y, z)
    nz = [v != 0 for v in vals]
    count = sum(nz)

    if count == 0:
        return 0, "no-nonzero"
    if count == 1:
        return 1, "one-nonzero"
    if count == 2:
        # w,x share row 1; y,z share row 2; w,y share column 1; x,z column 2
        pos = tuple(i for i, f in enumerate(nz) if f)
        same_line = pos in ((0, 1), (2, 3), (0, 2), (1, 3))
        a, b = (vals[i] for i in pos)
        if same_line:
            return (1, "two-nonzero-line-equal") if a == b else (2, "two-nonzero-line-distinct")
        return 2, "two-nonzero-diagonal"
    if count == 3:
        # zero position; 'row' and 'col' share its row / column, 'opp' is opposite
        zero = nz.index(False)
        row, col, opp = {
            0: (x, y, z),
            1: (w, z, y),
            2: (z, w, x),
            3: (y, x, w),
        }[zero]
        if row == opp:
            return 2, "three-nonzero-row-equal"
        if col == opp:
            return 2, "three-nonzero-col-equal"
        if (row + col) % d == opp:
            return 2, "three-nonzero-sum"
        return 3, "three-nonzero"

    # four non-zero entries
    if w == x == y == z:
        return 1, "all-equal"
    c = Counter(vals)
    if max(c.values()) == 3:
        return 2, "three-equal"
    if w == x and y == z:
        return 2, "rows-equal"
    if w == y and x == z:
        return 2, "cols-equal"
    if x == y and w == z:
        return 3, "diagonals-equal"
    if max(c.values()) == 2:
        return 3, "one-equality"
    conditions = (
        ("cycle-i", (y - w - z + x) % d == 0),
        ("cycle-ii", (y - z + x) % d == 0),
        ("cycle-iii", (x - w - z) % d == 0),
        ("cycle-iv", (y + x - w) % d == 0),
        ("cycle-v", (y - w - z) % d == 0),
    )
    for tag, holds in conditions:
        if holds:
            return 3, tag
    return 4, "all-distinct-no-good-cycle"
