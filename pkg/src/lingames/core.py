"""Game matrices over Z_d and the equivalence moves acting on them.

A linear game with ``n_a`` x ``n_b`` inputs and ``d`` outputs is stored as the
matrix of additive exponents ``k[i][j]``; the complex entry is
``exp(2 pi i k[i][j] / d)`` but is never materialised here.  Exponents and the
modulus are plain Python ints, so ``d`` may be arbitrarily large.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from lingames._kernels import INT64_SAFE_MODULUS
from lingames.errors import GameFormatError

_DECIMAL = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class GameMatrix:
    d: int
    k: tuple

    def __init__(self, k: Iterable[Iterable[int]], d: int):
        if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
            raise GameFormatError(f"modulus must be an integer, got {d!r}")
        d = int(d)
        if d < 2:
            raise GameFormatError(f"modulus d must be >= 2, got {d}")
        rows = tuple(tuple(int(v) % d for v in row) for row in k)
        if len(rows) < 2:
            raise GameFormatError("a game needs at least 2 rows (Alice inputs)")
        width = len(rows[0])
        if width < 2:
            raise GameFormatError("a game needs at least 2 columns (Bob inputs)")
        if any(len(r) != width for r in rows):
            raise GameFormatError("ragged exponent matrix")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "k", rows)

    @property
    def n_a(self) -> int:
        return len(self.k)

    @property
    def n_b(self) -> int:
        return len(self.k[0])

    @property
    def shape(self):
        return (self.n_a, self.n_b)

    @property
    def int64_safe(self) -> bool:
        return self.d < INT64_SAFE_MODULUS

    def __getitem__(self, ij):
        i, j = ij
        return self.k[i][j]

    def array(self) -> np.ndarray:
        """Exponents as an ``int64`` array, or ``object`` when d is too wide."""
        dtype = np.int64 if self.int64_safe else object
        return np.array(self.k, dtype=dtype)

    def transpose(self) -> "GameMatrix":
        return GameMatrix(zip(*self.k), self.d)

    def __repr__(self):
        return f"GameMatrix(d={self.d}, k={[list(r) for r in self.k]})"


# ---------------------------------------------------------------------------
# equivalence moves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RowMult:
    """Multiply row ``row`` by omega**exponent (add ``exponent`` mod d)."""
    row: int
    exponent: int


@dataclass(frozen=True)
class ColMult:
    col: int
    exponent: int


@dataclass(frozen=True)
class RowSwap:
    i1: int
    i2: int


@dataclass(frozen=True)
class ColSwap:
    j1: int
    j2: int


@dataclass(frozen=True)
class Transpose:
    pass


EquivalenceMove = Union[RowMult, ColMult, RowSwap, ColSwap, Transpose]


def _check_index(idx, size, what):
    if not 0 <= idx < size:
        raise IndexError(f"{what} index {idx} out of range 0..{size - 1}")


def apply_move(m: GameMatrix, mv: EquivalenceMove) -> GameMatrix:
    d = m.d
    k = [list(r) for r in m.k]
    if isinstance(mv, RowMult):
        _check_index(mv.row, m.n_a, "row")
        k[mv.row] = [(v + mv.exponent) % d for v in k[mv.row]]
    elif isinstance(mv, ColMult):
        _check_index(mv.col, m.n_b, "column")
        for row in k:
            row[mv.col] = (row[mv.col] + mv.exponent) % d
    elif isinstance(mv, RowSwap):
        _check_index(mv.i1, m.n_a, "row")
        _check_index(mv.i2, m.n_a, "row")
        k[mv.i1], k[mv.i2] = k[mv.i2], k[mv.i1]
    elif isinstance(mv, ColSwap):
        _check_index(mv.j1, m.n_b, "column")
        _check_index(mv.j2, m.n_b, "column")
        for row in k:
            row[mv.j1], row[mv.j2] = row[mv.j2], row[mv.j1]
    elif isinstance(mv, Transpose):
        return m.transpose()
    else:
        raise TypeError(f"not an equivalence move: {mv!r}")
    return GameMatrix(k, d)


def apply_moves(m: GameMatrix, moves: Iterable[EquivalenceMove]) -> GameMatrix:
    for mv in moves:
        m = apply_move(m, mv)
    return m


def inverse_move(mv: EquivalenceMove, d: int) -> EquivalenceMove:
    if isinstance(mv, RowMult):
        return RowMult(mv.row, (-mv.exponent) % d)
    if isinstance(mv, ColMult):
        return ColMult(mv.col, (-mv.exponent) % d)
    return mv  # swaps and transposition are involutions


def standard_form(m: GameMatrix):
    """Zero the first row and column by row then column multiplications.

    Returns ``(m_std, moves)`` with ``apply_moves(m, moves) == m_std``.
    """
    d = m.d
    moves = []
    for i in range(m.n_a):
        e = (-m.k[i][0]) % d
        if e:
            moves.append(RowMult(i, e))
    shifted = apply_moves(m, moves)
    col_moves = []
    for j in range(1, m.n_b):
        e = (-shifted.k[0][j]) % d
        if e:
            col_moves.append(ColMult(j, e))
    return apply_moves(shifted, col_moves), moves + col_moves


def is_standard(m: GameMatrix) -> bool:
    return all(v == 0 for v in m.k[0]) and all(r[0] == 0 for r in m.k)


def minor2_residual(m: GameMatrix, i: int, s: int, j: int, t: int) -> int:
    """``(k_ij + k_st - k_it - k_sj) mod d``; zero iff the 2x2 minor vanishes."""
    if i == s or j == t:
        raise ValueError("2x2 minor needs two distinct rows and two distinct columns")
    for r in (i, s):
        _check_index(r, m.n_a, "row")
    for c in (j, t):
        _check_index(c, m.n_b, "column")
    k = m.k
    return (k[i][j] + k[s][t] - k[i][t] - k[s][j]) % m.d


# ---------------------------------------------------------------------------
# game file format
# ---------------------------------------------------------------------------

_FIELDS = ("n_a", "n_b", "d", "k")


def _decimal(value, what):
    if not isinstance(value, str) or not _DECIMAL.match(value):
        raise GameFormatError(f"{what} must be a decimal string, got {value!r}")
    return int(value)


def game_from_obj(obj) -> GameMatrix:
    if not isinstance(obj, dict):
        raise GameFormatError("game file must hold a JSON object")
    extra = set(obj) - set(_FIELDS)
    if extra:
        raise GameFormatError(f"unknown fields: {sorted(extra)}")
    missing = [f for f in _FIELDS if f not in obj]
    if missing:
        raise GameFormatError(f"missing fields: {missing}")
    n_a, n_b = obj["n_a"], obj["n_b"]
    for name, v in (("n_a", n_a), ("n_b", n_b)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise GameFormatError(f"{name} must be an integer")
        if v < 2:
            raise GameFormatError(f"{name} must be >= 2, got {v}")
    d = _decimal(obj["d"], "d")
    rows = obj["k"]
    if not isinstance(rows, list) or len(rows) != n_a:
        raise GameFormatError(f"k must be a list of {n_a} rows")
    k = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_b:
            raise GameFormatError(f"row {i} must hold {n_b} entries")
        k.append([_decimal(v, f"k[{i}]") for v in row])
    return GameMatrix(k, d)


def parse_game(data: Union[bytes, str]) -> GameMatrix:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GameFormatError(f"game file is not UTF-8: {exc}") from None
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"malformed JSON: {exc}") from None
    return game_from_obj(obj)


def game_to_obj(m: GameMatrix) -> dict:
    return {
        "n_a": m.n_a,
        "n_b": m.n_b,
        "d": str(m.d),
        "k": [[str(v) for v in row] for row in m.k],
    }


def serialize_game(m: GameMatrix) -> str:
    return json.dumps(game_to_obj(m), separators=(",", ":"))


def chsh() -> GameMatrix:
    return GameMatrix([[0, 0], [0, 1]], 2)


def zero_game(n_a: int, n_b: int, d: int) -> GameMatrix:
    return GameMatrix([[0] * n_b for _ in range(n_a)], d)


def random_game(rng: np.random.Generator, n_a: int, n_b: int, d: int) -> GameMatrix:
    return GameMatrix(rng.integers(0, d, size=(n_a, n_b)).tolist(), d)


def random_moves(rng: np.random.Generator, m: GameMatrix, count: int) -> list:
    """A random sequence of valid moves starting from ``m``'s shape."""
    moves = []
    n_a, n_b = m.n_a, m.n_b
    for _ in range(count):
        kind = int(rng.integers(5))
        if kind == 0:
            mv = RowMult(int(rng.integers(n_a)), int(rng.integers(m.d)))
        elif kind == 1:
            mv = ColMult(int(rng.integers(n_b)), int(rng.integers(m.d)))
        elif kind == 2:
            mv = RowSwap(int(rng.integers(n_a)), int(rng.integers(n_a)))
        elif kind == 3:
            mv = ColSwap(int(rng.integers(n_b)), int(rng.integers(n_b)))
        else:
            mv = Transpose()
            n_a, n_b = n_b, n_a
        moves.append(mv)
    return moves


def moves_to_obj(moves: Sequence[EquivalenceMove]) -> list:
    out = []
    for mv in moves:
        if isinstance(mv, RowMult):
            out.append({"move": "row_mult", "row": mv.row, "exponent": str(mv.exponent)})
        elif isinstance(mv, ColMult):
            out.append({"move": "col_mult", "col": mv.col, "exponent": str(mv.exponent)})
        elif isinstance(mv, RowSwap):
            out.append({"move": "row_swap", "rows": [mv.i1, mv.i2]})
        elif isinstance(mv, ColSwap):
            out.append({"move": "col_swap", "cols": [mv.j1, mv.j2]})
        else:
            out.append({"move": "transpose"})
    return out
