"""Spectral upper bound on the quantum value of a linear game.

For the entrywise powers ``M_k`` (``(M_k)_ij = omega^(k * k_ij)``) the bound is

    p_Q <= (1/d) * (1 + c * sum_{k=1}^{d-1} ||M_k||)

with ``c = 1/sqrt(n_a n_b)`` (``normalization="sqrt"``, the default) or
``c = 1/(n_a n_b)`` (``"literal"``, the form as usually printed).  Only the
sqrt form dominates the classical value and reproduces Tsirelson's value for CHSH; the literal form is
kept for comparison.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from lingames._kernels import power_iteration
from lingames.core import GameMatrix
from lingames.errors import BudgetExceeded, ConsistencyError, ConvergenceError

DEFAULT_TOL = 1e-12
DEFAULT_D_CAP = 10**6
PHASE_BITS = 96
NORMALIZATIONS = ("sqrt", "literal")
_ALIASES = {"paper-literal": "literal"}


class _RootTable:
    """d-th roots of unity computed from exact residues at PHASE_BITS precision."""

    def __init__(self, d: int):
        self.d = d
        self._cache = {}
        self._ctx = mpmath.MPContext()
        self._ctx.prec = PHASE_BITS

    def __call__(self, r: int) -> complex:
        r %= self.d
        z = self._cache.get(r)
        if z is None:
            ctx = self._ctx
            x = ctx.mpf(2 * r) / self.d
            z = complex(float(ctx.cospi(x)), float(ctx.sinpi(x)))
            self._cache[r] = z
        return z


def entrywise_power(m: GameMatrix, k: int, roots: _RootTable = None) -> np.ndarray:
    if not 1 <= k <= m.d - 1:
        raise ValueError(f"power k must lie in 1..{m.d - 1}")
    roots = roots or _RootTable(m.d)
    d = m.d
    return np.array([[roots((k * v) % d) for v in row] for row in m.k], dtype=np.complex128)


def _start_vectors(n):
    ones = np.ones(n, dtype=np.complex128)
    ramp = np.array([(-1) ** j * (j + 1) for j in range(n)], dtype=np.complex128)
    return ones, ramp


def operator_norm(a, tol: float = DEFAULT_TOL, max_iter: int = 10**6) -> float:
    """Largest singular value of ``a`` to absolute accuracy ``tol``.

    Power iteration on the smaller Gram matrix from two deterministic real
    start vectors (all-ones, then an alternating ramp in case the first is
    orthogonal to the dominant eigenspace); the larger result is kept.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a, dtype=np.complex128)
    gram = a.conj().T @ a if a.shape[1] <= a.shape[0] else a @ a.conj().T
    best = 0.0
    for v0 in _start_vectors(gram.shape[0]):
        mu, iters, ok = power_iteration(gram, v0, tol, max_iter)
        if not ok:
            raise ConvergenceError(
                f"power iteration did not reach tol={tol} in {max_iter} iterations"
            )
        best = max(best, mu)
    return math.sqrt(max(best, 0.0))


@dataclass(frozen=True)
class SpectralBound:
    p_q_bar: float
    per_power_norms: tuple
    normalization: str
    tolerance: float
    error_bound: float
    d: int

    def to_obj(self):
        return {
            "p_q_bar": self.p_q_bar,
            "norms": list(self.per_power_norms),
            "normalization": self.normalization,
            "tolerance": self.tolerance,
            "error_bound": self.error_bound,
        }


def canonical_normalization(name: str) -> str:
    name = _ALIASES.get(name, name)
    if name not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    return name


def _weight(m: GameMatrix, normalization: str) -> float:
    normalization = canonical_normalization(normalization)
    if normalization == "sqrt":
        return 1.0 / math.sqrt(m.n_a * m.n_b)
    if normalization == "literal":
        return 1.0 / (m.n_a * m.n_b)
    raise ValueError(f"normalization must be one of {NORMALIZATIONS}")


def quantum_upper_bound(m: GameMatrix, normalization: str = "sqrt", budget: int = DEFAULT_D_CAP,
                        tol: float = DEFAULT_TOL, workers: int = 1) -> SpectralBound:
    normalization = canonical_normalization(normalization)
    weight = _weight(m, normalization)
    if m.d - 1 > budget:
        raise BudgetExceeded(
            f"bound needs {m.d - 1} operator norms, cap is {budget}",
            {"required": m.d - 1, "budget": budget, "floor": spectral_floor(m, normalization)},
        )
    roots = _RootTable(m.d)
    powers = [entrywise_power(m, k, roots) for k in range(1, m.d)]

    def norm(a):
        return operator_norm(a, tol)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            norms = list(pool.map(norm, powers))
    else:
        norms = [norm(a) for a in powers]
    floor = math.sqrt(max(m.n_a, m.n_b))
    for k, v in enumerate(norms, start=1):
        if v < floor - 10 * tol:
            raise ConsistencyError(f"||M_{k}|| = {v} fell below the column-norm floor {floor}")
    total = math.fsum(norms)
    p = (1.0 + weight * total) / m.d
    err = weight * len(norms) * tol / m.d
    return SpectralBound(p, tuple(norms), normalization, tol, err, m.d)


def spectral_floor(m: GameMatrix, normalization: str = "sqrt") -> float:
    """Analytic lower bound on p_q_bar from ``||M_k|| >= sqrt(max(n_a, n_b))``.

    For square games in sqrt mode this is at least ``1/sqrt(n)``.
    """
    weight = _weight(m, normalization)
    return (1.0 + weight * (m.d - 1) * math.sqrt(max(m.n_a, m.n_b))) / m.d


def bias_ratio(p_q_bar: float, p_cl, d: int) -> float:
    """``(p_q_bar - 1/d) / (p_cl - 1/d)``, the bias of the bound over the classical one."""
    p_cl = Fraction(p_cl)
    rand = Fraction(1, d)
    if p_cl <= rand:
        raise ValueError("classical value must exceed the random-guess value 1/d")
    return (p_q_bar - 1.0 / d) / float(p_cl - rand)
