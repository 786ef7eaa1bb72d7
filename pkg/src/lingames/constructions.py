"""Explicit games with many contradictions.

* :func:`binary_game` puts distinct powers of two in the free block of a
  standard-form matrix; binary expansions are unique, so no cycle is good.
* :func:`rudin_game` fills an ``n x n`` matrix with a Rudin B_s set, so sums
  of up to ``s`` entries never collide and H_opt has girth above ``2s``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from lingames.core import GameMatrix
from lingames.errors import BudgetExceeded

MAX_BINARY_BITS = 1 << 14


def binary_game(n_a: int, n_b: int, max_bits: int = MAX_BINARY_BITS) -> GameMatrix:
    if n_a < 2 or n_b < 2:
        raise ValueError("binary_game needs n_a, n_b >= 2")
    free = (n_a - 1) * (n_b - 1)
    if free + 1 > max_bits:
        raise BudgetExceeded(
            f"modulus 2**{free + 1} exceeds the configured cap 2**{max_bits}",
            {"bits": free + 1, "cap": max_bits},
        )
    k = [[0] * n_b]
    e = 1
    for _ in range(1, n_a):
        row = [0]
        for _ in range(1, n_b):
            row.append(1 << e)
            e += 1
        k.append(row)
    return GameMatrix(k, 1 << (free + 1))


# ---------------------------------------------------------------------------
# primes
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981  # bases above are exact below this


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise ValueError("deterministic primality test only covers n < 3.3e24")
    dd, r = n - 1, 0
    while dd % 2 == 0:
        dd //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, dd, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_in_window(lo: int, hi: int) -> int:
    """Smallest prime ``p`` with ``lo < p <= hi``."""
    if lo < 2:
        raise ValueError("lo must be >= 2")
    for p in range(lo + 1, hi + 1):
        if is_prime(p):
            return p
    raise ValueError(f"no prime in ({lo}, {hi}]")


# ---------------------------------------------------------------------------
# sum-uniqueness checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SumCheck:
    passed: bool
    mode: str
    level: int  # highest t fully verified
    counterexample: Optional[tuple] = None  # (indices_1, indices_2)
    combos: int = 0

    def to_obj(self):
        return {
            "passed": self.passed,
            "mode": self.mode,
            "level": self.level,
            "counterexample": [list(x) for x in self.counterexample] if self.counterexample else None,
            "combos": self.combos,
        }


def _sum_check_cost(n, s, mode):
    if mode == "multiset":
        return sum(math.comb(n + t - 1, t) for t in range(1, s + 1))
    return sum(math.comb(n, t) for t in range(1, s + 1))


def verify_sum_property(a, s: int, mode: str = "multiset", modulus: Optional[int] = None,
                        budget: int = 10**7) -> SumCheck:
    """Exhaustively check that same-size sums of up to ``s`` terms are distinct.

    ``multiset`` compares sums of ``t`` elements with repetition (distinct
    multisets of indices must give distinct sums).  ``disjoint`` compares sums
    over distinct index subsets of equal size; levels are checked upward from
    ``t = 1`` so that any collision found at level ``t`` is between disjoint
    subsets (common indices could otherwise be cancelled to give a collision
    at a lower level).  With ``modulus`` the sums are compared mod it.
    Counterexamples are index tuples into ``a``.
    """
    if mode not in ("multiset", "disjoint"):
        raise ValueError(f"unknown mode {mode!r}")
    a = [int(v) for v in a]
    cost = _sum_check_cost(len(a), s, mode)
    if cost > budget:
        raise BudgetExceeded(
            f"sum check needs {cost} combinations, budget is {budget}",
            {"required": cost, "budget": budget},
        )
    gen = itertools.combinations_with_replacement if mode == "multiset" else itertools.combinations
    combos = 0
    for t in range(1, s + 1):
        seen = {}
        for idx in gen(range(len(a)), t):
            combos += 1
            total = sum(a[i] for i in idx)
            if modulus is not None:
                total %= modulus
            other = seen.setdefault(total, idx)
            if other is not idx:
                return SumCheck(False, mode, t - 1, (other, idx), combos)
    return SumCheck(True, mode, s, None, combos)


# ---------------------------------------------------------------------------
# Rudin sets and games
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RudinSet:
    s: int
    p: int
    elements: tuple  # sorted ascending
    by_index: tuple  # x_0 .. x_{p-1} in generation order
    verified_level: int

    @property
    def bound(self) -> int:
        return self.s ** (self.s - 1) * self.p ** self.s


def rudin_element(k: int, s: int, p: int) -> int:
    """Base-``sp`` number whose digit ``i`` is ``k**(i+1) mod p``."""
    base = s * p
    return sum(pow(k, i + 1, p) * base**i for i in range(s))


def rudin_set(s: int, p: int, verify: bool = True, budget: int = 10**7) -> RudinSet:
    if s < 2:
        raise ValueError("s must be >= 2")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if s >= p:
        raise ValueError("need s < p")
    xs = tuple(rudin_element(k, s, p) for k in range(p))
    level = 0
    if verify:
        check = verify_sum_property(xs, s, mode="multiset", budget=budget)
        if not check.passed:
            raise AssertionError(f"Rudin set A({s},{p}) failed its sum check: {check}")
        level = check.level
    return RudinSet(s, p, tuple(sorted(xs)), xs, level)


def rudin_game(n: int, s: int, verify: bool = True) -> GameMatrix:
    """``n x n`` game on ``A(s, p)`` with the smallest prime ``p`` in ``(n^2, 2n^2]``.

    Entries are ``x_0, x_1, ...`` assigned row-major and ``d = (sp)^s``
    exceeds every ``s``-fold sum, so mod-d and integer comparisons agree.
    """
    if not 2 <= s <= n:
        raise ValueError("need 2 <= s <= n")
    p = prime_in_window(n * n, 2 * n * n)
    A = rudin_set(s, p, verify=verify)
    xs = A.by_index
    k = [[xs[i * n + j] for j in range(n)] for i in range(n)]
    return GameMatrix(k, (s * p) ** s)


# ---------------------------------------------------------------------------
# extremal girth / edge bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GirthBounds:
    n: int
    s: int
    m_max_exact: int
    m_max_simple: int
    pcl_bound: float

    def to_obj(self):
        return {"n": self.n, "s": self.s, "m_max_exact": self.m_max_exact,
                "m_max_simple": self.m_max_simple, "pcl_bound": self.pcl_bound}


def moore_sum(n: int, s: int, m: int) -> Fraction:
    """``sum_{i=0}^{s} (m/n - 1)^i`` for average degree ``m/n``."""
    q = Fraction(m, n) - 1
    return sum((q**i for i in range(s + 1)), Fraction(0))


def girth_edge_bounds(n: int, s: int) -> GirthBounds:
    """Edge limits for an ``n + n`` vertex bipartite graph with girth > 2s."""
    if n < 2 or not 1 <= s <= n:
        raise ValueError("need n >= 2 and 1 <= s <= n")
    # the Moore sum is increasing in m for m >= n; below that it never binds
    m = n
    while m + 1 <= n * n and moore_sum(n, s, m + 1) <= n:
        m += 1
    simple = n + _iroot(n ** (s + 1), s)
    pcl = min(1.0, 2.0 * n ** (-1.0 + 1.0 / s))
    return GirthBounds(n, s, m, simple, pcl)


def _iroot(x: int, s: int) -> int:
    """floor(x ** (1/s)) for non-negative integers."""
    r = int(round(x ** (1.0 / s)))
    while r**s > x:
        r -= 1
    while (r + 1) ** s <= x:
        r += 1
    return r
