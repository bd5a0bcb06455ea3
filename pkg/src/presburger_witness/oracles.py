"""Built-in oracle relations used throughout the examples and tests."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .relation import OracleRelation

DEFAULT_BOUND = 1_000_000

_primes = np.array([2, 3, 5, 7, 11, 13], dtype=np.int64)


def nth_primes(count: int) -> np.ndarray:
    """The first ``count`` primes (index 0 is 2)."""
    global _primes
    limit = max(16, int(_primes[-1]) * 2)
    while len(_primes) < count:
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        _primes = np.flatnonzero(sieve).astype(np.int64)
        limit *= 2
    return _primes[:count]


def nth_prime(n: int) -> int:
    return int(nth_primes(n + 1)[n])


def _isqrt_array(v):
    r = np.floor(np.sqrt(np.asarray(v, dtype=np.float64))).astype(np.int64)
    # float sqrt can be off by one near large squares
    r = np.where(r * r > v, r - 1, r)
    r = np.where((r + 1) * (r + 1) <= v, r + 1, r)
    return r


def squares_times_n(bound: int = DEFAULT_BOUND) -> OracleRelation:
    def pred(p):
        r = math.isqrt(p[0])
        return r * r == p[0]

    def vec(x0, x1):
        r = _isqrt_array(x0)
        return (r * r == x0) & (x1 >= 0)

    return OracleRelation("squares_times_N", 2, pred, bound, vec)


def odd_le_square(bound: int = DEFAULT_BOUND) -> OracleRelation:
    def pred(p):
        return p[1] % 2 == 1 and p[0] <= p[1] * p[1]

    def vec(x0, x1):
        return (x1 % 2 == 1) & (x0 <= x1 * x1)

    # non-shiftable deep corners sit on the parabola: c0(t) >= t^2, c1(t) >= t
    def horizon(i, v):
        return math.isqrt(v) if i == 0 else v

    return OracleRelation("odd_le_square", 2, pred, bound, vec, horizon)


def prime_divides(bound: int = DEFAULT_BOUND) -> OracleRelation:
    def pred(p):
        return p[1] % nth_prime(p[0]) == 0

    def vec(n, m):
        n = np.asarray(n)
        pi = nth_primes(int(n.max()) + 1)[n]
        return m % pi == 0

    return OracleRelation("prime_divides", 2, pred, bound, vec)


def prime_divides_shifted(bound: int = DEFAULT_BOUND) -> OracleRelation:
    def pred(p):
        n, m = p
        return m > n and (m + n * n) % nth_prime(n) == 0

    def vec(n, m):
        n = np.asarray(n)
        pi = nth_primes(int(n.max()) + 1)[n]
        return (m > n) & ((m + n * n) % pi == 0)

    return OracleRelation("prime_divides_shifted", 2, pred, bound, vec)


def full(dimension: int = 2, bound: int = DEFAULT_BOUND) -> OracleRelation:
    return OracleRelation("full", dimension, lambda p: True, bound,
                          lambda *xs: np.ones((), dtype=bool))


def empty(dimension: int = 2, bound: int = DEFAULT_BOUND) -> OracleRelation:
    return OracleRelation("empty", dimension, lambda p: False, bound,
                          lambda *xs: np.zeros((), dtype=bool))


_TWO_D = {
    "squares_times_N": squares_times_n,
    "odd_le_square": odd_le_square,
    "prime_divides": prime_divides,
    "prime_divides_shifted": prime_divides_shifted,
}

BUILTIN_NAMES = tuple(_TWO_D) + ("full", "empty")


def builtin(name: str, bound: Optional[int] = None, dimension: Optional[int] = None) -> OracleRelation:
    """Look up a built-in oracle by name."""
    bound = DEFAULT_BOUND if bound is None else bound
    if bound < 0:
        raise ValueError("bound must be a natural")
    if name in _TWO_D:
        if dimension not in (None, 2):
            raise ValueError(f"{name} has dimension 2")
        return _TWO_D[name](bound)
    if name == "full":
        return full(dimension or 2, bound)
    if name == "empty":
        return empty(dimension or 2, bound)
    raise KeyError(f"unknown builtin relation {name!r}; known: {', '.join(BUILTIN_NAMES)}")
