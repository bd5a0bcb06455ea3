"""Relations over N^d: membership, sections, cubes and norms.

Three representations share one interface:

* :class:`SemilinearRelation` -- a finite union of linear sets, exact everywhere;
* :class:`TableRelation` -- an explicit finite set, exact on ``[0, B]^d``;
* :class:`OracleRelation` -- a named membership predicate with an evaluation
  bound ``B``.

Queries beyond the evaluation bound raise :class:`OutOfBound`; they never
answer ``False``.
"""
from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import DimensionMismatch, DimensionTooSmall, OutOfBound

Point = tuple[int, ...]
ShiftVector = tuple[int, ...]

# largest coordinate for which vectorised predicates stay inside int64
# after squaring
_INT64_SAFE = 3_000_000_000


def as_point(p: Iterable[int]) -> Point:
    p = tuple(int(v) for v in p)
    if any(v < 0 for v in p):
        raise ValueError(f"points have natural coordinates, got {p}")
    return p


def norm(p: Sequence[int]) -> int:
    """Sum of the coordinates of ``p``."""
    return sum(as_point(p))


def max_abs(r: Sequence[int]) -> int:
    return max((abs(v) for v in r), default=0)


def code(y: Sequence[int], k: int) -> int:
    """Index of ``y`` in ``{0..k}^d``, most significant coordinate first."""
    c = 0
    for v in y:
        if not 0 <= v <= k:
            raise ValueError(f"{tuple(y)} is not in [0,{k}]^{len(y)}")
        c = c * (k + 1) + v
    return c


def decode(c: int, k: int, d: int) -> Point:
    out = []
    for _ in range(d):
        c, v = divmod(c, k + 1)
        out.append(v)
    if c:
        raise ValueError("code out of range")
    return tuple(reversed(out))


@dataclass(frozen=True)
class Cube:
    """The pattern ``{y in [k]^d | x + y in R}`` stored as a bitset.

    Bit ``code(y)`` is set iff ``y`` belongs to the cube.
    """

    dimension: int
    radius: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.size:
            raise ValueError("bitset longer than (k+1)^d")

    @property
    def size(self) -> int:
        return (self.radius + 1) ** self.dimension

    @classmethod
    def from_members(cls, dimension: int, radius: int, members: Iterable[Sequence[int]]) -> "Cube":
        bits = 0
        for y in members:
            if len(y) != dimension:
                raise DimensionMismatch(f"{tuple(y)} is not {dimension}-dimensional")
            bits |= 1 << code(y, radius)
        return cls(dimension, radius, bits)

    def members(self) -> list[Point]:
        return [decode(c, self.radius, self.dimension)
                for c in range(self.size) if self.bits >> c & 1]

    def __contains__(self, y) -> bool:
        return bool(self.bits >> code(y, self.radius) & 1)

    def restrict(self, radius: int) -> "Cube":
        if not 0 <= radius <= self.radius:
            raise ValueError("can only restrict to a smaller radius")
        kept = [y for y in self.members() if max(y, default=0) <= radius]
        return Cube.from_members(self.dimension, radius, kept)

    def hex(self) -> str:
        return format(self.bits, "x")

    def __str__(self) -> str:
        inner = ",".join("(" + ",".join(map(str, y)) + ")" for y in self.members())
        return "{" + inner + "}"


class Relation(ABC):
    """A subset of N^d with a uniform membership interface."""

    dimension: int
    bound: Optional[int]
    name: str

    def check(self, p: Sequence[int]) -> Point:
        if len(p) != self.dimension:
            raise DimensionMismatch(
                f"{self.name} has dimension {self.dimension}, got point {tuple(p)}")
        p = as_point(p)
        if self.bound is not None and max(p, default=0) > self.bound:
            raise OutOfBound(p, self.bound)
        return p

    def contains(self, p: Sequence[int]) -> bool:
        return self._member(self.check(p))

    __contains__ = contains

    @abstractmethod
    def _member(self, p: Point) -> bool: ...

    @abstractmethod
    def section(self, i: int, c: int) -> "Relation":
        """The (d-1)-dimensional relation obtained by fixing coordinate i to c."""

    def _check_section(self, i: int, c: int) -> None:
        if self.dimension < 2:
            raise DimensionTooSmall(f"cannot section a relation of dimension {self.dimension}")
        if not 0 <= i < self.dimension:
            raise ValueError(f"section index {i} out of range")
        if c < 0:
            raise ValueError("section value must be a natural")
        if self.bound is not None and c > self.bound:
            raise OutOfBound((c,), self.bound)

    def grid(self, lo: Sequence[int], hi: Sequence[int]) -> np.ndarray:
        """Membership array for the box ``lo <= x <= hi`` (inclusive)."""
        lo = self.check(lo)
        hi = self.check(hi)
        shape = tuple(h - l + 1 for l, h in zip(lo, hi))
        if any(n <= 0 for n in shape):
            return np.zeros(tuple(max(n, 0) for n in shape), dtype=bool)
        return self._grid(lo, hi, shape)

    def _grid(self, lo: Point, hi: Point, shape) -> np.ndarray:
        out = np.zeros(shape, dtype=bool)
        for idx in np.ndindex(*shape):
            out[idx] = self._member(tuple(l + i for l, i in zip(lo, idx)))
        return out

    def corner_horizon(self, i: int, value: int) -> Optional[int]:
        """Optional divergence hint for the corner functions ``c_i(R, s, .)``.

        When not ``None``, ``c_i(R, s, t) > value`` for every ``t`` above the
        returned horizon and every ``s``.
        """
        return None

    def members(self, window: int) -> list[Point]:
        """All members with every coordinate at most ``window``."""
        rng = range(window + 1)
        return [p for p in itertools.product(rng, repeat=self.dimension) if self.contains(p)]

    def describe(self) -> str:
        b = "inf" if self.bound is None else str(self.bound)
        return f"{type(self).__name__}(name={self.name}, dim={self.dimension}, bound={b})"


# -- semilinear --------------------------------------------------------------


@dataclass(frozen=True)
class LinearSet:
    """``{base + sum m_i * periods[i] | m_i in N}``."""

    base: Point
    periods: tuple[Point, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        periods = tuple(as_point(p) for p in self.periods)
        if any(len(p) != len(self.base) for p in periods):
            raise DimensionMismatch("all points of a linear set share one dimension")
        object.__setattr__(self, "periods", periods)

    @property
    def dimension(self) -> int:
        return len(self.base)

    def contains(self, p: Sequence[int]) -> bool:
        rem = tuple(a - b for a, b in zip(p, self.base))
        if any(v < 0 for v in rem):
            return False
        useful = tuple(sorted({q for q in self.periods if any(q)}))
        return _decomposes(rem, useful)


@lru_cache(maxsize=65536)
def _decomposes(rem: Point, periods: tuple[Point, ...]) -> bool:
    if not periods:
        return not any(rem)
    # a coordinate touched by exactly one period fixes that period's multiplier
    for j, r in enumerate(rem):
        touching = [q for q in periods if q[j]]
        if not touching:
            if r:
                return False
            continue
        if len(touching) == 1:
            q = touching[0]
            if r % q[j]:
                return False
            m = r // q[j]
            left = tuple(a - m * b for a, b in zip(rem, q))
            if any(v < 0 for v in left):
                return False
            rest = list(periods)
            rest.remove(q)
            return _decomposes(left, tuple(rest))
    # otherwise branch on the period with the fewest admissible multipliers
    tops = [min(r // v for r, v in zip(rem, q) if v) for q in periods]
    idx = min(range(len(periods)), key=tops.__getitem__)
    q = periods[idx]
    rest = periods[:idx] + periods[idx + 1:]
    for m in range(tops[idx] + 1):
        if _decomposes(tuple(r - m * v for r, v in zip(rem, q)), rest):
            return True
    return False


class SemilinearRelation(Relation):
    """Finite union of linear sets; membership and sections are exact."""

    bound = None

    def __init__(self, sets: Iterable[LinearSet], dimension: Optional[int] = None, name: str = "semilinear"):
        self.sets = tuple(sets)
        dims = {s.dimension for s in self.sets}
        if dimension is None:
            if len(dims) != 1:
                raise DimensionMismatch("cannot infer dimension of an empty or mixed union")
            dimension = dims.pop()
        elif dims - {dimension}:
            raise DimensionMismatch("linear sets do not match the declared dimension")
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self.name = name

    def _member(self, p: Point) -> bool:
        return any(s.contains(p) for s in self.sets)

    def section(self, i: int, c: int) -> "SemilinearRelation":
        self._check_section(i, c)
        drop = lambda v: v[:i] + v[i + 1:]
        out = []
        for ls in self.sets:
            free = [q for q in ls.periods if q[i] == 0]
            bounded = [q for q in ls.periods if q[i] > 0]
            for base in _solve_coordinate(ls.base, bounded, i, c):
                out.append(LinearSet(drop(base), tuple(drop(q) for q in free)))
        return SemilinearRelation(out, self.dimension - 1, f"{self.name}|x{i}={c}")


def _solve_coordinate(base: Point, periods: list[Point], i: int, c: int) -> Iterator[Point]:
    """Bases ``base + sum m_j periods[j]`` whose coordinate ``i`` equals ``c``."""
    if base[i] > c:
        return
    if not periods:
        if base[i] == c:
            yield base
        return
    q, rest = periods[0], periods[1:]
    for m in range((c - base[i]) // q[i] + 1):
        yield from _solve_coordinate(tuple(b + m * v for b, v in zip(base, q)), rest, i, c)


# -- finite tables -------------------------------------------------------------


class TableRelation(Relation):
    """Explicit finite set, exact on ``[0, bound]^d`` and undefined beyond."""

    def __init__(self, points: Iterable[Sequence[int]], dimension: int, bound: int, name: str = "table"):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        self.dimension = dimension
        self.bound = bound
        self.name = name
        pts = set()
        for p in points:
            pts.add(self.check(p))
        self.points = frozenset(pts)
        self._dense = None

    def _member(self, p: Point) -> bool:
        return p in self.points

    def _grid(self, lo, hi, shape):
        if self._dense is None:
            dense = np.zeros((self.bound + 1,) * self.dimension, dtype=bool)
            for p in self.points:
                dense[p] = True
            self._dense = dense
        return self._dense[tuple(slice(l, h + 1) for l, h in zip(lo, hi))].copy()

    def section(self, i: int, c: int) -> "TableRelation":
        self._check_section(i, c)
        pts = [p[:i] + p[i + 1:] for p in self.points if p[i] == c]
        return TableRelation(pts, self.dimension - 1, self.bound, f"{self.name}|x{i}={c}")


# -- oracles -------------------------------------------------------------------


class OracleRelation(Relation):
    """A named membership predicate with an evaluation bound.

    ``vector`` optionally evaluates the predicate on broadcastable int64
    coordinate arrays; ``horizon`` is the divergence hint returned by
    :meth:`corner_horizon`.
    """

    def __init__(
        self,
        name: str,
        dimension: int,
        predicate: Callable[[Point], bool],
        bound: int,
        vector: Optional[Callable[..., np.ndarray]] = None,
        horizon: Optional[Callable[[int, int], int]] = None,
    ):
        if dimension < 1:
            raise ValueError("dimension must be >= 1")
        if vector is not None and bound > _INT64_SAFE:
            vector = None
        self.name = name
        self.dimension = dimension
        self.predicate = predicate
        self.bound = bound
        self.vector = vector
        self.horizon = horizon

    def _member(self, p: Point) -> bool:
        return bool(self.predicate(p))

    def _grid(self, lo, hi, shape):
        if self.vector is None:
            return super()._grid(lo, hi, shape)
        axes = np.ogrid[tuple(slice(l, h + 1) for l, h in zip(lo, hi))]
        axes = [np.asarray(a, dtype=np.int64) for a in axes]
        return np.broadcast_to(np.asarray(self.vector(*axes), dtype=bool), shape).copy()

    def corner_horizon(self, i: int, value: int) -> Optional[int]:
        return None if self.horizon is None else self.horizon(i, value)

    def section(self, i: int, c: int) -> "OracleRelation":
        self._check_section(i, c)
        parent = self.predicate
        pred = lambda y: parent(tuple(y[:i]) + (c,) + tuple(y[i:]))
        vec = None
        if self.vector is not None:
            pvec = self.vector
            vec = lambda *ys: pvec(*ys[:i], np.int64(c), *ys[i:])
        return OracleRelation(f"{self.name}|x{i}={c}", self.dimension - 1, pred, self.bound, vec)


def cube_at(relation: Relation, x: Sequence[int], k: int) -> Cube:
    """The cube of ``relation`` at corner ``x`` with radius ``k``."""
    x = as_point(x)
    if len(x) != relation.dimension:
        raise DimensionMismatch(f"corner {x} has wrong dimension")
    bits = 0
    for c, y in enumerate(itertools.product(range(k + 1), repeat=relation.dimension)):
        if relation.contains(tuple(a + b for a, b in zip(x, y))):
            bits |= 1 << c
    return Cube(relation.dimension, k, bits)
