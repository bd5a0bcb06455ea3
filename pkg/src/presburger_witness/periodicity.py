"""Ultimate periodicity of subsets of N.

Two kinds of input are handled.  An :class:`ExactPeriodic` set is given by a
threshold, a period, and bit patterns, so its minimal representation can be
computed exactly.  A :class:`Windowed` set is only known on ``[0, B]``; for it
a candidate ``(t, p)`` is accepted only when ``t <= B // 3`` and
``p <= B // 3``, i.e. the pattern is seen repeating at least twice past the
threshold.  Every windowed answer records ``B``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, WindowTooSmall
from .relation import Relation
from .verdict import Verdict

PROVEN = "Proven"
EMPIRICAL = "Empirical"
NOT_PERIODIC = "NotPeriodic"

MIN_WINDOW = 9


@dataclass(frozen=True)
class ExactPeriodic:
    threshold: int
    period: int
    prefix: tuple[bool, ...]
    residues: tuple[bool, ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if len(self.prefix) != self.threshold or len(self.residues) != self.period:
            raise ValueError("prefix must have length t and residues length p")
        object.__setattr__(self, "prefix", tuple(bool(b) for b in self.prefix))
        object.__setattr__(self, "residues", tuple(bool(b) for b in self.residues))

    @classmethod
    def from_predicate(cls, threshold: int, period: int, pred) -> "ExactPeriodic":
        return cls(threshold, period,
                   tuple(pred(n) for n in range(threshold)),
                   tuple(pred(threshold + j) for j in range(period)))

    def contains(self, n: int) -> bool:
        if n < self.threshold:
            return self.prefix[n]
        return self.residues[(n - self.threshold) % self.period]

    def bits(self, bound: int) -> np.ndarray:
        return np.array([self.contains(n) for n in range(bound + 1)], dtype=bool)

    def members(self, bound: int) -> list[int]:
        return [n for n in range(bound + 1) if self.contains(n)]


@dataclass(frozen=True, eq=False)
class Windowed:
    """A subset of N known only on ``[0, bound]``."""

    bits: np.ndarray
    source: Optional[Relation] = None

    def __post_init__(self):
        b = np.asarray(self.bits, dtype=bool).copy()
        b.setflags(write=False)
        object.__setattr__(self, "bits", b)

    @property
    def bound(self) -> int:
        return len(self.bits) - 1

    @classmethod
    def from_relation(cls, relation: Relation, bound: int) -> "Windowed":
        if relation.dimension != 1:
            raise DimensionMismatch("a windowed set needs a relation of dimension 1")
        return cls(relation.grid((0,), (bound,)), relation)

    @classmethod
    def from_values(cls, values: Iterable[int], bound: int) -> "Windowed":
        bits = np.zeros(bound + 1, dtype=bool)
        for v in values:
            if 0 <= v <= bound:
                bits[v] = True
        return cls(bits)

    def contains(self, n: int) -> bool:
        return bool(self.bits[n])

    def members(self, bound: Optional[int] = None) -> list[int]:
        bits = self.bits if bound is None else self.bits[: bound + 1]
        return [int(v) for v in np.flatnonzero(bits)]


Set1D = Union[ExactPeriodic, Windowed]


@dataclass(frozen=True)
class PeriodicityCertificate:
    threshold: Optional[int]
    period: Optional[int]
    verdict: str
    window: Optional[int] = None

    @property
    def periodic(self) -> bool:
        return self.verdict != NOT_PERIODIC

    def line(self) -> str:
        show = lambda v: "-" if v is None else str(v)
        return f"UP t={show(self.threshold)} p={show(self.period)} verdict={self.verdict} B={show(self.window)}"

    def __str__(self) -> str:
        return self.line()


@dataclass(frozen=True)
class WitnessStream:
    """An increasing prefix of a witness set together with where it came from.

    ``horizon`` is the largest value up to which the prefix is known to be
    complete (``None`` when completeness is not claimed); ``exhausted_at``
    says why the stream stopped.
    """

    values: tuple[int, ...]
    provenance: str
    exhausted_at: str = ""
    horizon: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ValueError("witness values must be strictly increasing")

    def __len__(self) -> int:
        return len(self.values)

    def window(self) -> Windowed:
        """The prefix as a windowed set on ``[0, horizon]``."""
        bound = self.horizon if self.horizon is not None else (self.values[-1] if self.values else 0)
        return Windowed.from_values(self.values, bound)


# -- minimal period -------------------------------------------------------------


def _last_mismatch(bits: np.ndarray, p: int) -> int:
    """Largest n with ``bits[n] != bits[n + p]``, or -1."""
    diff = np.flatnonzero(bits[:-p] != bits[p:])
    return int(diff[-1]) if len(diff) else -1


def minimal_period(S: Set1D) -> PeriodicityCertificate:
    if isinstance(S, ExactPeriodic):
        res, p = S.residues, S.period
        q = next(q for q in range(1, p + 1) if all(res[j] == res[(j + q) % p] for j in range(p)))
        t = S.threshold
        while t > 0 and S.contains(t - 1) == S.contains(t - 1 + q):
            t -= 1
        return PeriodicityCertificate(t, q, PROVEN)
    B = S.bound
    if B < MIN_WINDOW:
        raise WindowTooSmall(f"window [0,{B}] is shorter than [0,{MIN_WINDOW}]")
    for p in range(1, B // 3 + 1):
        t = _last_mismatch(S.bits, p) + 1
        if t <= B // 3:
            return PeriodicityCertificate(t, p, EMPIRICAL, B)
    return PeriodicityCertificate(None, None, NOT_PERIODIC, B)


def _window_bits(S: Set1D, B: Optional[int]) -> tuple[np.ndarray, int]:
    if isinstance(S, ExactPeriodic):
        if B is None:
            raise ValueError("a window is needed")
        return S.bits(B), B
    B = S.bound if B is None else min(B, S.bound)
    return S.bits[: B + 1], B


def is_ultimately_p_periodic(S: Set1D, p: int, B: Optional[int] = None) -> Verdict:
    """Holds(t) with the least consistent threshold t, Fails, or Unknown."""
    if p < 1:
        raise ValueError("period must be >= 1")
    if isinstance(S, ExactPeriodic):
        cert = minimal_period(S)
        if p % cert.period == 0:
            t = S.threshold
            while t > 0 and S.contains(t - 1) == S.contains(t - 1 + p):
                t -= 1
            return Verdict.holds(t, note="exact")
        return Verdict.fails(note="exact")
    bits, B = _window_bits(S, B)
    budget = f"window={B}"
    if p > B:
        return Verdict.unknown(budget, "period longer than the window")
    t = _last_mismatch(bits, p) + 1
    if t <= B // 3:
        return Verdict.holds(t, budget)
    if t > B - p:
        return Verdict.fails(budget)
    return Verdict.unknown(budget)


# -- families and the lcm construction --------------------------------------------


def _row_periods(row: np.ndarray, qmax: int) -> np.ndarray:
    """ok[q] is True iff the row is ultimately q-periodic on the window (t <= B/3)."""
    B = len(row) - 1
    ok = np.zeros(qmax + 1, dtype=bool)
    for q in range(1, qmax + 1):
        ok[q] = _last_mismatch(row, q) + 1 <= B // 3
    return ok


class FamilyPeriods:
    """Row-by-row periodicity data of a 2-D relation on a window, computed lazily."""

    def __init__(self, family: Relation, B: int):
        if family.dimension != 2:
            raise DimensionMismatch("a family is a relation of dimension 2")
        if B < MIN_WINDOW:
            raise WindowTooSmall(f"window [0,{B}] is shorter than [0,{MIN_WINDOW}]")
        self.family = family
        self.B = B
        self.qmax = B // 3
        self._common = [np.ones(self.qmax + 1, dtype=bool)]

    def common(self, n: int) -> np.ndarray:
        while len(self._common) <= n + 1:
            i = len(self._common) - 1
            row = self.family.grid((i, 0), (i, self.B))[0]
            self._common.append(self._common[-1] & _row_periods(row, self.qmax))
        return self._common[n + 1]

    def rho(self, n: int) -> Verdict:
        ok = self.common(n)
        hits = np.flatnonzero(ok[1:])
        if len(hits):
            return Verdict.holds(int(hits[0]) + 1, f"window={self.B}")
        return Verdict.unknown(f"window={self.B}", f"no common period <= {self.qmax} for rows 0..{n}")


def rho(F: Relation, n: int, B: int) -> Verdict:
    """Least q such that rows ``0..n`` of F are all ultimately q-periodic on the window."""
    return FamilyPeriods(F, B).rho(n)


def epsilon_witness(F: Relation, count: int, B: int, max_rows: int = 64) -> WitnessStream:
    """Distinct values of ``rho(n)`` for n = 0, 1, ... ."""
    fam = FamilyPeriods(F, B)
    values: list[int] = []
    reason = f"row budget {max_rows}"
    for n in range(max_rows):
        if F.bound is not None and n > F.bound:
            reason = f"relation bound {F.bound}"
            break
        v = fam.rho(n)
        if not v.is_holds:
            reason = f"rho({n}) Unknown [window={B}]"
            break
        if not values or v.value != values[-1]:
            if values and v.value < values[-1]:
                reason = f"rho({n}) decreased"
                break
            values.append(v.value)
            if len(values) >= count:
                reason = f"count {count}"
                break
    return WitnessStream(tuple(values), "LcmConstruction", reason)


def doubles_on_increase(values: Sequence[int]) -> bool:
    """Each strict increase is at least a doubling."""
    return all(b == a or b >= 2 * a for a, b in zip(values, values[1:]))


def lcm_of_periods(periods: Iterable[int]) -> int:
    return math.lcm(*periods)


# -- expanding sets ------------------------------------------------------------------


def is_expanding(S: Set1D, B: Optional[int] = None, increases: int = 3, repetitions: int = 10) -> Verdict:
    """Empirical test that gaps between successive elements are unbounded.

    Fails when the largest gap in the window occurs at least ``repetitions``
    times; Holds when the largest gap seen in the prefixes ``[0, B >> j]``
    strictly increases at least ``increases`` times as the prefix grows.
    """
    bits, B = _window_bits(S, B)
    budget = f"window={B}"
    members = np.flatnonzero(bits)
    if len(members) < 2:
        return Verdict.unknown(budget, "fewer than two elements")
    gaps = np.diff(members)
    top = int(gaps.max())
    if int((gaps == top).sum()) >= repetitions:
        return Verdict.fails(budget, f"gap {top} repeats")
    maxima = []
    j = 0
    while (B >> j) >= 1:
        m = members[members <= (B >> j)]
        maxima.append(int(np.diff(m).max()) if len(m) > 1 else 0)
        j += 1
    maxima.reverse()
    steps = sum(1 for a, b in zip(maxima, maxima[1:]) if b > a)
    if steps >= increases:
        return Verdict.holds(steps, budget)
    return Verdict.unknown(budget, f"{steps} gap increases")
