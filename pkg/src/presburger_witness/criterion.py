"""Cube comparisons, shiftability, and the budgeted local definability test.

``cubes_equal``, ``shifted_cube_equal`` and ``s_shiftable`` evaluate one
configuration directly.  ``find_k`` and ``find_c`` search many corners at once
through :mod:`._scan`; their answers coincide with the direct definitions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._scan import scan_corners, search_limit
from .errors import NegativeShiftTarget
from .periodicity import MIN_WINDOW, NOT_PERIODIC, PeriodicityCertificate, Windowed, minimal_period
from .relation import Point, Relation, SemilinearRelation, as_point, cube_at
from .verdict import Budget, Verdict


def cubes_equal(R: Relation, x: Sequence[int], y: Sequence[int], k: int) -> bool:
    return cube_at(R, x, k) == cube_at(R, y, k)


def shifted_cube_equal(R: Relation, r: Sequence[int], k: int, x: Sequence[int]) -> bool:
    target = tuple(a + b for a, b in zip(x, r))
    if any(v < 0 for v in target):
        raise NegativeShiftTarget(f"{tuple(x)} + {tuple(r)} leaves N^d")
    return cubes_equal(R, x, target, k)


def s_shiftable(R: Relation, s: int, k: int, x: Sequence[int]) -> bool:
    if s < 1:
        raise ValueError("s must be >= 1")
    x = as_point(x)
    base = cube_at(R, x, k)
    for r in itertools.product(range(-s, s + 1), repeat=len(x)):
        if not any(r):
            continue
        target = tuple(a + b for a, b in zip(x, r))
        if min(target) < 0:
            continue
        if cube_at(R, target, k) == base:
            return True
    return False


def corner_limit(R: Relation, K: int, budget: Budget, s: int = 1) -> int:
    """Coordinate bound of the corner search; shared by every s up to ``budget.max_s``."""
    return search_limit(R, K, max(s, budget.max_s), budget.coord_bound)


def _k_search(R: Relation, s_values: Iterable[int], budget: Budget):
    s_values = sorted(set(s_values))
    if any(s < 1 for s in s_values):
        raise ValueError("s must be >= 1")
    samples = budget.samples()
    verdicts: dict[int, Verdict] = {}
    corners: dict[int, dict[int, Point]] = {}
    todo = list(s_values)
    for K in range(budget.max_k + 1):
        if not todo:
            break
        limit = corner_limit(R, K, budget, max(todo))
        found = scan_corners(R, K, todo, samples, limit)
        for s in list(todo):
            if all(found[(s, t)] is not None for t in samples):
                verdicts[s] = Verdict.holds(K, budget, f"empirical: t sampled at {list(samples)}")
                corners[s] = {t: found[(s, t)] for t in samples}
                todo.remove(s)
    for s in todo:
        verdicts[s] = Verdict.unknown(budget, f"no K <= {budget.max_k} has deep non-{s}-shiftable cubes")
    return verdicts, corners


def find_k_many(R: Relation, s_values: Iterable[int], budget: Budget) -> dict[int, Verdict]:
    """``find_k`` for several s, sharing one scan per candidate K."""
    return _k_search(R, s_values, budget)[0]


def find_k(R: Relation, s: int, budget: Budget) -> Verdict:
    return find_k_many(R, [s], budget)[s]


def find_c_many(R: Relation, s: int, t_values: Iterable[int], budget: Budget,
                K: Optional[int] = None) -> dict[int, Verdict]:
    """``find_c`` for several thresholds with one scan."""
    t_values = sorted(set(t_values))
    if K is None:
        k = find_k(R, s, budget)
        if not k.is_holds:
            return {t: Verdict.unknown(budget, "k(R,s) unknown") for t in t_values}
        K = k.value
    limit = corner_limit(R, K, budget, s)
    found = scan_corners(R, K, [s], t_values, limit)
    out = {}
    for t in t_values:
        c = found[(s, t)]
        if c is None:
            out[t] = Verdict.unknown(budget, f"no non-{s}-shiftable corner in [{t},{limit}]^{R.dimension}")
        else:
            out[t] = Verdict.holds(c, budget)
    return out


def find_c(R: Relation, s: int, t: int, budget: Budget, K: Optional[int] = None) -> Verdict:
    return find_c_many(R, s, [t], budget, K)[t]


# -- the three-valued test ---------------------------------------------------------


@dataclass(frozen=True)
class Evidence:
    """Why a relation was judged not definable.

    ``prop`` is ``"a"`` (a section is not definable), ``"b"`` (deep cubes
    that cannot be shifted) or ``"1d"`` (a one-dimensional set with no
    period in the window).
    """

    prop: str
    section: Optional[tuple[int, int]] = None
    sub: Optional["Evidence"] = None
    certificate: Optional[PeriodicityCertificate] = None
    table: tuple = ()  # rows (s, K, ((t, corner), ...))

    def lines(self, indent: str = "") -> list[str]:
        out = []
        if self.prop == "a":
            i, j = self.section
            out.append(f"{indent}property=a section=({i},{j})")
            out.extend(self.sub.lines(indent + "  "))
        elif self.prop == "b":
            out.append(f"{indent}property=b")
            for s, K, corners in self.table:
                cs = " ".join(f"t={t}:({','.join(map(str, c))})" for t, c in corners)
                out.append(f"{indent}  s={s} K={K} {cs}")
        else:
            out.append(f"{indent}property=1d {self.certificate.line()}")
        return out

    def report(self) -> str:
        return "\n".join(self.lines())


def muchnik_test(R: Relation, budget: Budget = Budget()) -> Verdict:
    """Holds(Evidence) if R is judged not definable, Fails if it is definable."""
    if isinstance(R, SemilinearRelation):
        return Verdict.fails(budget, "semilinear input is definable")
    if R.dimension == 1:
        B = budget.window if R.bound is None else min(budget.window, R.bound)
        if B < MIN_WINDOW:
            return Verdict.unknown(budget, f"window [0,{B}] too short to judge periodicity")
        cert = minimal_period(Windowed.from_relation(R, B))
        if cert.verdict == NOT_PERIODIC:
            return Verdict.holds(Evidence("1d", certificate=cert), budget)
        return Verdict.unknown(budget, f"periodic on the window: {cert.line()}")

    sub_budget = budget.reduced()
    for i in range(R.dimension):
        top = budget.max_section if R.bound is None else min(budget.max_section, R.bound)
        for j in range(top + 1):
            v = muchnik_test(R.section(i, j), sub_budget)
            if v.is_holds:
                return Verdict.holds(Evidence("a", section=(i, j), sub=v.value), budget)

    s_values = range(1, budget.max_s + 1)
    ks, corners = _k_search(R, s_values, budget)
    missing = [s for s in s_values if not ks[s].is_holds]
    if missing:
        return Verdict.unknown(budget, f"no section found and k(R,s) unknown for s in {missing}")
    rows = tuple((s, ks[s].value, tuple(sorted(corners[s].items()))) for s in s_values)
    return Verdict.holds(Evidence("b", table=rows), budget)
