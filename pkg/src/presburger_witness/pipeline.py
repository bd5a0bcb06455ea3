"""Extraction of a non-periodic set of integers from a non-definable relation.

The construction runs in three branches, tried in order:

* ``SectionRecursion``: some section is judged not definable; recurse on the
  lexicographically least such section.
* ``DirectNorms``: for the least s whose norm set ``N(R, s)`` shows no period
  on its window, that norm set is the witness.
* ``LcmOverS``: every norm set looks periodic; the family
  ``{(s - 1, n) | n in N(R, s)}`` is fed to the lcm construction.

A one-dimensional relation is its own witness (branch ``Base``).

Per s, the norm set is built from the corner function ``t -> c(R, s, t)``:
the indices ``T`` on which every coordinate of the corner increases, the
cube ``I`` that recurs earliest along ``T``, the indices ``X`` of ``T`` with
cube ``I``, and finally the norms of the corners over ``X``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from ._scan import scan_corners
from .criterion import corner_limit, find_k_many, muchnik_test
from .errors import DefinableInput, EmptyResult
from .periodicity import (
    EMPIRICAL, MIN_WINDOW, NOT_PERIODIC, PROVEN, PeriodicityCertificate, Windowed,
    WitnessStream, epsilon_witness, minimal_period,
)
from .relation import Cube, Point, Relation, SemilinearRelation, TableRelation, cube_at, norm
from .verdict import Budget, Verdict

IN, OUT, UNK = "IN", "OUT", "UNK"


@dataclass(frozen=True)
class DivergentFunction:
    """A function N -> N tending to infinity.

    ``modulus(v)`` returns a horizon H with ``f(t) > v`` for every ``t > H``.
    """

    evaluator: Callable[[int], int]
    modulus: Optional[Callable[[int], int]] = None
    name: str = "f"

    def __call__(self, t: int) -> int:
        return self.evaluator(t)

    @classmethod
    def from_values(cls, values: Sequence[int], modulus=None, name: str = "f") -> "DivergentFunction":
        values = tuple(values)
        return cls(values.__getitem__, modulus, name)


def modulus_is_sound(f: DivergentFunction, B: int, samples: Sequence[int]) -> bool:
    """Spot-check the modulus on ``[0, B]`` at the given values."""
    if f.modulus is None:
        return True
    vals = [f(t) for t in range(B + 1)]
    return all(vals[t] > v for v in samples for t in range(f.modulus(v) + 1, B + 1))


def restriction_status(fs: Sequence[DivergentFunction], B: int) -> list[str]:
    """IN / OUT / UNK for every index of ``[0, B]`` after restricting by each f in turn.

    At each level, t is OUT when a later index that is IN has a value not
    above ``f(t)``.  It is IN when every later index up to the horizon is
    OUT or has a larger value; the horizon comes from the modulus, or is the
    window end (which then must lie strictly after t).  Otherwise t is UNK.
    """
    status = [IN] * (B + 1)
    for f in fs:
        vals = [f(t) for t in range(B + 1)]
        new = [OUT] * (B + 1)
        # smallest value among later IN indices, scanning right to left
        best_in = None
        for t in range(B, -1, -1):
            st = status[t]
            if st != OUT:
                if best_in is not None and best_in <= vals[t]:
                    new[t] = OUT
                elif st == UNK:
                    new[t] = UNK
                else:
                    new[t] = _confirm(t, vals, status, f, B)
            if st == IN:
                best_in = vals[t] if best_in is None else min(best_in, vals[t])
        status = new
    return status


def _confirm(t, vals, status, f, B) -> str:
    if f.modulus is None:
        if t == B:
            return UNK
        horizon = B
    else:
        horizon = max(t, f.modulus(vals[t]))
        if horizon > B:
            return UNK
    for u in range(t + 1, horizon + 1):
        if status[u] != OUT and vals[u] <= vals[t]:
            return UNK
    return IN


def increasing_restriction(fs: Sequence[DivergentFunction], B: int) -> list[int]:
    """Confirmed indices of ``[0, B]`` on which every f is strictly increasing."""
    out = [t for t, st in enumerate(restriction_status(fs, B)) if st == IN]
    if not out:
        raise EmptyResult(f"no index of [0,{B}] is confirmed")
    return out


def earliest_recurring(values: Sequence, theta: int) -> Optional[int]:
    """Position of the first element whose value occurs at least theta times."""
    counts: dict = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    for i, v in enumerate(values):
        if counts[v] >= theta:
            return i
    return None


# -- per-s construction ------------------------------------------------------------


@dataclass(frozen=True)
class SRecord:
    s: int
    K: int
    corners: tuple[Point, ...]  # c(R, s, t) for t = 0..len-1
    status: tuple[str, ...]
    T: tuple[int, ...]
    cubes: tuple[Cube, ...]  # cube at each element of T
    f_index: Optional[int]
    I: Optional[Cube]
    X: tuple[int, ...]
    N: WitnessStream
    certificate: Optional[PeriodicityCertificate]

    def line(self) -> str:
        I = "-" if self.I is None else self.I.hex()
        f = "-" if self.f_index is None else str(self.f_index)
        cert = "UP -" if self.certificate is None else self.certificate.line()
        return (f"s={self.s} K={self.K} window={len(self.corners) - 1} f={f} I={I} "
                f"T={_list(self.T)} X={_list(self.X)} N={_list(self.N.values)} "
                f"horizon={'-' if self.N.horizon is None else self.N.horizon} {cert}")


def _list(xs) -> str:
    return "[" + ",".join(map(str, xs)) + "]"


def _modulus(R: Relation, i: int):
    if R.corner_horizon(i, 0) is None:
        # a corner with all coordinates >= t has c_i >= t, so H(v) = v is sound
        return lambda v: v
    return lambda v: R.corner_horizon(i, v)


def s_record(R: Relation, s: int, budget: Budget) -> Verdict:
    """All intermediates of the construction for one s."""
    return s_records(R, [s], budget)[s]


def s_records(R: Relation, s_values: Sequence[int], budget: Budget) -> dict[int, Verdict]:
    """``s_record`` for several s, sharing the corner scans."""
    s_values = sorted(set(s_values))
    ks = find_k_many(R, s_values, budget)
    out = {s: Verdict.unknown(budget, f"s={s}: {ks[s].note}") for s in s_values if not ks[s].is_holds}
    groups: dict[tuple[int, int], list[int]] = {}
    for s in s_values:
        if ks[s].is_holds:
            K = ks[s].value
            groups.setdefault((K, corner_limit(R, K, budget, s)), []).append(s)
    ts = range(budget.max_t + 1)
    for (K, limit), group in sorted(groups.items()):
        found = scan_corners(R, K, group, ts, limit)
        for s in group:
            corners = []
            for t in ts:
                if found[(s, t)] is None:
                    break
                corners.append(found[(s, t)])
            out[s] = _record(R, s, K, corners, budget)
    return out


def _record(R: Relation, s: int, K: int, corners: list, budget: Budget) -> Verdict:
    if not corners:
        return Verdict.unknown(budget, f"s={s}: no corner for t=0")
    W = len(corners) - 1
    fs = [DivergentFunction.from_values([c[i] for c in corners], _modulus(R, i), f"c{i}")
          for i in range(R.dimension)]
    status = restriction_status(fs, W)
    T = tuple(t for t in range(W + 1) if status[t] == IN)
    cubes = tuple(cube_at(R, corners[t], K) for t in T)
    pos = earliest_recurring(cubes, budget.theta)
    if pos is None:
        return Verdict.unknown(budget, f"s={s}: no cube occurs {budget.theta} times on T")
    I = cubes[pos]
    X = tuple(t for t, c in zip(T, cubes) if c == I)
    # the prefix is complete below the first undecided index
    first_unk = next((t for t in range(W + 1) if status[t] == UNK), W + 1)
    decided = [t for t in T if t < first_unk]
    horizon = norm(corners[decided[-1]]) if decided else None
    values = [norm(corners[t]) for t in X if t < first_unk]
    stream = WitnessStream(tuple(values), f"N(R,{s})", f"t window {W}", horizon)
    cert = None
    if horizon is not None and horizon >= MIN_WINDOW:
        cert = minimal_period(stream.window())
    rec = SRecord(s, K, tuple(corners), tuple(status), T, cubes, T[pos], I, X, stream, cert)
    return Verdict.holds(rec, budget)


def recurring_cube(R: Relation, s: int, budget: Budget) -> Verdict:
    """Holds((f index, I)) for the earliest recurring cube along T."""
    v = s_record(R, s, budget)
    if not v.is_holds:
        return v
    return Verdict.holds((v.value.f_index, v.value.I), budget)


def norm_set(R: Relation, s: int, budget: Budget) -> Verdict:
    """Holds(WitnessStream) with a complete prefix of N(R, s)."""
    v = s_record(R, s, budget)
    if not v.is_holds:
        return v
    return Verdict.holds(v.value.N, budget)


def gaps_exceed(values: Sequence[int], s: int) -> bool:
    return all(b - a > s for a, b in zip(values, values[1:]))


# -- traces --------------------------------------------------------------------------


@dataclass(frozen=True)
class PipelineTrace:
    branch: str
    budget: Budget
    params: tuple = ()
    records: tuple[SRecord, ...] = ()
    certificates: tuple[tuple[int, PeriodicityCertificate], ...] = ()
    witness: Optional[WitnessStream] = None
    sub: Optional["PipelineTrace"] = None
    note: str = ""

    @property
    def is_unknown(self) -> bool:
        return self.witness is None

    def final(self) -> "PipelineTrace":
        return self.sub.final() if self.sub is not None else self

    def lines(self, indent: str = "") -> list[str]:
        head = f"{indent}branch={self.branch}"
        if self.branch == "SectionRecursion":
            head += f" i={self.params[0]} j={self.params[1]}"
        elif self.branch == "DirectNorms":
            head += f" s={self.params[0]}"
        if self.note:
            head += f" note={self.note}"
        out = [head]
        for rec in self.records:
            out.append(indent + rec.line())
        for s, cert in self.certificates:
            out.append(f"{indent}row s={s} {cert.line()}")
        if self.sub is not None:
            out.extend(self.sub.lines(indent + "  "))
        if self.witness is not None:
            w = self.witness
            hz = "-" if w.horizon is None else w.horizon
            out.append(f"{indent}witness provenance={w.provenance} horizon={hz} "
                       f"stop={w.exhausted_at} values={_list(w.values)}")
        return out

    def report(self) -> str:
        return "\n".join([f"budget {self.budget.describe()}"] + self.lines())


def nu_witness(R: Relation, budget: Budget = Budget()) -> PipelineTrace:
    if isinstance(R, SemilinearRelation):
        raise DefinableInput(f"{R.name} is semilinear, hence definable")
    if R.dimension == 1:
        B = budget.window if R.bound is None else min(budget.window, R.bound)
        win = Windowed.from_relation(R, B)
        stream = WitnessStream(tuple(win.members()), "R", f"window {B}", B)
        return PipelineTrace("Base", budget, witness=stream)

    sub_budget = budget.reduced()
    for i in range(R.dimension):
        top = budget.max_section if R.bound is None else min(budget.max_section, R.bound)
        for j in range(top + 1):
            sec = R.section(i, j)
            if muchnik_test(sec, sub_budget).is_holds:
                sub = nu_witness(sec, budget)
                return PipelineTrace("SectionRecursion", budget, (i, j), sub=sub, witness=sub.witness)

    records = []
    for s in range(1, budget.max_s + 1):
        v = s_record(R, s, budget)
        if not v.is_holds:
            return PipelineTrace("Unknown", budget, records=tuple(records), note=v.note.replace(" ", "_"))
        rec = v.value
        records.append(rec)
        if rec.certificate is not None and rec.certificate.verdict == NOT_PERIODIC:
            return PipelineTrace("DirectNorms", budget, (s,), records=tuple(records), witness=rec.N)

    if any(r.certificate is None for r in records):
        return PipelineTrace("Unknown", budget, records=tuple(records), note="norm_set_window_too_small")
    bound = min(r.N.horizon for r in records)
    points = [(r.s - 1, v) for r in records for v in r.N.values if v <= bound]
    family = TableRelation(points, 2, bound, f"N({R.name})")
    trace = lcm_over_s(family, budget, budget.max_s, window=bound, rows=len(records))
    return PipelineTrace("LcmOverS", budget, records=tuple(records),
                         certificates=trace.certificates, witness=trace.witness)


def lcm_over_s(family: Relation, budget: Budget, count: int,
               window: Optional[int] = None, rows: Optional[int] = None) -> PipelineTrace:
    """Lcm construction over a family whose row n holds the norm set for s = n + 1."""
    B = budget.window if window is None else window
    if family.bound is not None:
        B = min(B, family.bound)
    rows = budget.max_s if rows is None else rows
    if family.bound is not None:
        rows = min(rows, family.bound + 1)
    certs = []
    for n in range(rows):
        row = Windowed(family.grid((n, 0), (n, B))[0])
        certs.append((n + 1, minimal_period(row)))
    stream = epsilon_witness(family, count, B, max_rows=rows)
    return PipelineTrace("LcmOverS", budget, certificates=tuple(certs),
                         witness=WitnessStream(stream.values, "LcmOverS", stream.exhausted_at))


def check_s_lower_bound(trace: PipelineTrace) -> bool:
    """Every periodic row certificate of an LcmOverS trace has period > s."""
    if trace.branch != "LcmOverS":
        raise ValueError("only LcmOverS traces carry per-s certificates")
    return all(cert.period > s for s, cert in trace.certificates
               if cert.verdict in (EMPIRICAL, PROVEN))
