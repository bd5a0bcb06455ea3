"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (the lines are repeated in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""
import io
import itertools
import os
import random
import subprocess
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import bruteforce as bf  # noqa: E402
from presburger_witness import oracles  # noqa: E402
from presburger_witness.cli import main  # noqa: E402
from presburger_witness.criterion import (  # noqa: E402
    cubes_equal, find_c, find_k, muchnik_test, s_shiftable, shifted_cube_equal,
)
from presburger_witness.formula import (  # noqa: E402
    BoundedStructure, build_beta, build_sigma, build_varsigma, eval_bounded,
)
from presburger_witness.formula.schemas import point_assignment, shift_assignment  # noqa: E402
from presburger_witness.periodicity import (  # noqa: E402
    EMPIRICAL, NOT_PERIODIC, ExactPeriodic, Windowed, doubles_on_increase, epsilon_witness,
    minimal_period,
)
from presburger_witness.pipeline import (  # noqa: E402
    IN, DivergentFunction, gaps_exceed, increasing_restriction, nu_witness,
    restriction_status, s_records,
)
from presburger_witness.relation import TableRelation  # noqa: E402
from presburger_witness.verdict import Budget  # noqa: E402

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []

R0 = oracles.builtin("squares_times_N")
R1 = oracles.builtin("odd_le_square")

C1_ARGS = ["check-definable", "--builtin", "odd_le_square", "--coord-bound", "10000"]
C2_ARGS = ["witness", "--builtin", "squares_times_N", "--window", "9999", "--count", "100"]
C3_BUDGET = Budget(max_t=19, coord_bound=450, max_s=1)
C3_ORACLE_BUDGET = Budget(max_t=21, coord_bound=450, max_s=1)
C5_ARGS = ["witness", "--builtin", "prime_divides", "--family", "--count", "3", "--window", "400"]
C8_BUDGET = Budget(max_t=101, coord_bound=10300, max_s=1)


def record(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print(line)


def run_cli(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


def test_c01_r1_property_b():
    code, text = run_cli(C1_ARGS)
    rows = [line.split() for line in text.splitlines() if line.startswith("  s=")]
    ks = {int(r[0][2:]): int(r[1][2:]) for r in rows}
    ok = (code == 0 and "verdict=NOT-DEFINABLE (property b, K=1)" in text
          and ks == {s: 1 for s in range(1, 9)})
    record(1, ok, f"R1 property b, K per s = {ks}")
    assert ok


def test_c02_r0_section_and_squares():
    v = muchnik_test(R0, Budget(coord_bound=10_000))
    section = v.value.section if v.is_holds and v.value.prop == "a" else None
    code, text = run_cli(C2_ARGS)
    trace = nu_witness(R0, Budget(coord_bound=10_000, window=9999))
    squares = [n * n for n in range(100)]
    ok = (section == (1, 0) and trace.params == (1, 0) and list(trace.witness.values) == squares
          and code == 0 and "values=" + ",".join(map(str, squares)) + "\n" in text)
    record(2, ok, f"R0 section {section}, witness = squares 0..99^2 ({len(trace.witness)} values)")
    assert ok


def c3_run():
    trace = nu_witness(R1, C3_BUDGET)
    return trace, trace.witness.values


def test_c03_r1_witness():
    trace, values = c3_run()
    K, corners, T, I, X, N = bf.pipeline_norms(R1, 1, C3_ORACLE_BUDGET)
    horizon = trace.witness.horizon
    oracle = [n for n in N if n <= horizon]
    increasing = all(a < b for a, b in zip(values, values[1:]))
    long_enough = len(values) >= 10
    agrees = list(values) == oracle
    forms = [next((c for c in range(0, 200) if c * c + 3 * c + 1 == v), None) for v in values]
    closed_form = all(c is not None and c % 2 == 0 for c in forms)
    bad = [v for v, c in zip(values, forms) if c is None or c % 2]
    ok = trace.branch == "DirectNorms" and increasing and long_enough and agrees and closed_form
    record(3, ok, f"R1 witness {list(values)}; increasing={increasing} length>=10={long_enough} "
                  f"oracle-equal={agrees} closed-form c^2+3c+1 (c even)={closed_form}"
                  + (f" (not of that form: {bad})" if bad else ""))
    assert ok


def test_c04_gap_law():
    checked = []
    budget = Budget(coord_bound=10_000)
    for s, v in s_records(R1, range(1, 9), budget).items():
        checked.append((s, v.value.N.values))
    _, values = c3_run()
    checked.append((1, values))
    ok = all(gaps_exceed(vals, s) and len(vals) >= 2 for s, vals in checked)
    record(4, ok, f"gap > s on {len(checked)} norm-set prefixes (R1, s=1..8 and the s=1 witness run)")
    assert ok


def test_c05_lcm_construction():
    code, text = run_cli(C5_ARGS)
    short = epsilon_witness(oracles.prime_divides(), 3, 400).values
    longer = epsilon_witness(oracles.prime_divides(), 5, 10_000).values
    ok = (short == (2, 6, 30) and code == 0 and "values=2,6,30\n" in text
          and doubles_on_increase(longer) and longer[:3] == short)
    record(5, ok, f"epsilon stream {list(short)}; longer stream {list(longer)} doubles on every increase")
    assert ok


def test_c06_increasing_restriction():
    wavy = [1, 4, 3, 1, 4, 6, 5, 5, 6]
    wavy_T = increasing_restriction([DivergentFunction.from_values(wavy)], len(wavy) - 1)
    rng = random.Random(6)
    failures = 0
    for _ in range(200):
        seqs = []
        for _ in range(rng.choice([1, 2])):
            wobble = rng.choice([0, 3, 10, 25])
            seqs.append([t + rng.randint(0, wobble) for t in range(150)])
        fs = []
        for v in seqs:
            def H(x, v=v):
                return max([t for t, y in enumerate(v[: x + 2]) if y <= x], default=0)
            fs.append(DivergentFunction.from_values(v, H))
        prev = None
        for B in (50, 80, 110, 149):
            out = [t for t, st in enumerate(restriction_status(fs, B)) if st == IN]
            if not all(v[a] < v[b] for v in seqs for a, b in zip(out, out[1:])):
                failures += 1
            if prev is not None and out[: len(prev)] != prev:
                failures += 1
            prev = out
    ok = wavy_T == [3, 4, 7] and failures == 0
    record(6, ok, f"wavy sequence T = {wavy_T}; 200 synthetic sequences, {failures} violations")
    assert ok


def test_c07_schema_agreement():
    sub = [("R0 section x1=0", R0.section(1, 0)), ("R1 section x1=3", R1.section(1, 3))]
    cases = [(2, "R0", R0), (2, "R1", R1)] + [(1, n, r) for n, r in sub]
    mismatches = checked = 0
    for d, _, rel in cases:
        S = BoundedStructure(rel, 12)
        beta, sigma, vs = build_beta(d), build_sigma(d), build_varsigma(d)
        box = list(itertools.product(range(7), repeat=d))
        for k in range(3):
            for x in box:
                for y in box:
                    r = tuple(b - a for a, b in zip(x, y))
                    env = {**point_assignment("x", x), **point_assignment("y", y), "k": k}
                    mismatches += eval_bounded(beta, S, env) != cubes_equal(rel, x, y, k)
                    env = {**point_assignment("x", x), **shift_assignment(r), "k": k}
                    mismatches += eval_bounded(sigma, S, env) != shifted_cube_equal(rel, r, k, x)
                    checked += 2
                for s in (1, 2):
                    env = {**point_assignment("x", x), "k": k, "s": s}
                    mismatches += eval_bounded(vs, S, env) != s_shiftable(rel, s, k, x)
                    checked += 1
    ok = mismatches == 0
    record(7, ok, f"{checked} schema evaluations, {mismatches} mismatches")
    assert ok


def random_exact(rng):
    # draw until the presentation is already minimal, so (t, p) is the target
    while True:
        p = rng.randint(1, 24)
        t = rng.randint(0, 20)
        S = ExactPeriodic(t, p, tuple(rng.random() < 0.5 for _ in range(t)),
                          tuple(rng.random() < 0.5 for _ in range(p)))
        cert = minimal_period(S)
        if (cert.threshold, cert.period) == (t, p):
            return S


def test_c08_periodicity_certificates():
    rng = random.Random(8)
    wrong = 0
    for _ in range(100):
        S = random_exact(rng)
        B = max(3 * S.period + S.threshold, 3 * S.threshold, 9)
        cert = minimal_period(Windowed(S.bits(B)))
        wrong += (cert.threshold, cert.period, cert.verdict) != (S.threshold, S.period, EMPIRICAL)
    squares = minimal_period(Windowed.from_values([n * n for n in range(101)], 10_000))
    trace = nu_witness(R1, C8_BUDGET)
    w = trace.witness
    r1 = minimal_period(Windowed.from_values(w.values, 10_000)) if w.horizon >= 10_000 else None
    ok = (wrong == 0 and squares.verdict == NOT_PERIODIC
          and r1 is not None and r1.verdict == NOT_PERIODIC)
    record(8, ok, f"100 random sets, {wrong} wrong; squares {squares.line()}; "
                  f"R1 witness (horizon {w.horizon}) {r1.line() if r1 else 'window not reached'}")
    assert ok


def test_c09_bruteforce_equivalence():
    rng = random.Random(9)
    budget = Budget(max_k=2, max_s=3, max_t=4, coord_bound=12)
    mismatches = comparisons = 0
    for _ in range(50):
        density = rng.choice([0.1, 0.3, 0.5])
        pts = [p for p in itertools.product(range(13), repeat=2) if rng.random() < density]
        rel = TableRelation(pts, 2, 12)
        mem = bf.members_of(rel, 12)
        for s in (1, 2, 3):
            want = bf.find_k(mem, 12, 2, s, budget)
            got = find_k(rel, s, budget)
            comparisons += 1
            if want is None:
                mismatches += not got.is_unknown
                continue
            mismatches += got.value != want[0]
            lim = bf.limit_for(12, want[0], s, budget)
            for t in range(5):
                c = find_c(rel, s, t, budget, K=want[0])
                comparisons += 1
                mismatches += (c.value if c.is_holds else None) != bf.least_corner(mem, s, want[0], t, lim, 2)
    ok = mismatches == 0
    record(9, ok, f"50 random tables, {comparisons} find_k/find_c comparisons, {mismatches} mismatches")
    assert ok


DETERMINISM_COMMANDS = [
    C1_ARGS,
    C2_ARGS,
    C5_ARGS,
    ["witness", "--builtin", "odd_le_square", "--max-t", "19", "--coord-bound", "450",
     "--max-s", "1", "--format", "lines"],
    ["cube-map", "--builtin", "odd_le_square", "--s", "1", "--k", "1", "--extent", "26x6"],
    ["eval", "--builtin", "odd_le_square", "--qbound", "200", "--assign", "x=11", "--formula",
     "exists x0, x1. x0 + x1 = x & !R(x0, x1) & R(x0, x1 + 1) & !R(x0 + 1, x1) & !R(x0 + 1, x1 + 1)"],
]


def test_c10_determinism():
    differing = []
    for argv in DETERMINISM_COMMANDS:
        cmd = [sys.executable, "-m", "presburger_witness", *argv]
        a = subprocess.run(cmd, capture_output=True, check=False)
        b = subprocess.run(cmd, capture_output=True, check=False)
        if (a.returncode, a.stdout, a.stderr) != (b.returncode, b.stdout, b.stderr) or not a.stdout:
            differing.append(argv[0])
    ok = not differing
    record(10, ok, f"{len(DETERMINISM_COMMANDS)} commands run twice, differing: {differing or 'none'}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
