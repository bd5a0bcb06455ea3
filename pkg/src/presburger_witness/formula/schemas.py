"""Builders for the named formula schemas of the local criterion.

Free-variable conventions (``d`` is the dimension):

* ``build_beta(d)``: ``x0..``, ``y0..``, ``k`` -- the cubes at x and y of
  radius k are equal;
* ``build_sigma(d)``: ``rp0..``, ``rn0..``, ``k``, ``x0..`` -- the shift
  ``r = rp - rn`` maps the cube at x onto itself;
* ``build_varsigma(d)``: ``s``, ``k``, ``x0..`` -- some nonzero shift with
  entries in ``[-s, s]`` works.

Signed shifts are encoded by two natural vectors since terms have no
subtraction.  Bounding guards sit directly under each quantifier, which lets
the evaluator narrow its ranges.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .ast import (
    And, Eq, Exists, Forall, Formula, Less, Not, Or, Plus, Rel, Var,
    _all_names, conj, disj, exists, forall, fresh, iff, implies, leq, substitute,
)


def names(prefix: str, d: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(d)]


def _shifted(base: Sequence[str], offset: Sequence[str]) -> Rel:
    return Rel(tuple(Plus(Var(b), Var(o)) for b, o in zip(base, offset)))


def _check(d: int) -> None:
    if d < 1:
        raise ValueError("dimension must be >= 1")


def build_beta(d: int, x: str = "x", y: str = "y", k: str = "k") -> Formula:
    _check(d)
    xs, ys, zs = names(x, d), names(y, d), names("z", d)
    body = iff(_shifted(xs, zs), _shifted(ys, zs))
    for z in reversed(zs):
        body = Forall(z, implies(leq(z, k), body))
    return body


def build_sigma(d: int) -> Formula:
    _check(d)
    xs, ys = names("x", d), names("y", d)
    rp, rn = names("rp", d), names("rn", d)
    body = build_beta(d)
    # y = x + rp - rn, stated without subtraction
    for xi, yi, p, n in reversed(list(zip(xs, ys, rp, rn))):
        body = Exists(yi, And(Eq(Plus(Var(yi), Var(n)), Plus(Var(xi), Var(p))), body))
    return body


def build_varsigma(d: int) -> Formula:
    _check(d)
    rp, rn = names("rp", d), names("rn", d)
    nonzero = disj(Not(Eq(Var(p), Var(n))) for p, n in zip(rp, rn))
    body: Formula = And(nonzero, build_sigma(d))
    for v in reversed([w for pair in zip(rp, rn) for w in pair]):
        body = Exists(v, And(leq(v, "s"), body))
    return body


def shift_assignment(r: Sequence[int]) -> dict[str, int]:
    """Assignment of ``rp``/``rn`` representing the signed shift ``r``."""
    out = {}
    for i, v in enumerate(r):
        out[f"rp{i}"] = max(v, 0)
        out[f"rn{i}"] = max(-v, 0)
    return out


def point_assignment(prefix: str, p: Sequence[int]) -> dict[str, int]:
    return {f"{prefix}{i}": v for i, v in enumerate(p)}


def build_min_indexed(family: Sequence[Formula], i: int) -> Formula:
    """``phi_i`` holds and no earlier member of the family does."""
    if not 0 <= i < len(family):
        raise IndexError("index outside the family")
    return conj([family[i]] + [Not(family[j]) for j in range(i)])


def build_min(phi: Formula, variables: Sequence[str]) -> Formula:
    """``phi`` holds at ``variables`` and at no lexicographically smaller tuple."""
    variables = list(variables)
    avoid = _all_names(phi) | set(variables)
    primed = []
    for v in variables:
        p = fresh(v, avoid)
        avoid.add(p)
        primed.append(p)
    smaller = disj(
        conj([Eq(Var(primed[k]), Var(variables[k])) for k in range(j)]
             + [Less(Var(primed[j]), Var(variables[j]))])
        for j in range(len(variables))
    )
    other = substitute(phi, {v: Var(p) for v, p in zip(variables, primed)})
    return And(phi, forall(primed, implies(smaller, Not(other))))


def build_min_pair(family: Sequence[Formula], variables: Sequence[str]) -> list[Formula]:
    """For each index i: ``(i, x)`` is the lexicographically least pair with ``phi_i(x)``."""
    variables = list(variables)
    closed = [exists(variables, f) for f in family]
    return [And(build_min_indexed(closed, i), build_min(f, variables)) for i, f in enumerate(family)]


def build_ite(branches: Iterable[tuple[Sequence[str], Formula, Formula]], otherwise: Formula) -> Formula:
    """If some ``phi_i(x)`` holds then ``chi_i(x)`` for such an x, else ``otherwise``.

    ``branches`` holds triples ``(bound variables, phi_i, chi_i)``.
    """
    branches = list(branches)
    taken = disj(exists(vs, And(phi, chi)) for vs, phi, chi in branches)
    none = conj([forall(vs, Not(phi)) for vs, phi, _ in branches] + [otherwise])
    return Or(taken, none)
