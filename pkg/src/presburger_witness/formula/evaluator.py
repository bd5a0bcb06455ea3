"""Bounded Tarskian evaluation: quantifiers range over ``{0..Q}``.

Quantifier ranges are narrowed using linear atoms that sit directly under the
quantifier (conjuncts below ``exists``, negated disjuncts below ``forall``).
Narrowing never changes the truth value; it only skips values at which those
atoms already decide the body.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from ..errors import ArityError, UnboundVariable
from ..relation import Relation
from .ast import And, Const, Eq, Exists, Formula, Less, Not, Or, Rel, Var, free_vars


@dataclass(frozen=True)
class BoundedStructure:
    relation: Optional[Relation]
    qbound: int = 100
    narrow: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.qbound < 0:
            raise ValueError("quantifier bound must be a natural")


def _value(t, env) -> int:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Const):
        return t.value
    return _value(t.left, env) + _value(t.right, env)


def _linear(t, v, env):
    """``t == coef * v + rest``; rest is None when it mentions an unbound name."""
    if isinstance(t, Var):
        if t.name == v:
            return 1, 0
        return 0, env.get(t.name)
    if isinstance(t, Const):
        return 0, t.value
    a, r = _linear(t.left, v, env)
    b, s = _linear(t.right, v, env)
    return a + b, None if r is None or s is None else r + s


def _chain(phi, node):
    if isinstance(phi, node):
        return _chain(phi.left, node) + _chain(phi.right, node)
    return [phi]


def _range(v, atoms, env, q):
    lo, hi = 0, q
    for atom in atoms:
        if not isinstance(atom, (Less, Eq)):
            continue
        al, l = _linear(atom.left, v, env)
        ar, r = _linear(atom.right, v, env)
        a = al - ar
        if a == 0 or l is None or r is None:
            continue
        if isinstance(atom, Eq):
            if (r - l) % a:
                return 1, 0
            lo = max(lo, (r - l) // a)
            hi = min(hi, (r - l) // a)
        elif a > 0:
            hi = min(hi, (r - l - 1) // a)
        else:
            lo = max(lo, (l - r) // -a + 1)
    return lo, hi


class _Evaluator:
    def __init__(self, structure: BoundedStructure):
        self.rel = structure.relation
        self.q = structure.qbound
        self.narrow = structure.narrow

    def run(self, phi, env) -> bool:
        if isinstance(phi, Eq):
            return _value(phi.left, env) == _value(phi.right, env)
        if isinstance(phi, Less):
            return _value(phi.left, env) < _value(phi.right, env)
        if isinstance(phi, Rel):
            if self.rel is None:
                raise ArityError("formula mentions R but no relation is given")
            if len(phi.args) != self.rel.dimension:
                raise ArityError(f"R has arity {self.rel.dimension}, used with {len(phi.args)} arguments")
            return self.rel.contains(tuple(_value(a, env) for a in phi.args))
        if isinstance(phi, Not):
            return not self.run(phi.body, env)
        if isinstance(phi, And):
            return self.run(phi.left, env) and self.run(phi.right, env)
        if isinstance(phi, Or):
            return self.run(phi.left, env) or self.run(phi.right, env)
        is_exists = isinstance(phi, Exists)
        v = phi.var
        lo, hi = 0, self.q
        if self.narrow:
            if is_exists:
                atoms = _chain(phi.body, And)
            else:
                atoms = [d.body for d in _chain(phi.body, Or) if isinstance(d, Not)]
            lo, hi = _range(v, atoms, env, self.q)
        saved = env.get(v, _MISSING)
        try:
            for n in range(lo, hi + 1):
                env[v] = n
                if self.run(phi.body, env) == is_exists:
                    return is_exists
            return not is_exists
        finally:
            if saved is _MISSING:
                env.pop(v, None)
            else:
                env[v] = saved


_MISSING = object()


def eval_bounded(phi: Formula, structure: BoundedStructure, assignment: Optional[Mapping[str, int]] = None) -> bool:
    """Truth of ``phi`` with every quantifier restricted to ``{0..Q}``."""
    env = dict(assignment or {})
    missing = free_vars(phi) - set(env)
    if missing:
        raise UnboundVariable(", ".join(sorted(missing)))
    for name, value in env.items():
        if not 0 <= value <= structure.qbound:
            raise ValueError(f"{name}={value} is outside [0, {structure.qbound}]")
    return _Evaluator(structure).run(phi, env)
