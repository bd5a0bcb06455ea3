"""Terms and formulas of FO(N, +, <, R, =).

Only the core connectives are AST nodes.  Implication, equivalence and the
comparison shorthands are expanded by the helpers below (and by the parser),
so every formula is built from the eight node types of :data:`Formula`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("constants are naturals")


@dataclass(frozen=True)
class Plus:
    left: "Term"
    right: "Term"


Term = Union[Var, Const, Plus]


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Rel:
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Less:
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


Formula = Union[Exists, Forall, Not, And, Or, Rel, Less, Eq]

TRUE = Eq(Const(0), Const(0))
FALSE = Not(TRUE)


# -- construction helpers ------------------------------------------------------

def var(name: str) -> Var:
    return Var(name)


def term(t) -> Term:
    if isinstance(t, int):
        return Const(t)
    if isinstance(t, str):
        return Var(t)
    return t


def plus(*ts) -> Term:
    ts = [term(t) for t in ts]
    if not ts:
        return Const(0)
    out = ts[0]
    for t in ts[1:]:
        out = Plus(out, t)
    return out


def times(n: int, t) -> Term:
    """``n * t`` as repeated addition."""
    if n < 0:
        raise ValueError("only natural multipliers")
    if n == 0:
        return Const(0)
    return plus(*([term(t)] * n))


def conj(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    if not fs:
        return TRUE
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def disj(fs: Iterable[Formula]) -> Formula:
    fs = list(fs)
    if not fs:
        return FALSE
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def leq(a, b) -> Formula:
    return Less(term(a), Plus(term(b), Const(1)))


def exists(names: Iterable[str], body: Formula) -> Formula:
    for n in reversed(list(names)):
        body = Exists(n, body)
    return body


def forall(names: Iterable[str], body: Formula) -> Formula:
    for n in reversed(list(names)):
        body = Forall(n, body)
    return body


# -- traversal -----------------------------------------------------------------

def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Plus):
        return term_vars(t.left) | term_vars(t.right)
    return set()


def free_vars(phi: Formula) -> set[str]:
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - {phi.var}
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Rel):
        return set().union(*(term_vars(a) for a in phi.args))
    return term_vars(phi.left) | term_vars(phi.right)


def _all_names(phi: Formula) -> set[str]:
    if isinstance(phi, (Exists, Forall)):
        return {phi.var} | _all_names(phi.body)
    if isinstance(phi, Not):
        return _all_names(phi.body)
    if isinstance(phi, (And, Or)):
        return _all_names(phi.left) | _all_names(phi.right)
    return free_vars(phi)


def fresh(base: str, avoid: set[str]) -> str:
    for i in itertools.count():
        cand = f"{base}_{i}"
        if cand not in avoid:
            return cand


def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Plus):
        return Plus(subst_term(t.left, mapping), subst_term(t.right, mapping))
    return t


def substitute(phi: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Capture-avoiding substitution of free variables by terms."""
    mapping = {k: term(v) for k, v in mapping.items()}
    if isinstance(phi, (Exists, Forall)):
        inner = {k: v for k, v in mapping.items() if k != phi.var}
        if not inner:
            return phi
        incoming = set().union(*(term_vars(v) for v in inner.values()))
        v, body = phi.var, phi.body
        if v in incoming:
            new = fresh(v, incoming | _all_names(body) | set(inner))
            body = substitute(body, {v: Var(new)})
            v = new
        return type(phi)(v, substitute(body, inner))
    if isinstance(phi, Not):
        return Not(substitute(phi.body, mapping))
    if isinstance(phi, (And, Or)):
        return type(phi)(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, Rel):
        return Rel(tuple(subst_term(a, mapping) for a in phi.args))
    return type(phi)(subst_term(phi.left, mapping), subst_term(phi.right, mapping))


# -- printing ------------------------------------------------------------------

def show_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return str(t.value)
    right = show_term(t.right)
    if isinstance(t.right, Plus):
        right = f"({right})"
    return f"{show_term(t.left)} + {right}"


def show(phi: Formula) -> str:
    """Concrete syntax accepted by :func:`~.parser.parse`.

    Every compound subformula is parenthesised, so ``parse(show(f)) == f``.
    """
    if isinstance(phi, Exists):
        return f"(exists {phi.var}. {show(phi.body)})"
    if isinstance(phi, Forall):
        return f"(forall {phi.var}. {show(phi.body)})"
    if isinstance(phi, Not):
        return f"!{show(phi.body)}"
    if isinstance(phi, And):
        return f"({show(phi.left)} & {show(phi.right)})"
    if isinstance(phi, Or):
        return f"({show(phi.left)} | {show(phi.right)})"
    if isinstance(phi, Rel):
        return "R(" + ", ".join(show_term(a) for a in phi.args) + ")"
    op = "<" if isinstance(phi, Less) else "="
    return f"{show_term(phi.left)} {op} {show_term(phi.right)}"
