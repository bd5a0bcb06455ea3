"""Recursive-descent parser for the ASCII formula syntax.

EBNF (lowest precedence first)::

    formula  ::= implies { ("<->" | "iff") implies }
    implies  ::= disj [ ("->" | "implies") implies ]
    disj     ::= conj { "|" conj }
    conj     ::= unary { "&" unary }
    unary    ::= "!" unary
               | ("exists" | "forall") ident { "," ident } "." formula
               | "true" | "false"
               | "R" "(" term { "," term } ")"
               | "(" formula ")"
               | term cmp term
    cmp      ::= "=" | "<" | "<=" | ">" | ">=" | "!="
    term     ::= product { "+" product }
    product  ::= atom { "*" atom }          (at most one non-literal factor)
    atom     ::= natural | ident | "(" term ")"

A quantifier body extends as far to the right as possible.  ``->``, ``<->``
and the comparisons other than ``=``/``<`` are expanded into core nodes.
"""
from __future__ import annotations

import re

from ..errors import FormulaSyntaxError
from .ast import (
    FALSE, TRUE, Const, Eq, Exists, Forall, Formula, Less, Not, Or, And, Plus, Rel, Term, Var,
    iff, implies, times,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_']*)|(?P<op><->|->|<=|>=|!=|[<>=+*(),.&|!]))"
)
_KEYWORDS = {"exists", "forall", "implies", "iff", "true", "false", "R"}
_CMP = {"=", "<", "<=", ">", ">=", "!="}


def _tokenize(text: str):
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip():
                raise FormulaSyntaxError(f"unexpected character {rest.strip()[0]!r}",
                                         pos + len(rest) - len(rest.lstrip()))
            break
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, value) -> bool:
        kind, v, _ = self.tok
        return kind != "num" and v == value

    def take(self, value=None):
        kind, v, pos = self.tok
        if value is not None and (kind == "num" or v != value):
            raise FormulaSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)
        self.i += 1
        return v

    def fail(self, what):
        kind, v, pos = self.tok
        raise FormulaSyntaxError(f"expected {what}, found {v or 'end of input'!r}", pos)

    # formulas

    def formula(self) -> Formula:
        left = self.implication()
        while self.peek("<->") or self.peek("iff"):
            self.take()
            left = iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek("->") or self.peek("implies"):
            self.take()
            return implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek("|"):
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek("&"):
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, v, pos = self.tok
        if kind == "op" and v == "!":
            self.take()
            return Not(self.unary())
        if kind == "id" and v in ("exists", "forall"):
            self.take()
            names = [self.ident()]
            while self.peek(","):
                self.take()
                names.append(self.ident())
            self.take(".")
            body = self.formula()
            node = Exists if v == "exists" else Forall
            for n in reversed(names):
                body = node(n, body)
            return body
        if kind == "id" and v == "true":
            self.take()
            return TRUE
        if kind == "id" and v == "false":
            self.take()
            return FALSE
        if kind == "id" and v == "R":
            self.take()
            self.take("(")
            args = [self.term()]
            while self.peek(","):
                self.take()
                args.append(self.term())
            self.take(")")
            return Rel(tuple(args))
        if kind == "op" and v == "(":
            save = self.i
            try:
                self.take("(")
                inner = self.formula()
                self.take(")")
                if not (self.tok[0] == "op" and self.tok[1] in _CMP | {"+", "*"}):
                    return inner
            except FormulaSyntaxError:
                pass
            self.i = save
        return self.comparison()

    def comparison(self) -> Formula:
        left = self.term()
        kind, op, pos = self.tok
        if kind != "op" or op not in _CMP:
            self.fail("a comparison operator")
        self.take()
        right = self.term()
        if op == "=":
            return Eq(left, right)
        if op == "<":
            return Less(left, right)
        if op == "<=":
            return Less(left, Plus(right, Const(1)))
        if op == ">":
            return Less(right, left)
        if op == ">=":
            return Less(right, Plus(left, Const(1)))
        return Not(Eq(left, right))

    def ident(self) -> str:
        kind, v, pos = self.tok
        if kind != "id" or v in _KEYWORDS:
            self.fail("a variable name")
        self.take()
        return v

    # terms

    def term(self) -> Term:
        left = self.product()
        while self.peek("+"):
            self.take()
            left = Plus(left, self.product())
        return left

    def product(self) -> Term:
        kind, v, pos = self.tok
        factors = [self.atom()]
        while self.peek("*"):
            self.take()
            factors.append(self.atom())
        if len(factors) == 1:
            return factors[0]
        consts = [f.value for f in factors if isinstance(f, Const)]
        others = [f for f in factors if not isinstance(f, Const)]
        if len(others) > 1:
            raise FormulaSyntaxError("multiplication needs a literal factor", pos)
        n = 1
        for c in consts:
            n *= c
        return Const(n) if not others else times(n, others[0])

    def atom(self) -> Term:
        kind, v, pos = self.tok
        if kind == "num":
            self.take()
            return Const(int(v))
        if kind == "id" and v not in _KEYWORDS:
            self.take()
            return Var(v)
        if kind == "op" and v == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        self.fail("a term")


def parse(text: str) -> Formula:
    p = _Parser(text)
    phi = p.formula()
    if p.tok[0] != "eof":
        p.fail("end of input")
    return phi


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok[0] != "eof":
        p.fail("end of input")
    return t
