from .ast import (
    And, Const, Eq, Exists, Forall, Formula, Less, Not, Or, Plus, Rel, Term, Var,
    free_vars, show, substitute, times,
)
from .evaluator import BoundedStructure, eval_bounded
from .parser import parse, parse_term
from .schemas import (
    build_beta, build_ite, build_min, build_min_indexed, build_min_pair,
    build_sigma, build_varsigma, point_assignment, shift_assignment,
)

__all__ = [
    "And", "Const", "Eq", "Exists", "Forall", "Formula", "Less", "Not", "Or", "Plus", "Rel",
    "Term", "Var", "free_vars", "show", "substitute", "times",
    "BoundedStructure", "eval_bounded", "parse", "parse_term",
    "build_beta", "build_ite", "build_min", "build_min_indexed", "build_min_pair",
    "build_sigma", "build_varsigma", "point_assignment", "shift_assignment",
]
