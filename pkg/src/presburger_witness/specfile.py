"""Line-oriented relation spec files.

::

    relation evens dim 1
    linear base (0) periods (2)

    relation tiny dim 2
    table bound 12
    (1,2)
    (3,4)

    relation r1 dim 2
    builtin odd_le_square bound 100000

``#`` starts a comment; blank lines are ignored.
"""
from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from . import oracles
from .errors import SpecError, WitnessError
from .relation import LinearSet, Relation, SemilinearRelation, TableRelation

_HEADER = re.compile(r"relation\s+(\S+)\s+dim\s+(\d+)$")
_BUILTIN = re.compile(r"builtin\s+(\S+)(?:\s+bound\s+(\d+))?$")
_LINEAR = re.compile(r"linear\s+base\s+(\([^)]*\))(?:\s+periods\s*(.*))?$")
_TABLE = re.compile(r"table\s+bound\s+(\d+)$")
_TUPLE = re.compile(r"\(([^)]*)\)")


def _tuple(text: str, lineno: int) -> tuple[int, ...]:
    text = text.strip()
    m = _TUPLE.fullmatch(text)
    body = m.group(1) if m else text
    parts = [p for p in re.split(r"[,\s]+", body.strip()) if p]
    try:
        values = tuple(int(p) for p in parts)
    except ValueError:
        raise SpecError(f"line {lineno}: bad point {text!r}") from None
    if any(v < 0 for v in values):
        raise SpecError(f"line {lineno}: coordinates must be naturals")
    return values


def parse_spec(text: str) -> Relation:
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((n, line))
    if not lines:
        raise SpecError("empty spec")
    n, first = lines[0]
    m = _HEADER.match(first)
    if not m:
        raise SpecError(f"line {n}: expected 'relation <name> dim <d>'")
    name, dim = m.group(1), int(m.group(2))
    if dim < 1:
        raise SpecError(f"line {n}: dimension must be >= 1")
    body = lines[1:]
    if not body:
        raise SpecError("spec has a header but no body")

    n, line = body[0]
    if line.startswith("builtin"):
        m = _BUILTIN.match(line)
        if not m or len(body) > 1:
            raise SpecError(f"line {n}: expected a single 'builtin <name> bound <B>' line")
        bound = int(m.group(2)) if m.group(2) else None
        try:
            rel = oracles.builtin(m.group(1), bound, dim)
        except (KeyError, ValueError) as e:
            raise SpecError(f"line {n}: {e}") from None
        return rel

    if line.startswith("table"):
        m = _TABLE.match(line)
        if not m:
            raise SpecError(f"line {n}: expected 'table bound <B>'")
        bound = int(m.group(1))
        points = []
        for n, line in body[1:]:
            p = _tuple(line, n)
            if len(p) != dim:
                raise SpecError(f"line {n}: point {p} is not {dim}-dimensional")
            points.append(p)
        try:
            return TableRelation(points, dim, bound, name)
        except WitnessError as e:
            raise SpecError(str(e)) from None

    sets = []
    for n, line in body:
        m = _LINEAR.match(line)
        if not m:
            raise SpecError(f"line {n}: expected 'linear base (..) periods (..);(..)'")
        base = _tuple(m.group(1), n)
        periods = []
        if m.group(2) and m.group(2).strip():
            periods = [_tuple(p, n) for p in m.group(2).split(";") if p.strip()]
        if len(base) != dim or any(len(p) != dim for p in periods):
            raise SpecError(f"line {n}: linear set does not have dimension {dim}")
        sets.append(LinearSet(base, tuple(periods)))
    return SemilinearRelation(sets, dim, name)


def load_spec(path: Union[str, Path]) -> Relation:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}") from None
    return parse_spec(text)
