"""Vectorised search for corners whose cube cannot be shifted.

For a radius ``K`` and a shift bound ``S`` the scan walks the box
``[0, limit]^d`` in bands of axis-0 rows.  For each band it packs every cube
into bit words, then computes for each corner the smallest ``max|r|`` of a
nonzero shift ``r`` that preserves the cube (``S + 1`` when none does).  A
corner is not s-shiftable iff that radius exceeds ``s``.

Rows are visited in increasing order and ``np.nonzero`` lists cells in
C order, so the first hit for a given ``(s, t)`` is the lexicographically
least corner.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Optional

import numpy as np

from .relation import Point, Relation

MAX_BAND_CELLS = 1 << 22


def ring(m: int, d: int):
    """Shift vectors with ``max|r| == m``."""
    for r in itertools.product(range(-m, m + 1), repeat=d):
        if max(abs(v) for v in r) == m:
            yield r


def search_limit(relation: Relation, K: int, s_max: int, coord_bound: int) -> int:
    """Largest corner coordinate whose cube and shifts stay inside the bound."""
    if relation.bound is None:
        return coord_bound
    return min(coord_bound, relation.bound - K - s_max)


def _pack(G: np.ndarray, K: int, shape: tuple[int, ...]) -> list[np.ndarray]:
    d = G.ndim
    nbits = (K + 1) ** d
    words = [np.zeros(shape, dtype=np.uint64) for _ in range((nbits + 63) // 64)]
    for c, y in enumerate(itertools.product(range(K + 1), repeat=d)):
        sl = tuple(slice(v, v + n) for v, n in zip(y, shape))
        words[c // 64] |= G[sl].astype(np.uint64) << np.uint64(c % 64)
    return words


def _shift_equal(words, offset, cells, r) -> np.ndarray:
    """eq[j] iff the cube at cell j equals the cube at cell j + r (False off the array)."""
    shape = words[0].shape
    out = np.zeros(cells, dtype=bool)
    src, dst, tgt = [], [], []
    for o, n, P, v in zip(offset, cells, shape, r):
        lo = max(0, -v - o)
        hi = min(n, P - o - v)
        if lo >= hi:
            return out
        dst.append(slice(lo, hi))
        src.append(slice(o + lo, o + hi))
        tgt.append(slice(o + lo + v, o + hi + v))
    src, dst, tgt = tuple(src), tuple(dst), tuple(tgt)
    eq = words[0][src] == words[0][tgt]
    for w in words[1:]:
        eq &= w[src] == w[tgt]
    out[dst] = eq
    return out


def shift_radius(relation: Relation, K: int, S: int, a: int, b: int, limit: int) -> np.ndarray:
    """Radius array for corners with axis-0 in ``[a, b]`` and other coordinates in ``[0, limit]``."""
    d = relation.dimension
    pa = max(a - S, 0)
    lo = (pa,) + (0,) * (d - 1)
    hi = (b + S + K,) + (limit + S + K,) * (d - 1)
    G = relation.grid(lo, hi)
    shape = (b + S - pa + 1,) + (limit + S + 1,) * (d - 1)
    words = _pack(G, K, shape)
    offset = (a - pa,) + (0,) * (d - 1)
    cells = (b - a + 1,) + (limit + 1,) * (d - 1)

    rad = np.full(cells, S + 1, dtype=np.int16)
    for r in ring(1, d):
        rad[_shift_equal(words, offset, cells, r)] = 1
    idx = np.nonzero(rad > 1)
    for m in range(2, S + 1):
        if not len(idx[0]):
            break
        for r in ring(m, d):
            tgt = [i + o + v for i, o, v in zip(idx, offset, r)]
            ok = np.ones(len(idx[0]), dtype=bool)
            for t, P in zip(tgt, shape):
                ok &= (t >= 0) & (t < P)
            if not ok.any():
                continue
            src = tuple(i[ok] + o for i, o in zip(idx, offset))
            dst = tuple(t[ok] for t in tgt)
            eq = np.ones(int(ok.sum()), dtype=bool)
            for w in words:
                eq &= w[src] == w[dst]
            hit = np.flatnonzero(ok)[eq]
            rad[tuple(i[hit] for i in idx)] = np.minimum(rad[tuple(i[hit] for i in idx)], m)
        keep = rad[idx] > m
        idx = tuple(i[keep] for i in idx)
    return rad


def scan_corners(
    relation: Relation,
    K: int,
    s_values: Iterable[int],
    t_values: Iterable[int],
    limit: int,
    max_cells: int = MAX_BAND_CELLS,
) -> dict[tuple[int, int], Optional[Point]]:
    """Lexicographically least non-s-shiftable corner with all coordinates >= t.

    Returns ``{(s, t): corner or None}``; ``None`` means no corner exists in
    ``[t, limit]^d``.
    """
    s_values = sorted(set(s_values))
    t_values = sorted(set(t_values))
    result: dict[tuple[int, int], Optional[Point]] = {(s, t): None for s in s_values for t in t_values}
    pending = {(s, t) for s, t in result if t <= limit}
    if not pending or limit < 0:
        return result
    d = relation.dimension
    S = max(s_values)
    row_cells = (limit + 1) ** (d - 1)
    a = min(t for _, t in pending)
    h = 16
    while pending and a <= limit:
        b = min(limit, a + h - 1)
        rad = shift_radius(relation, K, S, a, b, limit)
        for s in s_values:
            ts = sorted(t for s2, t in pending if s2 == s)
            if not ts:
                continue
            idx = np.nonzero(rad > s)
            if not len(idx[0]):
                continue
            coords = np.stack(idx, axis=1).astype(np.int64)
            coords[:, 0] += a
            mins = coords.min(axis=1)
            for t in ts:
                hit = np.flatnonzero(mins >= t)
                if len(hit):
                    result[(s, t)] = tuple(int(v) for v in coords[hit[0]])
                    pending.discard((s, t))
        a = b + 1
        h = max(1, min(h * 2, max_cells // row_cells))
    return result
