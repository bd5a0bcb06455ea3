"""Direct reference searches used as oracles by the test suite.

Everything here works on plain membership sets and nested loops, sharing no
search code with the library.
"""
import itertools


def members_of(relation, limit):
    d = relation.dimension
    return {p for p in itertools.product(range(limit + 1), repeat=d) if relation.contains(p)}


def cube(mem, x, k):
    d = len(x)
    return frozenset(y for y in itertools.product(range(k + 1), repeat=d)
                     if tuple(a + b for a, b in zip(x, y)) in mem)


def shiftable(mem, s, k, x):
    base = cube(mem, x, k)
    for r in itertools.product(range(-s, s + 1), repeat=len(x)):
        if any(r) and min(a + b for a, b in zip(x, r)) >= 0:
            if cube(mem, tuple(a + b for a, b in zip(x, r)), k) == base:
                return True
    return False


def least_corner(mem, s, k, t, limit, d):
    # itertools.product enumerates in lexicographic order, coordinate 0 first
    for c in itertools.product(range(t, limit + 1), repeat=d):
        if not shiftable(mem, s, k, c):
            return c
    return None


def limit_for(bound, K, s, budget):
    top = budget.coord_bound
    if bound is not None:
        top = min(top, bound - K - max(s, budget.max_s))
    return top


def find_k(mem, bound, d, s, budget):
    """(K, corners) with the least K that has a corner for every sampled t, or None."""
    for K in range(budget.max_k + 1):
        lim = limit_for(bound, K, s, budget)
        corners = {}
        for t in budget.samples():
            c = least_corner(mem, s, K, t, lim, d) if t <= lim else None
            if c is None:
                break
            corners[t] = c
        else:
            return K, corners
    return None


def increasing_indices(values_by_coord, W):
    """Restrict [0, W - 1] by each coordinate sequence in turn.

    After restricting by f, an index t stays iff f is larger at every later
    index that survived the previous steps (index W is only a comparison point).
    """
    keep = list(range(W + 1))
    for f in values_by_coord:
        keep = [t for t in keep if all(f[u] > f[t] for u in keep if u > t)]
    return [t for t in keep if t < W]


def shiftable_table(relation, s, k, L):
    """{corner: shiftable} for every corner of [0, L]^d, by direct loops over the shifts."""
    d = relation.dimension
    mem = members_of(relation, L + k + s)
    cubes = {p: cube(mem, p, k) for p in itertools.product(range(L + s + 1), repeat=d)}
    shifts = [r for r in itertools.product(range(-s, s + 1), repeat=d) if any(r)]
    table = {}
    for p in itertools.product(range(L + 1), repeat=d):
        c = cubes[p]
        table[p] = any(
            cubes[q] == c
            for q in (tuple(a + b for a, b in zip(p, r)) for r in shifts)
            if min(q) >= 0
        )
    return table, cubes


def first_unshiftable(table, t, L, d):
    for c in itertools.product(range(t, L + 1), repeat=d):
        if not table[c]:
            return c
    return None


def pipeline_norms(relation, s, budget):
    """Norm set of the construction for one s, recomputed from scratch.

    Returns (K, corners, T, I, X, N) or None when no K fits the budget.
    """
    d = relation.dimension
    bound = relation.bound
    for K in range(budget.max_k + 1):
        L = limit_for(bound, K, s, budget)
        table, cubes = shiftable_table(relation, s, K, L)
        if all(t <= L and first_unshiftable(table, t, L, d) is not None for t in budget.samples()):
            break
    else:
        return None
    corners = []
    for t in range(budget.max_t + 1):
        c = first_unshiftable(table, t, L, d) if t <= L else None
        if c is None:
            break
        corners.append(c)
    W = len(corners) - 1
    T = increasing_indices([[c[i] for c in corners] for i in range(d)], W)
    seq = [cubes[corners[t]] for t in T]
    counts = {}
    for v in seq:
        counts[v] = counts.get(v, 0) + 1
    I = next(v for v in seq if counts[v] >= budget.theta)
    X = [t for t in T if cubes[corners[t]] == I]
    N = [sum(corners[t]) for t in X]
    return K, corners, T, I, X, N
