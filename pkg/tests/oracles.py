"""Independent brute-force oracles used only by the tests."""
from __future__ import annotations

from itertools import combinations
from typing import List, Sequence

import numpy as np

from bicyclic_energy.charpoly import charpoly_by_recursion
from bicyclic_energy.graphs import P66, R, Graph
from bicyclic_energy.polynomial import IntPoly, bipartite_positive_form


def _connected_bipartite(n: int, edges: Sequence) -> bool:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    color = [-1] * n
    color[0] = 0
    stack = [0]
    seen = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if color[w] == -1:
                color[w] = 1 - color[u]
                seen += 1
                stack.append(w)
            elif color[w] == color[u]:
                return False
    return seen == n


def _invariant(n: int, edges) -> tuple:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    nd = [[] for _ in range(n)]
    for u, v in edges:
        nd[u].append(deg[v])
        nd[v].append(deg[u])
    return tuple(sorted((deg[v], tuple(sorted(nd[v]))) for v in range(n)))


def _iso_exhaustive(n: int, e1: frozenset, e2: frozenset) -> bool:
    """Search every bijection, pruning partial maps that break adjacency or degree."""
    a1 = [set() for _ in range(n)]
    a2 = [set() for _ in range(n)]
    for u, v in e1:
        a1[u].add(v)
        a1[v].add(u)
    for u, v in e2:
        a2[u].add(v)
        a2[v].add(u)
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for c in range(n):
            if used[c] or len(a2[c]) != len(a1[v]):
                continue
            if any((image[w] in a2[c]) != (w in a1[v]) for w in range(v)):
                continue
            image[v] = c
            used[c] = True
            if extend(v + 1):
                return True
            used[c] = False
            image[v] = -1
        return False

    return extend(0)


def naive_bipartite_bicyclic(n: int) -> List[Graph]:
    """Every labelled graph with n+1 edges covering all vertices, filtered, deduplicated by exhaustive isomorphism search."""
    pairs = list(combinations(range(n), 2))
    full = (1 << n) - 1
    cover = [(1 << u) | (1 << v) for u, v in pairs]
    reps = {}
    for idx in combinations(range(len(pairs)), n + 1):
        mask = 0
        for i in idx:
            mask |= cover[i]
        if mask != full:
            continue
        edges = [pairs[i] for i in idx]
        if not _connected_bipartite(n, edges):
            continue
        es = frozenset(edges)
        bucket = reps.setdefault(_invariant(n, edges), [])
        if not any(_iso_exhaustive(n, es, other) for other in bucket):
            bucket.append(es)
    return [Graph(n, es) for bucket in reps.values() for es in bucket]


def all_graphs_up_to_iso(n: int) -> List[Graph]:
    """All graphs on n vertices up to isomorphism (exhaustive; n <= 5)."""
    pairs = list(combinations(range(n), 2))
    reps: List[frozenset] = []
    for mask in range(1 << len(pairs)):
        es = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        if not any(len(es) == len(o) and _iso_exhaustive(n, es, o) for o in reps):
            reps.append(es)
    return [Graph(n, es) for es in reps]


def det_float(m) -> float:
    return float(np.linalg.det(np.array(m, dtype=float)))


def float_energy(g: Graph) -> float:
    """Energy from a dense symmetric eigensolve."""
    return float(np.abs(np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float))).sum())


def exact_K_poly(n: int, t: int) -> IntPoly:
    """K(n, t, x) as an integer polynomial in x, from exact characteristic polynomials.

    With ``B(G)(x) = i^-|G| phi(G, ix)`` (integer coefficients for bipartite G),
    ``K = B(R_{n+4-t,t}) B(P66_n) - B(P66_{n+4}) B(R_{n-t,t})``.
    """
    b = lambda spec: bipartite_positive_form(charpoly_by_recursion(spec))
    return b(R(n + 4 - t, t)) * b(P66(n)) - b(P66(n + 4)) * b(R(n - t, t))


def complex_normalized(coeffs_low_first: Sequence[int], x, ctx):
    """``i^(-n) p(i x)`` by straightforward complex Horner in an mpmath context."""
    n = len(coeffs_low_first) - 1
    z = ctx.mpc(0, x)
    acc = ctx.mpc(0)
    for c in reversed(coeffs_low_first):
        acc = acc * z + c
    return acc * ctx.power(ctx.mpc(0, 1), -n)


def brute_matchings(g: Graph, k: int) -> int:
    count = 0
    for sub in combinations(sorted(g.edges), k):
        verts = [v for e in sub for v in e]
        if len(set(verts)) == 2 * k:
            count += 1
    return count


def scan_pairs(max_sum: int):
    """(a, b) with a <= b, a, b >= 10, a = b = 2 mod 4, a + b <= max_sum, by plain double loop."""
    out = []
    for a in range(10, max_sum + 1):
        for b in range(a, max_sum + 1):
            if a % 4 == 2 and b % 4 == 2 and a + b <= max_sum:
                out.append((a, b))
    return out
