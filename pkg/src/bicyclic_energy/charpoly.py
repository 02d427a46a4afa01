"""Characteristic polynomials of graphs, computed several independent ways.

``charpoly_direct`` is the reference: ``det(kI - A)`` at ``n + 1`` integer
points by fraction-free elimination, followed by exact interpolation. The
other routes (family recursions, edge deletion, component products) are
checked against it.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, FrozenSet, List, Sequence, Tuple

from .errors import ParameterDomainError
from .graphs import (
    P66,
    Cycle,
    FamilySpec,
    Graph,
    Path,
    PyloneCycle,
    R,
    cycles_through_edge,
)
from .polynomial import IntPoly

X = IntPoly.x()
ONE = IntPoly.constant(1)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def interpolate_integer_points(values: Sequence[int]) -> IntPoly:
    """Integer polynomial of degree < len(values) taking ``values[k]`` at ``x = k``.

    Newton forward differences; ``Δ^j p(0)`` is divisible by ``j!`` for an
    integer-coefficient polynomial, so all arithmetic stays in ``Z``.
    """
    diffs = list(values)
    newton = []
    for j in range(len(values)):
        newton.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    result = IntPoly()
    falling = ONE
    fact = 1
    for j, dj in enumerate(newton):
        if j:
            falling = falling * IntPoly((-(j - 1), 1))
            fact *= j
        q, r = divmod(dj, fact)
        if r:
            raise ArithmeticError("interpolation data is not from an integer polynomial")
        result = result + falling * q
    return result


def charpoly_direct(g: Graph) -> IntPoly:
    """``det(xI - A(g))`` exactly."""
    n = g.n
    if n == 0:
        return ONE
    adj = g.adjacency_matrix()
    values = []
    for k in range(n + 1):
        m = [[(k if i == j else 0) - adj[i][j] for j in range(n)] for i in range(n)]
        values.append(bareiss_det(m))
    return interpolate_integer_points(values)


# -- family recursions --------------------------------------------------------

def path_polys(upto: int) -> List[IntPoly]:
    """``[phi(P_0), ..., phi(P_upto)]`` with ``phi(P_0) = 1``."""
    polys = [ONE, X]
    for _ in range(2, upto + 1):
        polys.append(X * polys[-1] - polys[-2])
    return polys[: upto + 1]


def _cycle_poly(k: int, paths: List[IntPoly]) -> IntPoly:
    return paths[k] - paths[k - 2] - 2


def _pylone_polys(ell: int, upto: int, paths: List[IntPoly]) -> List[IntPoly]:
    """``phi(P^ell_m)`` for ``m = ell..upto`` (index ``m - ell``)."""
    c = _cycle_poly(ell, paths)
    polys = [c]
    if upto > ell:
        polys.append(X * c - paths[ell - 1])
    for _ in range(ell + 2, upto + 1):
        polys.append(X * polys[-1] - polys[-2])
    return polys


def charpoly_by_recursion(spec: FamilySpec) -> IntPoly:
    """Characteristic polynomial of a family member from three-term recursions.

    Bridge joins use ``phi(G) = phi(G1) phi(G2) - phi(G1 - u) phi(G2 - v)``.
    The P66 family starts from n = 12, 13 and then obeys
    ``f(n) = x f(n-1) - f(n-2)``.
    """
    spec.validate()
    if isinstance(spec, Path):
        return path_polys(spec.n)[spec.n]
    if isinstance(spec, Cycle):
        return _cycle_poly(spec.n, path_polys(spec.n))
    if isinstance(spec, PyloneCycle):
        paths = path_polys(spec.ell)
        return _pylone_polys(spec.ell, spec.n, paths)[spec.n - spec.ell]
    if isinstance(spec, P66):
        paths = path_polys(6)
        c6, p5 = _cycle_poly(6, paths), paths[5]
        f12 = c6 * c6 - p5 * p5
        f13 = c6 * _pylone_polys(6, 7, paths)[1] - p5 * c6
        seq = [f12, f13]
        for _ in range(14, spec.n + 1):
            seq.append(X * seq[-1] - seq[-2])
        return seq[spec.n - 12]
    if isinstance(spec, R):
        paths = path_polys(max(spec.a, spec.b))
        ca, cb = _cycle_poly(spec.a, paths), _cycle_poly(spec.b, paths)
        return ca * cb - paths[spec.a - 1] * paths[spec.b - 1]
    raise TypeError(f"unknown family spec {spec!r}")


# -- edge deletion ------------------------------------------------------------

class _Expander:
    """Memoised edge-deletion expansion over subgraphs kept in original labels."""

    def __init__(self, g: Graph):
        self.g = g
        self.adj = [set(nb) for nb in g.adjacency()]
        self.memo: Dict[Tuple[FrozenSet[int], FrozenSet[Tuple[int, int]]], IntPoly] = {}

    def induced_edges(self, verts: FrozenSet[int]) -> FrozenSet[Tuple[int, int]]:
        return frozenset((u, v) for u, v in self.g.edges if u in verts and v in verts)

    def poly(self, verts: FrozenSet[int], edges: FrozenSet[Tuple[int, int]]) -> IntPoly:
        result = ONE
        for cv, ce in _split_components(verts, edges):
            result = result * self._component(cv, ce)
        return result

    def _component(self, verts, edges) -> IntPoly:
        key = (verts, edges)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        if not edges:
            out = IntPoly.monomial(len(verts))
        else:
            deg: Dict[int, int] = {}
            for u, v in edges:
                deg[u] = deg.get(u, 0) + 1
                deg[v] = deg.get(v, 0) + 1
            leaf = next((v for v in sorted(verts) if deg.get(v, 0) == 1), None)
            if leaf is not None:
                u = next(a if b == leaf else b for a, b in edges if leaf in (a, b))
                rest = verts - {leaf}
                both = rest - {u}
                out = X * self.poly(rest, _restrict(edges, rest)) - self.poly(both, _restrict(edges, both))
            else:
                u, v = min(edges)
                out = self.expand_at(verts, edges, u, v)
        self.memo[key] = out
        return out

    def expand_at(self, verts, edges, u: int, v: int) -> IntPoly:
        e = (u, v) if u < v else (v, u)
        without = edges - {e}
        both = verts - {u, v}
        out = self.poly(verts, without) - self.poly(both, _restrict(edges, both))
        sub = Graph(self.g.n, edges)
        for cyc in cycles_through_edge(sub, u, v):
            left = verts - set(cyc)
            out = out - 2 * self.poly(left, _restrict(edges, left))
        return out


def _restrict(edges, verts):
    return frozenset(e for e in edges if e[0] in verts and e[1] in verts)


def _split_components(verts: FrozenSet[int], edges: FrozenSet[Tuple[int, int]]):
    adj: Dict[int, List[int]] = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = set()
    for s in sorted(verts):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        fc = frozenset(comp)
        yield fc, _restrict(edges, fc)


def edge_deletion_recursion(g: Graph, e: Tuple[int, int]) -> IntPoly:
    """Expand ``phi(g)`` at edge ``e`` via ``phi(G-uv) - phi(G-u-v) - 2 sum_C phi(G-C)``.

    Sub-polynomials are themselves obtained by recursive expansion (pendant
    edges first, then edges of the remaining 2-core), never by determinants.
    """
    u, v = e
    if not g.has_edge(u, v):
        raise ParameterDomainError(f"edge {e} is not in the graph")
    ex = _Expander(g)
    verts = frozenset(range(g.n))
    return ex.expand_at(verts, g.edges, u, v)


def component_product(g: Graph) -> IntPoly:
    """Product of the direct characteristic polynomials of the connected components."""
    result = ONE
    for comp in g.components():
        result = result * charpoly_direct(g.induced(comp))
    return result


# -- matchings ----------------------------------------------------------------

def matching_numbers(g: Graph) -> List[int]:
    """``[m(g, 0), m(g, 1), ...]``: counts of k-edge matchings."""

    @lru_cache(maxsize=None)
    def rec(edges: FrozenSet[Tuple[int, int]]) -> Tuple[int, ...]:
        if not edges:
            return (1,)
        e = min(edges)
        u, v = e
        without = rec(edges - {e})
        kept = rec(frozenset(f for f in edges if u not in f and v not in f))
        out = list(without) + [0] * max(0, len(kept) + 1 - len(without))
        for k, c in enumerate(kept):
            out[k + 1] += c
        return tuple(out)

    return list(rec(g.edges))


def matching_count(g: Graph, k: int) -> int:
    if k < 0:
        return 0
    counts = matching_numbers(g)
    return counts[k] if k < len(counts) else 0
