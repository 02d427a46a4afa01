"""Simple undirected graphs, the graph families studied here, and edge-list I/O.

Vertex layouts are fixed so that golden tests are stable:

* ``Path(n)``: ``0 - 1 - ... - (n-1)``.
* ``Cycle(n)``: the path plus ``(0, n-1)``.
* ``PyloneCycle(n, l)``: cycle on ``0..l-1``; pendant path ``l-1, l, ..., n-1``.
* ``P66(n)``: hexagon on ``0..5``, hexagon on ``n-6..n-1``, and the chain
  ``5, 6, ..., n-6`` joining them (a single bridge ``5 - 6`` when ``n = 12``).
* ``R(a, b)``: cycle on ``0..a-1``, cycle on ``a..a+b-1``, bridge ``(a-1, a)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple, Union

from .errors import ParameterDomainError

Edge = Tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: FrozenSet[Edge]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            clean.add(_norm(u, v))
        object.__setattr__(self, "edges", frozenset(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        edges = list(edges)
        normed = [_norm(u, v) for u, v in edges]
        if len(set(normed)) != len(normed):
            raise ValueError("duplicate edge")
        return cls(n, frozenset(normed))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def adjacency_matrix(self) -> List[List[int]]:
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def degrees(self) -> List[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    def remove_edge(self, u: int, v: int) -> "Graph":
        e = _norm(u, v)
        if e not in self.edges:
            raise ValueError(f"edge {e} not in graph")
        return Graph(self.n, self.edges - {e})

    def remove_vertices(self, drop: Iterable[int]) -> "Graph":
        """Delete vertices and relabel the survivors in increasing order."""
        drop = set(drop)
        keep = [v for v in range(self.n) if v not in drop]
        new = {v: i for i, v in enumerate(keep)}
        return Graph(
            len(keep),
            frozenset(_norm(new[u], new[v]) for u, v in self.edges if u in new and v in new),
        )

    def relabel(self, perm: List[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        return Graph(self.n, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges))

    def components(self) -> List[List[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: List[int]) -> "Graph":
        keep = set(vertices)
        return self.remove_vertices(v for v in range(self.n) if v not in keep)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


def disjoint_union(*graphs: Graph) -> Graph:
    edges = set()
    offset = 0
    for g in graphs:
        edges.update((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, frozenset(edges))


# -- families -----------------------------------------------------------------

@dataclass(frozen=True)
class Path:
    n: int

    def validate(self):
        if self.n < 1:
            raise ParameterDomainError(f"Path needs n >= 1, got n={self.n}")


@dataclass(frozen=True)
class Cycle:
    n: int

    def validate(self):
        if self.n < 3:
            raise ParameterDomainError(f"Cycle needs n >= 3, got n={self.n}")


@dataclass(frozen=True)
class PyloneCycle:
    """``C_l`` with a pendant path, ``n`` vertices in total."""

    n: int
    ell: int

    def validate(self):
        if self.ell < 3:
            raise ParameterDomainError(f"PyloneCycle needs ell >= 3, got ell={self.ell}")
        if self.n < self.ell:
            raise ParameterDomainError(f"PyloneCycle needs n >= ell, got n={self.n}, ell={self.ell}")


@dataclass(frozen=True)
class P66:
    n: int

    def validate(self):
        if self.n < 12:
            raise ParameterDomainError(f"P66 needs n >= 12, got n={self.n}")


@dataclass(frozen=True)
class R:
    """Two cycles ``C_a`` and ``C_b`` joined by a bridge."""

    a: int
    b: int

    def validate(self):
        if self.a < 3 or self.b < 3:
            raise ParameterDomainError(f"R needs a >= 3 and b >= 3, got a={self.a}, b={self.b}")

    @property
    def n(self) -> int:
        return self.a + self.b


FamilySpec = Union[Path, Cycle, PyloneCycle, P66, R]


def _cycle_edges(start: int, length: int) -> List[Edge]:
    return [(start + i, start + (i + 1) % length) for i in range(length)]


def build(spec: FamilySpec) -> Graph:
    spec.validate()
    if isinstance(spec, Path):
        return Graph(spec.n, frozenset((i, i + 1) for i in range(spec.n - 1)))
    if isinstance(spec, Cycle):
        return Graph.from_edges(spec.n, _cycle_edges(0, spec.n))
    if isinstance(spec, PyloneCycle):
        edges = _cycle_edges(0, spec.ell)
        edges += [(i, i + 1) for i in range(spec.ell - 1, spec.n - 1)]
        return Graph.from_edges(spec.n, edges)
    if isinstance(spec, P66):
        n = spec.n
        edges = _cycle_edges(0, 6)
        edges += [(n - 6 + i, n - 6 + (i + 1) % 6) for i in range(6)]
        edges += [(i, i + 1) for i in range(5, n - 6)]
        return Graph.from_edges(n, edges)
    if isinstance(spec, R):
        a, b = spec.a, spec.b
        edges = _cycle_edges(0, a) + [(a + i, a + (i + 1) % b) for i in range(b)]
        edges.append((a - 1, a))
        return Graph.from_edges(a + b, edges)
    raise TypeError(f"unknown family spec {spec!r}")


# -- predicates ---------------------------------------------------------------

def two_coloring(g: Graph) -> Optional[List[int]]:
    """A proper 2-coloring, or ``None`` when the graph has an odd cycle."""
    adj = g.adjacency()
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def is_bicyclic(g: Graph) -> bool:
    return g.is_connected() and g.m == g.n + 1


def is_tree(g: Graph) -> bool:
    return g.is_connected() and g.m == g.n - 1


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(g.components())


# -- edge-list text format ----------------------------------------------------

class EdgeListParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines of ``"u v"``; blank and ``#`` lines are skipped."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise EdgeListParseError(1, "missing 'n m' header")

    def ints(lineno, line):
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, f"expected two integers, got {line!r}")
        try:
            return int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"expected two integers, got {line!r}") from None

    hl, header = rows[0]
    n, m = ints(hl, header)
    if n < 0 or m < 0:
        raise EdgeListParseError(hl, "negative count in header")
    body = rows[1:]
    seen = set()
    for lineno, line in body:
        u, v = ints(lineno, line)
        if u == v:
            raise EdgeListParseError(lineno, f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListParseError(lineno, f"vertex out of range 0..{n - 1}")
        e = _norm(u, v)
        if e in seen:
            raise EdgeListParseError(lineno, f"duplicate edge {e}")
        seen.add(e)
    if len(body) != m:
        last = body[-1][0] if body else hl
        raise EdgeListParseError(last, f"header declares {m} edges, found {len(body)}")
    return Graph(n, frozenset(seen))


def cycles_through_edge(g: Graph, u: int, v: int) -> Iterator[List[int]]:
    """All cycles containing edge ``uv``, each as a vertex list starting at ``u`` and ending at ``v``."""
    adj = g.adjacency()
    path = [u]
    on_path = {u}

    def dfs(x: int) -> Iterator[List[int]]:
        for w in adj[x]:
            if x == u and w == v:
                continue
            if w == v:
                if len(path) >= 2:
                    yield path + [v]
                continue
            if w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from dfs(w)
                path.pop()
                on_path.discard(w)

    yield from dfs(u)
