"""Exact canonical labelling by colour refinement and individualisation.

The canonical form of a graph is the lexicographically smallest sorted edge
list over all leaves of the individualisation-refinement search tree.
Branches that differ only by swapping two twin vertices (same neighbourhood
apart from each other) are pruned, since that swap is an automorphism fixing
everything individualised so far.
"""
from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .graphs import Graph

CanonicalForm = Tuple[int, Tuple[Tuple[int, int], ...]]


def _refine(cells: List[List[int]], adj: List[List[int]]) -> List[List[int]]:
    """Split cells until every vertex in a cell sees the same number of neighbours in each cell."""
    while True:
        where = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                where[v] = ci
        new_cells: List[List[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig: Dict[Tuple, List[int]] = {}
            for v in cell:
                counts: Dict[int, int] = {}
                for w in adj[v]:
                    cw = where[w]
                    counts[cw] = counts.get(cw, 0) + 1
                sig.setdefault(tuple(sorted(counts.items())), []).append(v)
            if len(sig) > 1:
                changed = True
                for key in sorted(sig):
                    new_cells.append(sig[key])
            else:
                new_cells.append(cell)
        cells = new_cells
        if not changed:
            return cells


def _twins(v: int, w: int, nbr: List[set]) -> bool:
    return (nbr[v] - {w}) == (nbr[w] - {v})


def canonical_labeling(g: Graph) -> Tuple[List[int], CanonicalForm]:
    """Return ``(perm, form)`` where relabelling ``g`` by ``perm`` yields ``form``."""
    n = g.n
    adj = g.adjacency()
    nbr = [set(a) for a in adj]
    edges = list(g.edges)
    best: List[Optional[Tuple]] = [None, None]

    def leaf(cells):
        perm = [0] * n
        for pos, cell in enumerate(cells):
            perm[cell[0]] = pos
        cert = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in edges))
        if best[0] is None or cert < best[0]:
            best[0], best[1] = cert, perm

    def search(cells):
        cells = _refine(cells, adj)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaf(cells)
            return
        cell = cells[target]
        tried: List[int] = []
        for v in cell:
            if any(_twins(v, u, nbr) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1:])

    if n == 0:
        return [], (0, ())
    # initial colouring by degree keeps the cell order label-independent
    by_deg: Dict[int, List[int]] = {}
    for v in range(n):
        by_deg.setdefault(len(adj[v]), []).append(v)
    search([by_deg[d] for d in sorted(by_deg)])
    return best[1], (n, best[0])


def canonical_form(g: Graph) -> CanonicalForm:
    return canonical_labeling(g)[1]


def canonical_graph(g: Graph) -> Graph:
    n, edges = canonical_form(g)
    return Graph(n, frozenset(edges))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


def automorphisms(g: Graph) -> List[List[int]]:
    """All automorphisms of ``g`` by backtracking (fine for the small cores used in enumeration)."""
    n = g.n
    adj = g.adjacency()
    nbr = [set(a) for a in adj]
    deg = [len(a) for a in adj]
    # vertex order: BFS from each component's first vertex so most choices are forced
    order: List[int] = []
    seen = set()
    for s in range(n):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    out: List[List[int]] = []
    image = [-1] * n
    used = [False] * n

    def extend(i: int):
        if i == n:
            out.append(list(image))
            return
        v = order[i]
        placed = [w for w in nbr[v] if image[w] != -1]
        if placed:
            cand = [c for c in nbr[image[placed[0]]] if not used[c]]
        else:
            cand = [c for c in range(n) if not used[c]]
        for c in cand:
            if deg[c] != deg[v]:
                continue
            if any((image[w] in nbr[c]) != (w in nbr[v]) for w in range(n) if image[w] != -1):
                continue
            image[v] = c
            used[c] = True
            extend(i + 1)
            image[v] = -1
            used[c] = False

    extend(0)
    return out


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism by trying every bijection compatible with degrees (test oracle; small graphs only)."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    n = g.n
    gd, hd = g.degrees(), h.degrees()
    hn = [set(a) for a in h.adjacency()]
    gn = [set(a) for a in g.adjacency()]
    image = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for c in range(n):
            if used[c] or hd[c] != gd[v]:
                continue
            if any((image[w] in hn[c]) != (w in gn[v]) for w in range(v)):
                continue
            image[v] = c
            used[c] = True
            if extend(v + 1):
                return True
            used[c] = False
        image[v] = -1
        return False

    return extend(0)
