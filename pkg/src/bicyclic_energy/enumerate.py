"""Connected bipartite bicyclic graphs of a given order, one per isomorphism class.

A connected bicyclic graph is its 2-core with a rooted tree hanging from each
core vertex. The 2-core is a figure-eight (two cycles sharing a vertex), a
dumbbell (two cycles joined by a path) or a theta graph (three internally
disjoint paths between two vertices); it is bipartite iff all its cycles are
even, and hanging trees never change that. Two such graphs are isomorphic
iff their cores are and the tree assignments differ by a core automorphism,
so keeping only orbit-minimal assignments already removes duplicates; the
canonical form is still used as the final, exact dedup key.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterator, List, Sequence, Tuple

from .canon import automorphisms, canonical_form
from .errors import CapacityError
from .graphs import Graph

DEFAULT_CAP = 14

RootedTree = Tuple  # canonical nested tuple of child subtrees


@lru_cache(maxsize=None)
def rooted_trees(size: int) -> Tuple[RootedTree, ...]:
    """All rooted trees with ``size`` vertices up to isomorphism, as sorted nested tuples."""
    if size == 1:
        return ((),)
    out = set()
    for forest in _forests(size - 1, size - 1):
        out.add(tuple(sorted(forest)))
    return tuple(sorted(out, key=_tree_key))


def _tree_key(t: RootedTree):
    return (_tree_size(t), repr(t))


@lru_cache(maxsize=None)
def _tree_size(t: RootedTree) -> int:
    return 1 + sum(_tree_size(c) for c in t)


@lru_cache(maxsize=None)
def _forests(total: int, max_part: int) -> Tuple[Tuple[RootedTree, ...], ...]:
    """Multisets of rooted trees with ``total`` vertices, each tree of size <= ``max_part``."""
    if total == 0:
        return ((),)
    out = []
    for first in range(min(total, max_part), 0, -1):
        for tree in rooted_trees(first):
            for rest in _forests(total - first, first):
                # keep non-increasing (size, key) order to avoid permutations
                if rest and _tree_key(rest[0]) > _tree_key(tree):
                    continue
                out.append((tree,) + rest)
    return tuple(out)


def bipartite_cores(k: int) -> Iterator[Tuple[str, Graph]]:
    """Bipartite bicyclic 2-cores on exactly ``k`` vertices."""
    # figure-eight: C_p and C_q sharing vertex 0
    for p in range(4, k + 1, 2):
        q = k + 1 - p
        if q < p or q % 2:
            continue
        edges = [(i, (i + 1) % p) for i in range(p)]
        ring = [0] + list(range(p, p + q - 1))
        edges += [(ring[i], ring[(i + 1) % q]) for i in range(q)]
        yield f"eight({p},{q})", Graph.from_edges(k, edges)
    # dumbbell: C_p on 0..p-1, C_q on the last q vertices, path of ell edges from p-1
    for p in range(4, k, 2):
        for q in range(p, k, 2):
            ell = k - p - q + 1
            if ell < 1:
                continue
            edges = [(i, (i + 1) % p) for i in range(p)]
            start = k - q
            edges += [(start + i, start + (i + 1) % q) for i in range(q)]
            chain = [p - 1] + list(range(p, start)) + [start]
            edges += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
            yield f"dumbbell({p},{q},{ell})", Graph.from_edges(k, edges)
    # theta: paths of a <= b <= c edges between vertices 0 and 1
    for a in range(1, k):
        for b in range(max(a, 2), k):
            c = k + 1 - a - b
            if c < b or (a - b) % 2 or (b - c) % 2:
                continue
            edges = []
            nxt = 2
            for length in (a, b, c):
                inner = list(range(nxt, nxt + length - 1))
                nxt += length - 1
                chain = [0] + inner + [1]
                edges += [(chain[i], chain[i + 1]) for i in range(length)]
            yield f"theta({a},{b},{c})", Graph.from_edges(k, edges)


def _assignments(k: int, extra: int) -> Iterator[Tuple[int, ...]]:
    """Vectors of tree sizes (each >= 1) for ``k`` core vertices adding ``extra`` vertices."""
    def rec(i: int, left: int, acc: List[int]):
        if i == k - 1:
            acc.append(left + 1)
            yield tuple(acc)
            acc.pop()
            return
        for s in range(left + 1):
            acc.append(s + 1)
            yield from rec(i + 1, left - s, acc)
            acc.pop()

    yield from rec(0, extra, [])


def _attach(core: Graph, trees: Sequence[RootedTree], n: int) -> Graph:
    edges = list(core.edges)
    nxt = core.n
    stack = [(v, t) for v, t in enumerate(trees)]
    while stack:
        parent, tree = stack.pop()
        for child in tree:
            c = nxt
            nxt += 1
            edges.append((parent, c))
            stack.append((c, child))
    return Graph.from_edges(n, edges)


def _orbit_minimal(ids: Tuple[int, ...], group: List[List[int]]) -> bool:
    for sigma in group:
        image = tuple(ids[sigma[v]] for v in range(len(ids)))
        if image < ids:
            return False
    return True


def _tree_ids(max_size: int) -> Tuple[Dict[int, List[int]], List[RootedTree]]:
    catalogue: List[RootedTree] = []
    by_size: Dict[int, List[int]] = {}
    for s in range(1, max_size + 1):
        for t in rooted_trees(s):
            by_size.setdefault(s, []).append(len(catalogue))
            catalogue.append(t)
    return by_size, catalogue


def enumerate_bipartite_bicyclic(n: int, cap: int = DEFAULT_CAP, dedup: bool = True) -> Iterator[Graph]:
    """Yield one connected bipartite bicyclic graph per isomorphism class on ``n`` vertices."""
    if n > cap:
        raise CapacityError(f"enumeration order {n} exceeds the cap {cap}")
    if n < 4:
        raise CapacityError(f"enumeration needs n >= 4, got n={n}")
    by_size, catalogue = _tree_ids(n)
    seen = set()
    for k in range(5, n + 1):
        for _, core in bipartite_cores(k):
            group = automorphisms(core)
            for sizes in _assignments(k, n - k):
                for ids in _product(sizes, by_size):
                    if not _orbit_minimal(ids, group):
                        continue
                    g = _attach(core, [catalogue[i] for i in ids], n)
                    if dedup:
                        key = canonical_form(g)
                        if key in seen:
                            continue
                        seen.add(key)
                    yield g


def _product(sizes: Tuple[int, ...], by_size: Dict[int, List[int]]) -> Iterator[Tuple[int, ...]]:
    def rec(i: int, acc: List[int]):
        if i == len(sizes):
            yield tuple(acc)
            return
        for tid in by_size[sizes[i]]:
            acc.append(tid)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])
