from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bicyclic_energy.canon import (
    are_isomorphic,
    automorphisms,
    brute_force_isomorphic,
    canonical_form,
    canonical_graph,
)
from bicyclic_energy.enumerate import bipartite_cores, enumerate_bipartite_bicyclic, rooted_trees
from bicyclic_energy.errors import CapacityError
from bicyclic_energy.graphs import P66, Cycle, Graph, Path, build, is_bicyclic, is_bipartite
from oracles import _iso_exhaustive, all_graphs_up_to_iso, naive_bipartite_bicyclic


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


@given(st.integers(0, 10 ** 6))
def test_cycle_six_form_is_label_free(seed):
    g = build(Cycle(6))
    assert canonical_form(shuffled(g, random.Random(seed))) == canonical_form(g)


@given(st.integers(0, 10 ** 6), st.integers(1, 9), st.floats(0.1, 0.9))
def test_form_invariant_under_relabelling(seed, n, p):
    rng = random.Random(seed)
    g = random_graph(rng, n, p)
    assert canonical_form(shuffled(g, rng)) == canonical_form(g)


@given(st.integers(0, 10 ** 6), st.integers(1, 7))
def test_form_equality_iff_isomorphic(seed, n):
    rng = random.Random(seed)
    g, h = random_graph(rng, n, 0.5), random_graph(rng, n, 0.5)
    expect = g.m == h.m and _iso_exhaustive(n, g.edges, h.edges)
    assert are_isomorphic(g, h) == expect
    assert brute_force_isomorphic(g, h) == expect


def test_path_vs_star():
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert canonical_form(build(Path(4))) != canonical_form(star)


def test_eleven_graphs_on_four_vertices():
    graphs = all_graphs_up_to_iso(4)
    assert len(graphs) == 11
    assert len({canonical_form(g) for g in graphs}) == 11


def test_regular_graphs_distinguished():
    # C6 and two triangles are both 2-regular on 6 vertices; refinement alone cannot split them
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert canonical_form(build(Cycle(6))) != canonical_form(two_triangles)


def test_canonical_graph_is_isomorphic_copy():
    g = build(P66(14))
    assert are_isomorphic(canonical_graph(g), g)


def test_automorphism_group_sizes():
    assert len(automorphisms(build(Cycle(6)))) == 12
    assert len(automorphisms(build(P66(12)))) == 8
    assert len(automorphisms(build(Path(5)))) == 2


def test_rooted_tree_counts():
    assert [len(rooted_trees(k)) for k in range(1, 9)] == [1, 1, 2, 4, 9, 20, 48, 115]


@pytest.mark.parametrize("k", range(5, 13))
def test_cores_are_bipartite_bicyclic_min_degree_two(k):
    for name, core in bipartite_cores(k):
        assert core.n == k and is_bicyclic(core) and is_bipartite(core), name
        assert min(core.degrees()) >= 2, name


def test_four_vertices_have_no_bipartite_bicyclic_graph():
    # at most 4 edges fit in a bipartite graph on 4 vertices, one short of n + 1
    assert list(enumerate_bipartite_bicyclic(4)) == []
    assert naive_bipartite_bicyclic(4) == []


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_counts_match_naive_oracle(n):
    ours = list(enumerate_bipartite_bicyclic(n))
    naive = naive_bipartite_bicyclic(n)
    assert len(ours) == len(naive)
    assert Counter(canonical_form(g) for g in ours) == Counter(canonical_form(g) for g in naive)


def test_count_regression():
    counts = [sum(1 for _ in enumerate_bipartite_bicyclic(n)) for n in range(4, 13)]
    assert counts == [0, 1, 3, 11, 39, 130, 445, 1481, 4938]


@pytest.mark.parametrize("n", [9, 10, 11])
def test_output_is_valid_and_duplicate_free(n):
    graphs = list(enumerate_bipartite_bicyclic(n))
    forms = [canonical_form(g) for g in graphs]
    assert len(set(forms)) == len(forms)
    assert all(g.n == n and is_bicyclic(g) and is_bipartite(g) for g in graphs)


@pytest.mark.parametrize("n", [8, 10])
def test_raw_stream_covers_same_classes(n):
    raw = {canonical_form(g) for g in enumerate_bipartite_bicyclic(n, dedup=False)}
    assert raw == {canonical_form(g) for g in enumerate_bipartite_bicyclic(n)}


def test_shuffled_order_same_multiset():
    rng = random.Random(7)
    graphs = list(enumerate_bipartite_bicyclic(9))
    again = [shuffled(g, rng) for g in graphs]
    rng.shuffle(again)
    assert Counter(map(canonical_form, again)) == Counter(map(canonical_form, graphs))


@pytest.mark.parametrize("n", [12, 13])
def test_p66_in_stream(n):
    target = canonical_form(build(P66(n)))
    assert any(canonical_form(g) == target for g in enumerate_bipartite_bicyclic(n))


def test_capacity():
    with pytest.raises(CapacityError):
        list(enumerate_bipartite_bicyclic(15))
    with pytest.raises(CapacityError):
        list(enumerate_bipartite_bicyclic(13, cap=12))
    with pytest.raises(CapacityError):
        list(enumerate_bipartite_bicyclic(3))
