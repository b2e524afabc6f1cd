import pytest
from hypothesis import given, settings, strategies as st

import factored_graphs as fg
from factored_graphs import BaseGraph, Leaf, cart, tensor, union
from factored_graphs.core import vertex_key
from factored_graphs.errors import SizeCapError
from factored_graphs.implicit import estimated_vertex_count

from oracles import graph_of, random_formula, random_pool, seeded, sorted_vertices

P2 = Leaf(BaseGraph("P", [0, 1], [(0, 1)]))
Q2 = Leaf(BaseGraph("Q", [0, 1], [(0, 1)]))


def test_grid_adjacency():
    f = cart(P2, Q2)
    assert fg.adjacent(f, [0, 0], [0, 1])
    assert not fg.adjacent(f, [0, 0], [1, 1])


def test_no_self_adjacency_without_loops():
    f = union(cart(P2, Q2), tensor(P2, Q2))
    for v in fg.enumerate_vertices(f):
        assert not fg.adjacent(f, v, v)


def test_loop_in_one_cartesian_factor_gives_a_loop():
    L = Leaf(BaseGraph("L", [0, 1], [(1, 1)]))
    f = cart(P2, L)
    assert fg.adjacent(f, (0, 1), (0, 1))
    assert not fg.adjacent(f, (0, 0), (0, 0))


def test_adjacency_is_total_on_non_vertices():
    f = cart(P2, Q2)
    assert not fg.adjacent(f, [0, 0], [0, 0, 1])
    assert not fg.adjacent(f, [0, 5], [0, 1])
    assert fg.out_neighbors(f, [9, 9]) == set()
    assert fg.out_neighbors(f, [0]) == set()


def test_neighbors_of_grid_corner():
    assert fg.out_neighbors(cart(P2, Q2), [0, 0]) == {(0, 1), (1, 0)}
    assert fg.out_neighbors(tensor(P2, Q2), [0, 0]) == {(1, 1)}


def test_enumerate_empty_square():
    E = Leaf(BaseGraph("E", [0, 1]))
    assert list(fg.enumerate_vertices(cart(E, E))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert list(fg.enumerate_vertices(E)) == [(0,), (1,)]


def test_enumerate_dedupes_overlapping_components():
    A = Leaf(BaseGraph("A", [0, 1, 2]))
    B = Leaf(BaseGraph("B", [1, 2, 3]))
    f = cart(A, union(A, B))
    vs = list(fg.enumerate_vertices(f))
    assert len(vs) == len(set(vs)) == 12


def test_enumeration_cap():
    E = Leaf(BaseGraph("E", range(10)))
    f = cart(E, E, E)
    assert estimated_vertex_count(f) == 1000
    with pytest.raises(SizeCapError):
        list(fg.enumerate_vertices(f, cap=999))


def test_width_two_leaves_split_correctly():
    # The same tuple length can split as 1+2 or 2+1; both readings count.
    W = Leaf(BaseGraph("W", [(0, 0), (0, 1)], [((0, 0), (0, 1))]))
    A = Leaf(BaseGraph("A", [0, 1], [(0, 1)]))
    f = union(cart(A, W), cart(W, A))
    V, E = graph_of(f)
    assert set(fg.enumerate_vertices(f)) == V
    for u in V:
        assert fg.out_neighbors(f, u) == {w for x, w in E if x == u}


@settings(max_examples=120, deadline=None)
@given(seed=st.integers(0, 10 ** 6), ops=st.integers(0, 4), loops=st.booleans())
def test_implicit_queries_match_definitions(seed, ops, loops):
    rng = seeded(seed)
    f = random_formula(rng, random_pool(rng, 4, 4, loops=loops), ops)
    V, E = graph_of(f)
    vs = sorted_vertices(V)
    assert list(fg.enumerate_vertices(f)) == vs
    for u in vs:
        assert fg.out_neighbors(f, u) == {w for x, w in E if x == u}
        for w in vs:
            assert fg.adjacent(f, u, w) == ((u, w) in E)


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), ops=st.integers(0, 5))
def test_enumeration_strictly_increasing(seed, ops):
    rng = seeded(seed)
    f = random_formula(rng, random_pool(rng, 4, 3), ops)
    keys = [vertex_key(v) for v in fg.enumerate_vertices(f)]
    assert all(a < b for a, b in zip(keys, keys[1:]))


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), ops=st.integers(1, 5))
def test_no_edge_crosses_dimensions(seed, ops):
    rng = seeded(seed)
    f = random_formula(rng, random_pool(rng, 4, 3, loops=True), ops)
    for v in fg.enumerate_vertices(f):
        assert all(len(w) == len(v) for w in fg.out_neighbors(f, v))
