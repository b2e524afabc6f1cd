import pytest
from hypothesis import given, settings, strategies as st

import factored_graphs as fg
from factored_graphs import BaseGraph, Leaf, cart, tensor, union
from factored_graphs.errors import NotAVertexError, ValidationError
from factored_graphs.explicit import ExplicitGraph
from factored_graphs.lfmis import lfmis_formula, lfmis_greedy, lfmis_member

from oracles import lex_first_mis, random_formula, random_pool, seeded


def explicit(n, edges):
    return ExplicitGraph.from_edges([(i,) for i in range(n)], edges)


def test_edgeless_graph_keeps_everything():
    assert lfmis_greedy(explicit(4, [])).members == [(0,), (1,), (2,), (3,)]


def test_path_skips_the_middle():
    g = explicit(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    assert lfmis_greedy(g).members == [(0,), (2,)]


def test_direction_does_not_matter():
    assert lfmis_greedy(explicit(3, [(1, 0), (2, 1)])).members == [(0,), (2,)]


def test_self_loop_is_rejected():
    with pytest.raises(ValidationError):
        lfmis_greedy(explicit(2, [(1, 1)]))
    L = Leaf(BaseGraph("L", [0, 1], [(0, 0)]))
    with pytest.raises(ValidationError):
        lfmis_member(L, (1,))


def test_query_on_result():
    res = lfmis_greedy(explicit(3, [(0, 1)]), query=(1,))
    assert res.member is False and (2,) in res


def test_member_on_leaf():
    E = Leaf(BaseGraph("E", [0, 1, 2]))
    assert all(lfmis_member(E, (v,)) for v in range(3))
    with pytest.raises(NotAVertexError):
        lfmis_member(E, (7,))


def test_unknown_engine():
    E = Leaf(BaseGraph("E", [0]))
    with pytest.raises(ValidationError):
        lfmis_member(E, (0,), engine="magic")


def test_dimensions_are_handled_separately():
    P = Leaf(BaseGraph("P", [0, 1], [(0, 1)]))
    f = union(P, cart(P, P))
    res = lfmis_formula(f)
    assert res.members == [(0,), (0, 0), (1, 1)]
    assert lfmis_formula(f, engine="implicit").members == res.members


@settings(max_examples=150, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(0, 10), p=st.floats(0, 1))
def test_greedy_is_lexicographically_first(seed, n, p):
    rng = seeded(seed)
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    g = explicit(n, edges)
    got = [v[0] for v in lfmis_greedy(g).members]
    assert got == (lex_first_mis(n, edges) if n else [])


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(1, 12), p=st.floats(0, 1))
def test_independent_and_maximal(seed, n, p):
    rng = seeded(seed)
    edges = {(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p}
    chosen = {v[0] for v in lfmis_greedy(explicit(n, edges)).members}
    assert not any(u in chosen and v in chosen for u, v in edges)
    for w in set(range(n)) - chosen:
        assert any((w, m) in edges or (m, w) in edges for m in chosen)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10 ** 6), n=st.integers(2, 12), p=st.floats(0, 1))
def test_deleting_later_non_members_keeps_membership(seed, n, p):
    rng = seeded(seed)
    edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
    g = explicit(n, edges)
    chosen = {v[0] for v in lfmis_greedy(g).members}
    u = rng.randrange(n)
    later = [w for w in range(u + 1, n) if w not in chosen]
    if not later:
        return
    w = rng.choice(later)
    keep = [i for i in range(n) if i != w]
    after = {v[0] for v in lfmis_greedy(g.induced(keep)).members}
    assert (u in after) == (u in chosen)


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 10 ** 6), ops=st.integers(0, 4))
def test_engines_agree(seed, ops):
    rng = seeded(seed)
    f = random_formula(rng, random_pool(rng, 4, 4), ops)
    full = lfmis_formula(f)
    assert lfmis_formula(f, engine="implicit").members == full.members
    chosen = set(full.members)
    for v in list(fg.enumerate_vertices(f))[:12]:
        assert lfmis_member(f, v, engine="implicit") == (v in chosen)
        assert lfmis_member(f, v, engine="materialize") == (v in chosen)
