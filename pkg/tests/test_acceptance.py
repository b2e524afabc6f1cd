"""Acceptance criteria, one test each.  Run with ``pytest tests/test_acceptance.py``;
a PASS/FAIL line per criterion is printed in the terminal summary."""
import itertools
import json
import os
import subprocess
import sys
import time

import pytest

import factored_graphs as fg
from factored_graphs import BaseGraph, Leaf, cart, tensor, union
from factored_graphs.cliques import count_cliques_fpt, count_cliques_naive
from factored_graphs.core import OpNode
from factored_graphs.explicit import ExplicitGraph
from factored_graphs.lfmis import lfmis_formula, lfmis_greedy, lfmis_member
from factored_graphs.reach import reach
from factored_graphs.reductions import (build_factored_path, compile_kov_reach,
                                        compile_ntm_reach, compile_tm_lfmis, grid_doc,
                                        random_kov, simulate_ntm_config_graph, simulate_tm,
                                        solve_kov_brute)
from factored_graphs.reductions import samples
from factored_graphs.reductions.tm_lfmis import decode_members, expected_tiling, from_digits

from oracles import (count_cliques_brute, graph_of, lex_first_mis, random_formula, random_pool,
                     seeded, sorted_vertices)

HERE = os.path.dirname(__file__)


def check_against_materialization(f):
    g = fg.materialize(f, max_vertices=None)
    edges = set(g.edge_tuples())
    vs = g.vertices
    assert list(fg.enumerate_vertices(f, cap=None)) == vs
    succ = {}
    for u, w in edges:
        succ.setdefault(u, set()).add(w)
    by_dim = {}
    for v in vs:
        by_dim.setdefault(len(v), []).append(v)
    pairs = 0
    for u in vs:
        assert fg.out_neighbors(f, u) == succ.get(u, set())
        for w in by_dim[len(u)]:
            assert fg.adjacent(f, u, w) == ((u, w) in edges)
        pairs += len(by_dim[len(u)])
    # Pairs of different dimensions are never adjacent.
    dims = sorted(by_dim)
    for d1, d2 in itertools.permutations(dims, 2):
        for u in by_dim[d1][:3]:
            for w in by_dim[d2][:3]:
                assert not fg.adjacent(f, u, w)
    return pairs


def exhaustive_pool():
    return [BaseGraph("A", [0, 1], [(0, 1)]),
            BaseGraph("B", [1, 2], [(1, 2), (2, 1), (2, 2)]),
            BaseGraph("C", [0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])]


@pytest.mark.criterion(1, "implicit queries equal materialization")
def test_c01_implicit_explicit_equivalence(criterion):
    from oracles import all_formulas
    start = time.perf_counter()
    formulas = all_formulas(exhaustive_pool(), 3)
    pairs = sum(check_against_materialization(f) for f in formulas)
    rng = seeded(2024)
    for _ in range(200):
        pool = random_pool(rng, 5, 6, loops=rng.random() < 0.5, label_space=10)
        f = random_formula(rng, pool, rng.randint(0, 4))
        assert fg.complexity(f).n <= 6 and fg.complexity(f).k <= 5
        pairs += check_against_materialization(f)
        V, E = graph_of(f)
        g = fg.materialize(f)
        assert g.vertices == sorted_vertices(V) and set(g.edge_tuples()) == E
    elapsed = time.perf_counter() - start
    criterion.note(f"{len(formulas)} exhaustive + 200 random formulas, {pairs} pairs")
    assert elapsed < 60


@pytest.mark.criterion(2, "product identities")
def test_c02_product_identities(criterion):
    for n in range(1, 9):
        for m in range(1, 9):
            A = Leaf(BaseGraph("A", range(n)))
            B = Leaf(BaseGraph("B", range(m)))
            g = fg.materialize(cart(A, B))
            assert len(g) == n * m and g.n_edges == 0
    rng = seeded(11)
    for _ in range(30):
        g1, g2, g3 = random_pool(rng, 3, 4, loops=True)
        a, b, c = Leaf(g1), Leaf(g2), Leaf(g3)
        for op in (fg.UNION, fg.CART, fg.TENSOR):
            left = fg.materialize(OpNode(op, [OpNode(op, [a, b]), c]))
            right = fg.materialize(OpNode(op, [a, OpNode(op, [b, c])]))
            assert left == right
    doc = fg.parse(open(os.path.join(HERE, "fixtures", "mixed_products.fg")).read())
    x, y = fg.materialize(doc.formula("X")), fg.materialize(doc.formula("Y"))
    assert x.vertices == y.vertices
    assert set(x.edge_tuples()) != set(y.edge_tuples())
    assert ((0, 0, 0), (0, 0, 1)) in set(x.edge_tuples()) - set(y.edge_tuples())


@pytest.mark.criterion(3, "factored path gadget")
def test_c03_path_gadget(criterion):
    for b in (2, 3):
        for k in (1, 2, 3):
            order = list(itertools.product(range(b), repeat=k))
            inc = set(zip(order, order[1:]))
            for direction, want in (("inc", inc), ("dec", {(v, u) for u, v in inc})):
                f = build_factored_path(b, k, direction).formula("P")
                g = fg.materialize(f)
                assert g.vertices == order
                assert set(g.edge_tuples()) == want
                c = fg.complexity(f)
                assert c.n == b and c.k <= k * k


@pytest.mark.criterion(4, "direction grids for T = 4")
def test_c04_grids(criterion):
    n, k = 2, 2
    T = n ** k
    doc = grid_doc(n, k)
    hand = {
        "GV": {((i, j), (i + 1, j)) for i in range(T - 1) for j in range(T)},
        "GH": {((i, j), (i, j + 1)) for i in range(T) for j in range(T - 1)},
        "GR": {((i, j), (i + 1, j + 1)) for i in range(T - 1) for j in range(T - 1)},
        "GL": {((i, j), (i + 1, j - 1)) for i in range(T - 1) for j in range(1, T)},
    }
    for name, want in hand.items():
        g = fg.materialize(doc.formula(name))
        assert len(g) == T * T
        got = {((from_digits(u[:k], n), from_digits(u[k:], n)),
                (from_digits(v[:k], n), from_digits(v[k:], n))) for u, v in g.edge_tuples()}
        assert got == want, name


TM_RUNS = [("first_is_one", "10"), ("first_is_one", "01"), ("first_is_one", "110"),
           ("first_is_one", "011"), ("ends_in_one", "01"), ("ends_in_one", "10"),
           ("ends_in_one", "011"), ("ends_in_one", "110"), ("even_ones", "11"),
           ("even_ones", "10"), ("even_ones", "011"), ("even_ones", "010")]


@pytest.mark.criterion(5, "TM to LFMIS end to end")
def test_c05_tm_lfmis(criterion):
    start = time.perf_counter()
    outcomes = {}
    max_T = 0
    for name, x in TM_RUNS:
        tm = samples.SAMPLE_TMS[name]()
        trace = simulate_tm(tm, x)
        inst = compile_tm_lfmis(tm, x)
        T = inst.info["T"]
        max_T = max(max_T, T)
        assert T <= 16
        assert lfmis_member(inst.formula, inst.query["target"], engine="implicit") == trace.accept
        members = lfmis_formula(inst.formula, engine="materialize").members
        got = decode_members(members, inst)
        assert len(got) == T * T and all(len(v) == 1 for v in got.values())
        want = expected_tiling(trace, list(x), T)
        for i in range(T):
            for j in range(T):
                assert got[(i, j)] == [want[i][j]]
        for i in range(1, trace.t):
            assert [got[(i, j)][0] for j in range(trace.width)] == trace.rows[i]
        outcomes.setdefault(name, set()).add(trace.accept)
    assert len(outcomes) >= 3 and all(v == {True, False} for v in outcomes.values())
    criterion.note(f"{len(TM_RUNS)} runs, T <= {max_T}")
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(6, "kOV to reachability")
def test_c06_kov(criterion):
    start = time.perf_counter()
    rng = seeded(6)
    yes = 0
    for k in (2, 3):
        for _ in range(100):
            n, d = rng.randint(1, 5), rng.randint(1, 4)
            kov = random_kov(k, n, d, rng, p_one=rng.choice([0.5, 0.7, 0.85]))
            inst = compile_kov_reach(kov)
            src, dst = inst.query["src"], inst.query["dst"]
            want = solve_kov_brute(kov)
            implicit = reach(inst.formula, src, dst, method="implicit")
            assert implicit == want
            assert reach(inst.formula, src, dst, method="explicit") == implicit
            yes += want
    criterion.note(f"{yes} yes / {200 - yes} no")
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(7, "NTM to reachability")
def test_c07_ntm(criterion):
    runs = 0
    for name, make in samples.SAMPLE_NTMS.items():
        for x in ["01", "10", "11", "011", "100", "0110", "1101"]:
            ntm = make(space=2)
            inst = compile_ntm_reach(ntm, x)
            src, dst = inst.query["src"], inst.query["dst"]
            assert reach(inst.formula, src, dst, method="implicit") == \
                simulate_ntm_config_graph(ntm, x)
            runs += 1
    criterion.note(f"{len(samples.SAMPLE_NTMS)} machines, {runs} runs")


def symmetric_fixtures():
    """Every undirected graph on 1..4 vertices up to relabeling, plus the
    looped graphs on 1..2 vertices."""
    out = []
    for n, allow_loops in ((1, True), (2, True), (3, False), (4, False)):
        pairs = [(u, v) for u in range(n) for v in range(u, n) if allow_loops or u != v]
        seen = set()
        for mask in range(1 << len(pairs)):
            chosen = [p for i, p in enumerate(pairs) if mask >> i & 1]
            canon = min(tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in chosen))
                        for perm in itertools.permutations(range(n)))
            if canon in seen:
                continue
            seen.add(canon)
            edges = {(u, v) for u, v in canon} | {(v, u) for u, v in canon}
            out.append(BaseGraph(f"S{len(out)}", range(n), edges))
    return out


@pytest.mark.criterion(8, "FPT clique counts equal naive counts")
def test_c08_cliques(criterion):
    start = time.perf_counter()
    pool = symmetric_fixtures()
    leaves = [Leaf(g) for g in pool]
    formulas = leaves + [op(a, b) for a in leaves for b in leaves for op in (union, cart, tensor)]
    checks = 0
    for f in formulas:
        for s in (2, 3):
            want = count_cliques_naive(f, s).total
            for strategy in ("collections", "pairwise"):
                assert count_cliques_fpt(f, s, strategy=strategy).total == want
            checks += 1
    rng = seeded(8)
    for _ in range(100):
        f = random_formula(rng, random_pool(rng, 4, 5, loops=rng.random() < 0.5,
                                            symmetric=True, label_space=7), rng.randint(0, 2))
        assert fg.complexity(f).n <= 5 and fg.complexity(f).k <= 3
        V, E = graph_of(f)
        want = count_cliques_brute(V, {(u, v) for u, v in E if u != v}, 3)
        assert count_cliques_naive(f, 3).total == want
        assert count_cliques_fpt(f, 3).total == want
        checks += 1
    criterion.note(f"{len(pool)} fixture graphs, {checks} counts")
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(9, "greedy LFMIS equals exhaustive lexicographic first")
def test_c09_lfmis_oracle(criterion):
    rng = seeded(9)
    for _ in range(200):
        n = rng.randint(1, 12)
        p = rng.random()
        edges = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        g = ExplicitGraph.from_edges([(i,) for i in range(n)], edges)
        assert [v[0] for v in lfmis_greedy(g).members] == lex_first_mis(n, edges)


SCALING_SCRIPT = r"""
import json, random, resource, sys, time
from factored_graphs.implicit import estimated_vertex_count
from factored_graphs.reach import reach_implicit
from factored_graphs.reductions import compile_kov_reach, random_kov, solve_kov_brute
resource.setrlimit(resource.RLIMIT_AS, (1 << 30, 1 << 30))
kov = random_kov(3, 50, 8, random.Random(10))
inst = compile_kov_reach(kov)
stats = {}
t = time.perf_counter()
ok = reach_implicit(inst.formula, inst.query["src"], inst.query["dst"], max_states=None,
                    stats=stats)
print(json.dumps({"reach": ok, "brute": solve_kov_brute(kov), "seconds": time.perf_counter() - t,
                  "states": stats["states"], "vertices": estimated_vertex_count(inst.formula),
                  "peak_mb": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024}))
"""


@pytest.mark.criterion(10, "kOV k=3 n=50 d=8 implicit reachability under 1 GB")
def test_c10_scaling(criterion):
    # A separate process so the 1 GB address-space limit and the peak
    # memory reading cover this search alone.
    proc = subprocess.run([sys.executable, "-c", SCALING_SCRIPT], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr[-2000:]
    out = json.loads(proc.stdout.strip().splitlines()[-1])
    criterion.note(f"{out['states']} states of {out['vertices']} vertices, "
                   f"{out['seconds']:.0f}s, peak {out['peak_mb']:.0f} MB")
    assert out["reach"] == out["brute"]
    assert out["peak_mb"] < 1024
    assert out["states"] < out["vertices"] // 10
