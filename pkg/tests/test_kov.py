import pytest
from hypothesis import given, settings, strategies as st

import factored_graphs as fg
from factored_graphs.errors import ValidationError
from factored_graphs.reach import reach
from factored_graphs.reductions import (KOVInstance, compile_kov_reach, format_kov, parse_kov,
                                        random_kov, solve_kov_brute)

from oracles import seeded


def test_zero_vector_always_works():
    inst = KOVInstance([[(1, 1), (0, 0)], [(1, 1), (1, 1)]])
    assert solve_kov_brute(inst)


def test_single_pairs():
    assert not solve_kov_brute(KOVInstance([[(1, 0)], [(1, 1)]]))
    assert solve_kov_brute(KOVInstance([[(1, 0)], [(0, 1)]]))


def test_validation():
    with pytest.raises(ValidationError):
        KOVInstance([[(1, 0)], [(1,)]])
    with pytest.raises(ValidationError):
        KOVInstance([[(1, 0)], [(1, 0), (0, 1)]])
    with pytest.raises(ValidationError):
        KOVInstance([[(2, 0)], [(1, 0)]])
    with pytest.raises(ValidationError):
        compile_kov_reach(KOVInstance([[(1, 0)]]))


def test_file_round_trip():
    text = "kov { k: 2; d: 3; set: 101 011; set: 110 000; }"
    inst = parse_kov(text)
    assert inst.sets == [[(1, 0, 1), (0, 1, 1)], [(1, 1, 0), (0, 0, 0)]]
    assert parse_kov(format_kov(inst)) == inst
    with pytest.raises(ValidationError):
        parse_kov("kov { k: 2; d: 3; set: 10; set: 110; }")
    with pytest.raises(ValidationError):
        parse_kov("kov { k: 3; d: 2; set: 10; set: 11; }")


def _names(inst):
    return {lab: key for key, lab in inst.info["labels"].items()}


def test_compiled_size():
    for k in (2, 3, 4):
        kov = random_kov(k, 3, 2, seeded(k))
        inst = compile_kov_reach(kov)
        inst.check()
        graphs = inst.doc.graphs.values()
        size = sum(len(g) + len(g.edges) for g in graphs)
        assert size <= 8 * k * k * k * kov.n * kov.d
        assert fg.operation_count(inst.formula) <= 2 * k ** 3
        assert fg.complexity(inst.formula).n == 2 * kov.n * kov.d


def test_edges_keep_vectors_and_move_levels_together():
    kov = random_kov(2, 3, 3, seeded(5))
    inst = compile_kov_reach(kov)
    names = _names(inst)
    g = fg.materialize(inst.formula)
    assert g.n_edges > 0
    for u, v in g.edge_tuples():
        a, b = [names[x] for x in u], [names[x] for x in v]
        if any(x[0] != "v" for x in a + b):
            continue
        assert [x[2] for x in a] == [x[2] for x in b]
        if any(x[3] != y[3] for x, y in zip(a, b)):
            for x, y in zip(a, b):
                assert y[3] == x[3] + 1 and x[4] == 1 and y[4] == 0


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10 ** 6), k=st.integers(2, 3), n=st.integers(1, 4),
       d=st.integers(1, 4), p=st.floats(0.3, 0.9))
def test_reachability_matches_brute_force(seed, k, n, d, p):
    kov = random_kov(k, n, d, seeded(seed), p_one=p)
    inst = compile_kov_reach(kov)
    src, dst = inst.query["src"], inst.query["dst"]
    want = solve_kov_brute(kov)
    assert reach(inst.formula, src, dst, method="implicit") == want
    if k == 2:
        assert reach(inst.formula, src, dst, method="explicit") == want
