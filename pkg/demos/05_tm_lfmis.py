"""
Turing machine runs as LFMIS membership
=======================================

A deterministic machine's run on an input becomes a factored graph whose
greedy maximal independent set spells out the run's tableau, one tile per
cell.  The machine accepts exactly when the target vertex is in the set.
"""
import os

from factored_graphs import complexity
from factored_graphs.lfmis import lfmis_formula, lfmis_member
from factored_graphs.reductions import compile_tm_lfmis, parse_tm, simulate_tm
from factored_graphs.reductions.tm_lfmis import decode_members

DATA = os.path.join(os.path.dirname(__file__), "data")
tm = parse_tm(open(os.path.join(DATA, "ends_in_one.tm")).read())

for x in ("01", "10"):
    trace = simulate_tm(tm, x)
    inst = compile_tm_lfmis(tm, x)
    f = inst.formula
    member = lfmis_member(f, inst.query["target"])
    print(f"input {x}: accepts={trace.accept} T={inst.info['T']} "
          f"complexity {complexity(f)} target in LFMIS={member}")

    # Read the tableau back out of the independent set.
    tiles = decode_members(lfmis_formula(f).members, inst)
    for i in range(trace.t):
        print("   ", " ".join("%s/%s" % tiles[(i, j)][0] for j in range(trace.width)))
