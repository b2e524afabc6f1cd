"""
Space-bounded nondeterministic machines as reachability
=======================================================

The configuration graph of a space-bounded nondeterministic machine is
written as a factored graph: src is the start configuration and dst the
single accepting configuration left after a cleanup phase.
"""
import os

from factored_graphs import complexity, operation_count
from factored_graphs.reach import reach
from factored_graphs.reductions import (compile_ntm_reach, decode_configuration, parse_ntm,
                                        simulate_ntm_config_graph)

DATA = os.path.join(os.path.dirname(__file__), "data")
ntm = parse_ntm(open(os.path.join(DATA, "guess_bit.ntm")).read())

for x in ("00", "01", "110"):
    inst = compile_ntm_reach(ntm, x)
    f = inst.formula
    got = reach(f, inst.query["src"], inst.query["dst"], method="implicit")
    want = simulate_ntm_config_graph(ntm, x)
    print(f"input {x}: reach={got} direct simulation={want} "
          f"complexity {complexity(f)} operations={operation_count(f)}")
    print("   start:", decode_configuration(inst, inst.query["src"]))
