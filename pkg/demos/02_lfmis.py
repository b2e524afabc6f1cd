"""
Lexicographically first maximal independent set
================================================

The greedy LFMIS walks vertices in order and keeps each one that has no
edge to a vertex already kept.  On a formula the same walk can run
implicitly, streaming vertices and asking only for neighbor sets.
"""
import os

import factored_graphs as fg
from factored_graphs.lfmis import lfmis_formula, lfmis_greedy, lfmis_member

DATA = os.path.join(os.path.dirname(__file__), "data")

# A 5-cycle: the greedy set is {0, 2}.
cycle = fg.ExplicitGraph.from_edges([(i,) for i in range(5)],
                                    [(i, (i + 1) % 5) for i in range(5)])
print("5-cycle LFMIS:", [v[0] for v in lfmis_greedy(cycle).members])

# The 2x2 grid written as P # Q.
f = fg.parse(open(os.path.join(DATA, "grid.fg")).read()).formula("G")
explicit = lfmis_formula(f, engine="materialize").members
implicit = lfmis_formula(f, engine="implicit").members
print("grid LFMIS:", [fg.format_tuple(v) for v in explicit])
assert explicit == implicit

for v in fg.enumerate_vertices(f):
    print(" ", fg.format_tuple(v), "member" if lfmis_member(f, v) else "-")
