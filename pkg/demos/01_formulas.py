"""
Formulas, complexity and implicit queries
=========================================

A factored graph is a small formula over small base graphs.  This script
loads one, prints its shape, asks a few questions without building the
graph, then builds it and checks the answers agree.
"""
import os

import factored_graphs as fg
from factored_graphs.core import dim

DATA = os.path.join(os.path.dirname(__file__), "data")
doc = fg.parse(open(os.path.join(DATA, "running_example.fg")).read())
f = doc.formula("G")

print("formula:", fg.format_formula(f))
print("complexity:", fg.complexity(f))
comps = fg.components(f)
print("components:", len(comps), "dims:", sorted(dim(c) for c in comps))

# Vertices come out dimension-major, then lexicographic.
vs = list(fg.enumerate_vertices(f))
print("vertex count:", len(vs), "first three:", [fg.format_tuple(v) for v in vs[:3]])

v = vs[0]
nbrs = sorted(fg.out_neighbors(f, v))
print("out-neighbors of", fg.format_tuple(v), "->", [fg.format_tuple(w) for w in nbrs])

# The explicit graph gives the same edges.
g = fg.materialize(f)
print("materialized:", g)
assert all(g.has_edge(g.index[v], g.index[w]) for w in nbrs)
assert len(list(g.successors(g.index[v]))) == len(nbrs)

# Tensor and Cartesian products do not associate with each other.
P = fg.Leaf(fg.BaseGraph("P", [0, 1], [(0, 1)]))
left = fg.materialize(fg.cart(fg.tensor(P, P), P))
right = fg.materialize(fg.tensor(P, fg.cart(P, P)))
print("(P*P)#P edges:", left.n_edges, " P*(P#P) edges:", right.n_edges)
