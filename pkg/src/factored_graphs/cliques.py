"""Counting s-cliques of a symmetric factored graph.

The FPT counter works one dimension class at a time.  Let F_1..F_M be the
components of dimension d.  A tuple (v_1..v_s) of distinct dimension-d
vertices is a clique iff every pair is adjacent in at least one F_m.
Inclusion-exclusion turns "at least one" into signed terms of the form
"adjacent in every component of a given set", and each such term factors
over coordinate blocks: the tuple is classified block by block by a small
signature (which slices are equal, which are members of which leaf, which
leaf pairs are edges), and a dynamic program over the blocks folds these
signatures up each component tree.  Only signatures realized by actual
label tuples are visited.

Two equivalent expansions are available.  ``collections`` is the literal
sum over nonempty collections of decompositions (pair -> component maps);
``pairwise`` expands each pair independently over nonempty component
subsets.  ``auto`` picks the first when the collection space is small.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .core import CART, TENSOR, Formula, base_graphs, components, dim, leaves
from .errors import SizeCapError, ValidationError
from .explicit import materialize
from .implicit import DEFAULT_VERTEX_CAP

DEFAULT_MAX_DECOMPOSITIONS = 4096
DEFAULT_MAX_TERMS = 2 ** 16
_COLLECTION_LIMIT = 12


@dataclass
class CliqueCount:
    s: int
    per_dimension: Dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.per_dimension.values())

    @property
    def ordered(self) -> int:
        """Number of ordered tuples of distinct vertices forming a clique."""
        return self.total * math.factorial(self.s)


def _require_symmetric(f: Formula):
    for g in base_graphs(f).values():
        if not g.is_symmetric():
            raise ValidationError(f"graph {g.name} is not symmetric; clique counting "
                                  "needs undirected base graphs")


def count_cliques_naive(f: Formula, s: int,
                        max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> CliqueCount:
    """Materialize and count s-subsets with every pair adjacent."""
    if s < 1:
        raise ValidationError("s must be at least 1")
    _require_symmetric(f)
    g = materialize(f, max_vertices)
    nbr = [set(g.successors(i).tolist()) - {i} for i in range(len(g))]
    out = CliqueCount(s)
    for d, members in g.dimension_classes().items():
        out.per_dimension[d] = _count_subsets(members, nbr, s)
    return out


def _count_subsets(members, nbr, s) -> int:
    if s == 1:
        return len(members)

    def extend(cands, need):
        if need == 0:
            return 1
        total = 0
        for idx, v in enumerate(cands):
            rest = [w for w in cands[idx + 1:] if w in nbr[v]]
            if len(rest) >= need - 1:
                total += extend(rest, need - 1)
        return total

    return extend(sorted(members), s)


def count_cliques_fpt(f: Formula, s: int, strategy: str = "auto",
                      max_decompositions: int = DEFAULT_MAX_DECOMPOSITIONS,
                      max_terms: int = DEFAULT_MAX_TERMS) -> CliqueCount:
    """Count s-cliques without materializing the graph."""
    if s < 1:
        raise ValidationError("s must be at least 1")
    if strategy not in ("auto", "collections", "pairwise"):
        raise ValidationError(f"unknown strategy {strategy!r}")
    _require_symmetric(f)
    by_dim: Dict[int, List[Formula]] = {}
    for c in components(f):
        by_dim.setdefault(dim(c), []).append(c)
    out = CliqueCount(s)
    for d in sorted(by_dim):
        counter = _DimensionCounter(by_dim[d], d, s)
        out.per_dimension[d] = counter.count(strategy, max_decompositions, max_terms)
    return out


def _leaf_programs(c: Formula):
    """Per leaf: the operations to open before it and how many nodes it closes."""
    progs: List[list] = []

    def walk(node, opens):
        if node.is_leaf:
            progs.append([tuple(opens), 0])
            return
        for i, ch in enumerate(node.children):
            walk(ch, opens + [node.op] if i == 0 else [])
        progs[-1][1] += 1

    walk(c, [])
    return [tuple(p) for p in progs]


def _combine(acc, e, g):
    op, E, X = acc
    if op == CART:
        return (op, E and e, (X and e) or (E and g))
    return (op, E and e, X and g)


def _push(stack, prog, val):
    """Fold one leaf value (eq, edge) into an accumulator stack."""
    opens, closes = prog
    e, g = val
    if not stack and not opens:
        return (("=", e, g),)
    st = list(stack)
    for op in opens:
        # Cartesian starts at (equal, no edge yet); tensor at (equal, edge).
        st.append((op, True, op == TENSOR))
    st[-1] = _combine(st[-1], e, g)
    for _ in range(closes):
        _, E, X = st.pop()
        if st:
            st[-1] = _combine(st[-1], E, X)
        else:
            st.append(("=", E, X))
    return tuple(st)


class _DimensionCounter:
    def __init__(self, comps: List[Formula], d: int, s: int):
        self.comps = comps
        self.d = d
        self.s = s
        self.pairs = list(itertools.combinations(range(s), 2))
        self.progs = [_leaf_programs(c) for c in comps]
        spans = []
        for c in comps:
            pos, sp = 0, []
            for leaf in leaves(c):
                sp.append((pos, pos + leaf.graph.width, leaf.graph))
                pos += leaf.graph.width
            spans.append(sp)
        cuts = set(range(d + 1))
        for sp in spans:
            cuts &= {a for a, _, _ in sp} | {d}
        cuts = sorted(cuts)
        self.blocks = list(zip(cuts, cuts[1:]))
        # For each block and component: (leaf index, start, stop relative to block, graph).
        self.block_leaves = []
        for a, b in self.blocks:
            per = []
            for sp in spans:
                per.append([(li, x - a, y - a, g) for li, (x, y, g) in enumerate(sp) if a <= x < b])
            self.block_leaves.append(per)
        self.raw = [self._block_signatures(bi) for bi in range(len(self.blocks))]
        self._memo: Dict[tuple, int] = {}

    def _block_signatures(self, bi):
        per = self.block_leaves[bi]
        universe = set()
        for lvs in per:
            lists = [g.vertices for _, _, _, g in lvs]
            for p in itertools.product(*lists):
                universe.add(tuple(itertools.chain.from_iterable(p)))
        universe = sorted(universe)
        sigs: Counter = Counter()
        for xs in itertools.product(universe, repeat=self.s):
            eq = tuple(xs[i] == xs[j] for i, j in self.pairs)
            comp_parts = []
            for lvs in per:
                mem = tuple(all(x[a:b] in g.vertex_set for _, a, b, g in lvs) for x in xs)
                pv = []
                for i, j in self.pairs:
                    vals = []
                    for _, a, b, g in lvs:
                        ui, uj = xs[i][a:b], xs[j][a:b]
                        vals.append((ui == uj and ui in g.vertex_set, (ui, uj) in g.edges))
                    pv.append(tuple(vals))
                comp_parts.append((mem, tuple(pv)))
            sigs[(eq, tuple(comp_parts))] += 1
        return sigs

    def count(self, strategy, max_decompositions, max_terms) -> int:
        M, P = len(self.comps), len(self.pairs)
        n_decomp = M ** P
        if n_decomp > max_decompositions:
            raise SizeCapError(f"{n_decomp} decompositions exceed the guard {max_decompositions}; "
                               "use the naive method")
        if strategy == "auto":
            strategy = "collections" if n_decomp <= _COLLECTION_LIMIT else "pairwise"
        total = 0
        if strategy == "collections":
            if n_decomp > _COLLECTION_LIMIT + 8:
                raise SizeCapError(f"2^{n_decomp} collections are too many; use pairwise")
            decomps = list(itertools.product(range(M), repeat=P))
            for r in range(1, len(decomps) + 1):
                sign = 1 if r % 2 else -1
                for coll in itertools.combinations(decomps, r):
                    sigma = tuple(frozenset(dm[p] for dm in coll) for p in range(P))
                    total += sign * self._term(sigma)
        else:
            subsets = [frozenset(c) for r in range(1, M + 1)
                       for c in itertools.combinations(range(M), r)]
            n_terms = len(subsets) ** P
            if n_terms > max_terms:
                raise SizeCapError(f"{n_terms} inclusion-exclusion terms exceed the guard "
                                   f"{max_terms}; use the naive method")
            for sigma in itertools.product(subsets, repeat=P):
                sign = 1
                for sub in sigma:
                    if len(sub) % 2 == 0:
                        sign = -sign
                total += sign * self._term(sigma)
        q, r = divmod(total, math.factorial(self.s))
        assert r == 0, "ordered clique count not divisible by s!"
        return q

    def _term(self, sigma) -> int:
        """Ordered distinct member tuples with pair p adjacent in every F in sigma[p]."""
        hit = self._memo.get(sigma)
        if hit is not None:
            return hit
        active = [(p, m) for p, sub in enumerate(sigma) for m in sorted(sub)]
        blocks = []
        for bi, raw in enumerate(self.raw):
            proj: Counter = Counter()
            for (eq, parts), cnt in raw.items():
                mem = tuple(parts[m][0] for m in range(len(self.comps)))
                vals = tuple(parts[m][1][p] for p, m in active)
                proj[(eq, mem, vals)] += cnt
            blocks.append(proj)

        P, M, s = len(self.pairs), len(self.comps), self.s
        start = (tuple([False] * P), tuple([tuple([True] * s)] * M), tuple([()] * len(active)))
        states: Counter = Counter({start: 1})
        for bi, proj in enumerate(blocks):
            nxt: Counter = Counter()
            for (dist, mem, folds), cnt in states.items():
                for (eq, bmem, vals), pc in proj.items():
                    nd = tuple(x or not y for x, y in zip(dist, eq))
                    nm = tuple(tuple(a and b for a, b in zip(mr, br)) for mr, br in zip(mem, bmem))
                    nf = []
                    for (p, m), st, lv in zip(active, folds, vals):
                        lvs = self.block_leaves[bi][m]
                        for (li, _, _, _), val in zip(lvs, lv):
                            st = _push(st, self.progs[m][li], val)
                        nf.append(st)
                    nxt[(nd, nm, tuple(nf))] += cnt * pc
            states = nxt

        total = 0
        for (dist, mem, folds), cnt in states.items():
            if not all(dist):
                continue
            if not all(any(mem[m][i] for m in range(M)) for i in range(s)):
                continue
            if not all(st[0][2] for st in folds):
                continue
            total += cnt
        self._memo[sigma] = total
        return total
