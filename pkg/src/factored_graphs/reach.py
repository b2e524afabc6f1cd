"""Reachability between two vertices of a factored graph."""
from __future__ import annotations

import logging
from collections import deque
from typing import Optional

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import breadth_first_order

from .core import CART, UNION, BaseGraph, Formula, contains, format_tuple
from .errors import NotAVertexError, SizeCapError, ValidationError
from .explicit import materialize
from .implicit import DEFAULT_VERTEX_CAP, _nbrs

log = logging.getLogger(__name__)

DEFAULT_STATE_CAP = 10 ** 6


def reach(f: Formula, src, dst, method: str = "auto",
          max_states: Optional[int] = DEFAULT_STATE_CAP,
          max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> bool:
    """Is there a directed path (possibly empty) from ``src`` to ``dst``?"""
    src, dst = tuple(src), tuple(dst)
    for name, v in (("src", src), ("dst", dst)):
        if not contains(f, v):
            raise NotAVertexError(f"{name} {format_tuple(v)} is not a vertex of the formula")
    if len(src) != len(dst):
        log.info("src and dst have different dimensions; no path can exist")
        return False
    if method == "implicit":
        return reach_implicit(f, src, dst, max_states)
    if method == "explicit":
        return reach_explicit(f, src, dst, max_vertices)
    if method != "auto":
        raise ValidationError(f"unknown method {method!r}")
    if f.is_leaf:
        return _base_reach(f.graph, src, dst)
    if all(c.is_leaf for c in f.children):
        if f.op == CART:
            pos = 0
            for c in f.children:
                w = c.graph.width
                if not _base_reach(c.graph, src[pos:pos + w], dst[pos:pos + w]):
                    return False
                pos += w
            return True
        if f.op == UNION:
            return _union_reach([c.graph for c in f.children], src, dst)
    return reach_implicit(f, src, dst, max_states)


def reach_implicit(f: Formula, src, dst, max_states: Optional[int] = DEFAULT_STATE_CAP,
                   stats: Optional[dict] = None) -> bool:
    """Breadth-first search driven by ``out_neighbors``; stops when ``dst`` appears.

    If ``stats`` is given, the number of discovered states is stored under
    ``"states"``.
    """
    src, dst = tuple(src), tuple(dst)
    seen = {src}
    try:
        if src == dst:
            return True
        frontier = deque([src])
        while frontier:
            v = frontier.popleft()
            for w in _nbrs(f, v):
                if w in seen:
                    continue
                if w == dst:
                    return True
                seen.add(w)
                if max_states is not None and len(seen) > max_states:
                    raise SizeCapError(f"search visited more than {max_states} states")
                frontier.append(w)
        return False
    finally:
        if stats is not None:
            stats["states"] = len(seen)


def reach_explicit(f: Formula, src, dst, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> bool:
    g = materialize(f, max_vertices)
    order = breadth_first_order(g.adj, g.index[tuple(src)], directed=True,
                                return_predecessors=False)
    return g.index[tuple(dst)] in set(order.tolist())


def _base_reach(g: BaseGraph, src, dst) -> bool:
    src, dst = tuple(src), tuple(dst)
    seen = {src}
    frontier = deque([src])
    while frontier:
        v = frontier.popleft()
        if v == dst:
            return True
        for w in g.succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return False


def _union_reach(graphs, src, dst) -> bool:
    verts = sorted(set().union(*(g.vertex_set for g in graphs)))
    index = {v: i for i, v in enumerate(verts)}
    pairs = {(index[u], index[v]) for g in graphs for u, v in g.edges}
    n = len(verts)
    if pairs:
        r, q = zip(*pairs)
    else:
        r, q = (), ()
    adj = sp.csr_matrix((np.ones(len(r), dtype=bool), (r, q)), shape=(n, n))
    order = breadth_first_order(adj, index[tuple(src)], directed=True, return_predecessors=False)
    return index[tuple(dst)] in set(order.tolist())
