"""Lexicographically first maximal independent set (greedy over vertex order)."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .core import (Formula, Vertex, components, contains, dim, format_tuple, has_self_loop,
                   vertex_key)
from .errors import NotAVertexError, ValidationError
from .explicit import ExplicitGraph, materialize
from .implicit import DEFAULT_VERTEX_CAP, enumerate_vertices, out_neighbors


@dataclass
class LfmisResult:
    members: List[Vertex]
    query: Optional[Vertex] = None
    member: Optional[bool] = None

    def __contains__(self, v):
        return tuple(v) in set(self.members)


def lfmis_greedy(g: ExplicitGraph, query=None) -> LfmisResult:
    """Greedy LFMIS of an explicit graph; edges count in both directions."""
    loops = g.self_loops()
    if loops:
        raise ValidationError(f"self-loop at {format_tuple(g.vertices[loops[0]])}; "
                              "independence is undefined")
    n = len(g.vertices)
    blocked = np.zeros(n, dtype=bool)
    fwd, back = g.adj, g.adj.T.tocsr()
    chosen = []
    for v in range(n):
        if blocked[v]:
            continue
        chosen.append(v)
        blocked[fwd.indices[fwd.indptr[v]:fwd.indptr[v + 1]]] = True
        blocked[back.indices[back.indptr[v]:back.indptr[v + 1]]] = True
    members = [g.vertices[i] for i in chosen]
    res = LfmisResult(members)
    if query is not None:
        res.query = tuple(query)
        res.member = res.query in set(members)
    return res


def _check_loops(f: Formula, d: int):
    for c in components(f):
        if dim(c) == d and has_self_loop(c):
            raise ValidationError(f"a dimension-{d} component has self-loops; "
                                  "independence is undefined")


def _implicit_members(f: Formula, d: int, stop_at: Optional[Vertex], cap):
    """Greedy over the streamed vertices of dimension ``d``.

    A candidate ``w`` is rejected when some member ``m`` has ``(m, w)`` or
    ``(w, m)`` as an edge.  The first case is tracked as the union of the
    members' out-neighborhoods, the second by intersecting ``w``'s own
    out-neighborhood with the members.  Both come from ``out_neighbors``, so
    no edge set is ever built for the whole graph.
    """
    members: List[Vertex] = []
    member_set = set()
    hit_by_member = set()
    stop_key = vertex_key(stop_at) if stop_at is not None else None
    for w in enumerate_vertices(f, cap=cap, only_dim=d):
        if stop_key is not None and vertex_key(w) > stop_key:
            break
        if w in hit_by_member:
            continue
        outs = out_neighbors(f, w)
        if not outs.isdisjoint(member_set):
            continue
        members.append(w)
        member_set.add(w)
        hit_by_member |= outs
    return members


def lfmis_member(f: Formula, v, engine: str = "implicit",
                 max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> bool:
    """Is ``v`` in the LFMIS of ``f``?

    Only ``v``'s dimension class matters, since no edge crosses dimensions.
    The implicit engine streams vertices up to ``v`` and never builds edges.
    """
    v = tuple(v)
    if not contains(f, v):
        raise NotAVertexError(f"{format_tuple(v)} is not a vertex of the formula")
    d = len(v)
    _check_loops(f, d)
    if engine == "implicit":
        members = _implicit_members(f, d, v, max_vertices)
        return bool(members) and members[-1] == v
    if engine == "materialize":
        return v in lfmis_of_dimension(materialize(f, max_vertices), d).members
    raise ValidationError(f"unknown engine {engine!r}")


def lfmis_of_dimension(g: ExplicitGraph, d: int) -> LfmisResult:
    keep = g.dimension_classes().get(d, [])
    return lfmis_greedy(g.induced(keep))


def lfmis_formula(f: Formula, engine: str = "materialize",
                  max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> LfmisResult:
    """Full LFMIS of ``f``, all dimension classes, in vertex order."""
    dims = sorted({dim(c) for c in components(f)})
    for d in dims:
        _check_loops(f, d)
    if engine == "materialize":
        return lfmis_greedy(materialize(f, max_vertices))
    if engine == "implicit":
        out: List[Vertex] = []
        for d in dims:
            out.extend(_implicit_members(f, d, None, max_vertices))
        return LfmisResult(out)
    raise ValidationError(f"unknown engine {engine!r}")
