"""Queries answered directly on the formula, without building the graph."""
from __future__ import annotations

import heapq
import itertools
from typing import Dict, Iterator, List, Optional, Set

from .core import (CART, DEFAULT_COMPONENT_CAP, TENSOR, UNION, Formula, Vertex,
                   _contains, components, dim, leaves)
from .errors import SizeCapError

DEFAULT_VERTEX_CAP = 10 ** 6


def adjacent(f: Formula, u, v) -> bool:
    """True iff ``(u, v)`` is an edge of ``f``.  Never raises on non-vertices."""
    if type(u) is not tuple:
        u = tuple(u)
    if type(v) is not tuple:
        v = tuple(v)
    if len(u) != len(v) or len(u) not in f.dims:
        return False
    if f.is_leaf:
        return (u, v) in f.graph.edges
    # Top-level pairs rarely repeat, so only inner nodes are memoized.
    return _adj_op(f, u, v)


_MEMO_LIMIT = 1 << 18


def _adj(node: Formula, u: Vertex, v: Vertex) -> bool:
    if node.is_leaf:
        return (u, v) in node.graph.edges
    memo = node.adj_memo
    hit = memo.get((u, v))
    if hit is None:
        hit = _adj_op(node, u, v)
        if len(memo) >= _MEMO_LIMIT:
            memo.clear()
        memo[(u, v)] = hit
    return hit


def _adj_op(node, u: Vertex, v: Vertex) -> bool:
    children = node.children
    if node.op == UNION:
        n = len(u)
        return any(n in c.dims and _adj(c, u, v) for c in children)
    for spans in node.spans(len(u)):
        if node.op == TENSOR:
            for i in node.test_order:
                a, b = spans[i]
                if not _adj(children[i], u[a:b], v[a:b]):
                    break
            else:
                return True
            continue
        # Cartesian: exactly one child may move, the rest stay put on a vertex.
        moved = -1
        if u != v:
            for i, (a, b) in enumerate(spans):
                if u[a:b] != v[a:b]:
                    if moved >= 0:
                        moved = -2
                        break
                    moved = i
            if moved == -2:
                continue
            a, b = spans[moved]
            if not _adj(children[moved], u[a:b], v[a:b]):
                continue
            if all(_contains(c, u[x:y]) for j, (c, (x, y)) in enumerate(zip(children, spans))
                   if j != moved):
                return True
        else:
            parts = [u[a:b] for a, b in spans]
            if all(_contains(c, p) for c, p in zip(children, parts)) and \
                    any(_adj(c, p, p) for c, p in zip(children, parts)):
                return True
    return False


def out_neighbors(f: Formula, v) -> Set[Vertex]:
    """All ``w`` with ``(v, w)`` an edge of ``f``; empty when ``v`` is not a vertex."""
    v = tuple(v)
    if len(v) not in f.dims:
        return set()
    return set(_nbrs(f, v))


def _nbrs(node: Formula, v: Vertex):
    """Out-neighbors of ``v`` in ``node`` as an iterable that may repeat."""
    if node.is_leaf:
        return node.graph.succ.get(v, ())
    children = node.children
    n = len(v)
    if node.op == UNION:
        out = []
        for c in children:
            if n in c.dims:
                out.extend(_nbrs(c, v))
        return out
    out = []
    for spans in node.spans(n):
        if node.op == TENSOR:
            parts = [None] * len(children)
            for i in node.test_order:
                a, b = spans[i]
                got = _nbrs(children[i], v[a:b])
                if not got:
                    break
                parts[i] = got
            else:
                if len(parts) == 2:
                    out.extend(x + y for x in parts[0] for y in parts[1])
                else:
                    out.extend(tuple(itertools.chain.from_iterable(combo))
                               for combo in itertools.product(*parts))
            continue
        if not all(_contains(c, v[a:b]) for c, (a, b) in zip(children, spans)):
            continue
        for c, (a, b) in zip(children, spans):
            got = _nbrs(c, v[a:b])
            if got:
                head, tail = v[:a], v[b:]
                out.extend(head + w + tail for w in got)
    return out


def _leaf_lists(c: Formula):
    return [leaf.graph.vertices for leaf in leaves(c)]


def _product_iter(lists) -> Iterator[Vertex]:
    if all(len(lst[0]) == 1 for lst in lists):
        return itertools.product(*[[v[0] for v in lst] for lst in lists])
    return (tuple(itertools.chain.from_iterable(p)) for p in itertools.product(*lists))


def component_groups(f: Formula, component_cap: int = DEFAULT_COMPONENT_CAP) -> Dict[int, list]:
    """Distinct leaf vertex-list sequences per dimension.

    Components whose leaves have the same vertex sets produce the same
    vertices, so they only need to be enumerated once.
    """
    groups: Dict[int, dict] = {}
    for c in components(f, component_cap):
        lists = _leaf_lists(c)
        sig = tuple(leaf.graph.vertex_set for leaf in leaves(c))
        groups.setdefault(dim(c), {}).setdefault(sig, lists)
    return {d: list(groups[d].values()) for d in sorted(groups)}


def estimated_vertex_count(f: Formula, component_cap: int = DEFAULT_COMPONENT_CAP) -> int:
    total = 0
    for lists_per_dim in component_groups(f, component_cap).values():
        for lists in lists_per_dim:
            n = 1
            for lst in lists:
                n *= len(lst)
            total += n
    return total


def enumerate_vertices(f: Formula, cap: Optional[int] = DEFAULT_VERTEX_CAP,
                       only_dim: Optional[int] = None) -> Iterator[Vertex]:
    """Yield every vertex of ``f`` once, in vertex order.

    ``cap`` bounds the estimated vertex count (sum over distinct components);
    pass ``None`` to disable the guard.  ``only_dim`` restricts the stream to
    one dimension class.
    """
    groups = component_groups(f)
    if only_dim is not None:
        groups = {d: g for d, g in groups.items() if d == only_dim}
    if cap is not None:
        est = sum(_size(lists) for g in groups.values() for lists in g)
        if est > cap:
            raise SizeCapError(f"estimated vertex count {est} exceeds cap {cap}")
    return _merged(groups)


def _size(lists) -> int:
    n = 1
    for lst in lists:
        n *= len(lst)
    return n


def _merged(groups) -> Iterator[Vertex]:
    for d, per_dim in groups.items():
        streams = [_product_iter(lists) for lists in per_dim]
        last = None
        for v in (streams[0] if len(streams) == 1 else heapq.merge(*streams)):
            if v != last:
                yield v
                last = v


def vertices_of_dim(f: Formula, d: int) -> List[Vertex]:
    return list(enumerate_vertices(f, cap=None, only_dim=d))
