"""Materialization of a formula into an explicit graph.

Each union-free component is a Kronecker expression over its leaf adjacency
matrices: a tensor product is ``kron(A, B)`` and a Cartesian product is
``kron(A, I) + kron(I, B)``.  Leaf vertex lists are sorted, so the Kronecker
index order is the lexicographic order of the flattened tuples.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np
import scipy.sparse as sp

from .core import (CART, TENSOR, Formula, Vertex, components, format_tuple, leaves,
                   parse_tuple, vertex_key)
from .errors import SizeCapError, ValidationError
from .implicit import DEFAULT_VERTEX_CAP, _product_iter, component_groups


class ExplicitGraph:
    """Vertices sorted by vertex order plus a boolean CSR adjacency matrix."""

    def __init__(self, vertices: Sequence[Vertex], adjacency=None):
        self.vertices: List[Vertex] = [tuple(v) for v in vertices]
        self.index: Dict[Vertex, int] = {v: i for i, v in enumerate(self.vertices)}
        if len(self.index) != len(self.vertices):
            raise ValidationError("duplicate vertices")
        n = len(self.vertices)
        if adjacency is None:
            adjacency = sp.csr_matrix((n, n), dtype=bool)
        adj = sp.csr_matrix(adjacency, dtype=bool)
        adj.sum_duplicates()
        adj.eliminate_zeros()
        adj.sort_indices()
        if adj.shape != (n, n):
            raise ValidationError("adjacency shape does not match vertex count")
        self.adj = adj

    @classmethod
    def from_edges(cls, vertices: Sequence, edges: Iterable[Tuple[int, int]]):
        """Build from vertex tuples (sorted here) and index pairs into ``vertices``."""
        verts = [tuple(v) if not isinstance(v, int) else (v,) for v in vertices]
        order = sorted(range(len(verts)), key=lambda i: vertex_key(verts[i]))
        pos = np.empty(len(verts), dtype=np.int64)
        pos[order] = np.arange(len(verts))
        pairs = np.array(list(edges), dtype=np.int64).reshape(-1, 2)
        n = len(verts)
        rows, cols = pos[pairs[:, 0]], pos[pairs[:, 1]]
        adj = sp.csr_matrix((np.ones(len(rows), dtype=bool), (rows, cols)), shape=(n, n))
        return cls([verts[i] for i in order], adj)

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        if not isinstance(other, ExplicitGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __repr__(self):
        return f"ExplicitGraph(|V|={len(self.vertices)}, |E|={self.adj.nnz})"

    @property
    def n_edges(self) -> int:
        return int(self.adj.nnz)

    @property
    def edges(self) -> Set[Tuple[int, int]]:
        coo = self.adj.tocoo()
        return set(zip(coo.row.tolist(), coo.col.tolist()))

    def edge_tuples(self) -> List[Tuple[Vertex, Vertex]]:
        """Edges as vertex tuples, sorted by (source, target) vertex order."""
        coo = self.adj.tocoo()
        pairs = sorted(zip(coo.row.tolist(), coo.col.tolist()))
        return [(self.vertices[i], self.vertices[j]) for i, j in pairs]

    def has_edge(self, i: int, j: int) -> bool:
        row = self.adj.indices[self.adj.indptr[i]:self.adj.indptr[i + 1]]
        k = np.searchsorted(row, j)
        return bool(k < len(row) and row[k] == j)

    def successors(self, i: int) -> np.ndarray:
        return self.adj.indices[self.adj.indptr[i]:self.adj.indptr[i + 1]]

    def induced(self, keep: Sequence[int]) -> "ExplicitGraph":
        keep = np.asarray(keep, dtype=np.int64)
        sub = self.adj[keep][:, keep]
        return ExplicitGraph([self.vertices[i] for i in keep], sub)

    def self_loops(self) -> List[int]:
        return np.flatnonzero(self.adj.diagonal()).tolist()

    def dimension_classes(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for i, v in enumerate(self.vertices):
            out.setdefault(len(v), []).append(i)
        return out


def _component_edges(c: Formula):
    """(rows, cols, size) of a component in Kronecker index order.

    Index arithmetic on numpy arrays gives the same result as the sparse
    ``kron`` expressions above without building a matrix per node.
    """
    if c.is_leaf:
        g = c.graph
        cached = g.__dict__.get("_edge_arrays")
        if cached is None:
            idx = {v: i for i, v in enumerate(g.vertices)}
            pairs = np.array([(idx[u], idx[v]) for u, v in g.edges], dtype=np.int64).reshape(-1, 2)
            cached = (pairs[:, 0].copy(), pairs[:, 1].copy(), len(g.vertices))
            g.__dict__["_edge_arrays"] = cached
        return cached
    parts = [_component_edges(ch) for ch in c.children]
    if c.op == TENSOR:
        r, q, n = parts[0]
        for r2, q2, n2 in parts[1:]:
            r = (r[:, None] * n2 + r2[None, :]).ravel()
            q = (q[:, None] * n2 + q2[None, :]).ravel()
            n *= n2
        return r, q, n
    assert c.op == CART
    sizes = [n for _, _, n in parts]
    total = int(np.prod(sizes))
    rows, cols = [], []
    for i, (r, q, n) in enumerate(parts):
        before = np.arange(int(np.prod(sizes[:i])), dtype=np.int64)
        after = np.arange(int(np.prod(sizes[i + 1:])), dtype=np.int64)
        k = len(after)
        base = before[:, None, None] * (n * k)
        rows.append((base + r[None, :, None] * k + after[None, None, :]).ravel())
        cols.append((base + q[None, :, None] * k + after[None, None, :]).ravel())
    r, q = np.concatenate(rows), np.concatenate(cols)
    # Loops on two children give the same (v, v) edge twice.
    if len(r):
        keys = np.unique(r * total + q)
        r, q = keys // total, keys % total
    return r, q, total


def materialize(f: Formula, max_vertices: Optional[int] = DEFAULT_VERTEX_CAP) -> ExplicitGraph:
    """Build the explicit graph of ``f``.

    Raises ``SizeCapError`` when the number of distinct vertices exceeds
    ``max_vertices`` (``None`` disables the guard).
    """
    groups = component_groups(f)
    seen: Set[Vertex] = set()
    for per_dim in groups.values():
        for lists in per_dim:
            for v in _product_iter(lists):
                seen.add(v)
                if max_vertices is not None and len(seen) > max_vertices:
                    raise SizeCapError(f"vertex count exceeds cap {max_vertices}")
    vertices = sorted(seen, key=vertex_key)
    index = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)

    local_to_global: Dict[tuple, np.ndarray] = {}
    rows, cols = [], []
    for c in components(f):
        lvs = leaves(c)
        sig = tuple(leaf.graph.vertex_set for leaf in lvs)
        l2g = local_to_global.get(sig)
        if l2g is None:
            lists = [leaf.graph.vertices for leaf in lvs]
            l2g = np.fromiter((index[v] for v in _product_iter(lists)), dtype=np.int64)
            local_to_global[sig] = l2g
        lr, lq, _ = _component_edges(c)
        rows.append(l2g[lr])
        cols.append(l2g[lq])
    r = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    q = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    dims = np.fromiter((len(v) for v in vertices), dtype=np.int64, count=n)
    if len(r) and not np.array_equal(dims[r], dims[q]):
        raise AssertionError("edge between vertices of different dimensions")
    adj = sp.csr_matrix((np.ones(len(r), dtype=bool), (r, q)), shape=(n, n))
    return ExplicitGraph(vertices, adj)


def to_edge_list(g: ExplicitGraph) -> str:
    """Vertex lines ``[v]`` followed by edge lines ``[u] -> [v]``, in vertex order."""
    lines = [format_tuple(v) for v in g.vertices]
    lines += [f"{format_tuple(u)} -> {format_tuple(v)}" for u, v in g.edge_tuples()]
    return "\n".join(lines) + "\n"


def to_dot(g: ExplicitGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    lines += [f'  "{format_tuple(v)}";' for v in g.vertices]
    lines += [f'  "{format_tuple(u)}" -> "{format_tuple(v)}";' for u, v in g.edge_tuples()]
    lines.append("}")
    return "\n".join(lines) + "\n"


_EDGE_LINE = re.compile(r"^\s*(\[[^\]]*\])\s*->\s*(\[[^\]]*\])\s*$")


def parse_edge_list(text: str) -> ExplicitGraph:
    """Inverse of ``to_edge_list``; edge endpoints are added as vertices too."""
    verts: Dict[Vertex, None] = {}
    pairs = []
    for line in text.splitlines():
        if not line.strip():
            continue
        m = _EDGE_LINE.match(line)
        if m:
            u, v = parse_tuple(m.group(1)), parse_tuple(m.group(2))
            verts.setdefault(u)
            verts.setdefault(v)
            pairs.append((u, v))
        else:
            verts.setdefault(parse_tuple(line))
    vs = sorted(verts, key=vertex_key)
    index = {v: i for i, v in enumerate(vs)}
    n = len(vs)
    r = [index[u] for u, _ in pairs]
    q = [index[v] for _, v in pairs]
    adj = sp.csr_matrix((np.ones(len(r), dtype=bool), (r, q)), shape=(n, n))
    return ExplicitGraph(vs, adj)

