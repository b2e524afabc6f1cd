"""Formula data model: base graphs, operator trees, components and vertex order.

A factored graph is an operator tree whose leaves are small explicit base
graphs.  Vertices of the big graph are flat tuples of integer labels; a leaf
of width ``w`` (normally 1) consumes ``w`` consecutive coordinates.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import NotAVertexError, SizeCapError, ValidationError

UNION = "+"
CART = "#"
TENSOR = "*"
OPS = (UNION, CART, TENSOR)
OP_NAMES = {UNION: "union", CART: "cartesian", TENSOR: "tensor"}

Vertex = Tuple[int, ...]

DEFAULT_COMPONENT_CAP = 2 ** 20


def as_vertex(v) -> Vertex:
    """Normalize an int or a sequence of ints into a label tuple."""
    if isinstance(v, int):
        if v < 0:
            raise ValidationError(f"negative vertex label {v}")
        return (v,)
    t = tuple(v)
    for x in t:
        if not isinstance(x, int) or x < 0:
            raise ValidationError(f"vertex labels must be non-negative integers, got {t!r}")
    return t


class BaseGraph:
    """Small explicit directed graph; the leaves of every formula.

    ``vertices`` is a strictly increasing tuple of label tuples, all of the
    same width.  Width-1 graphs may be built from plain ints.
    """

    def __init__(self, name: str, vertices: Iterable, edges: Iterable = ()):
        self.name = name
        verts = [as_vertex(v) for v in vertices]
        if not verts:
            raise ValidationError(f"graph {name} has no vertices")
        width = len(verts[0])
        if width == 0 or any(len(v) != width for v in verts):
            raise ValidationError(f"graph {name}: all vertices must have the same positive width")
        for a, b in zip(verts, verts[1:]):
            if not a < b:
                raise ValidationError(f"graph {name}: vertices must be strictly increasing")
        self.width = width
        self.vertices: Tuple[Vertex, ...] = tuple(verts)
        self.vertex_set = frozenset(verts)
        es = set()
        for u, v in edges:
            u, v = as_vertex(u), as_vertex(v)
            for end in (u, v):
                if end not in self.vertex_set:
                    raise ValidationError(f"graph {name}: edge endpoint {format_tuple(end)} not declared")
            es.add((u, v))
        self.edges = frozenset(es)
        succ: Dict[Vertex, list] = {}
        for u, v in es:
            succ.setdefault(u, []).append(v)
        self.succ: Dict[Vertex, Tuple[Vertex, ...]] = {u: tuple(sorted(vs)) for u, vs in succ.items()}

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"BaseGraph({self.name!r}, |V|={len(self.vertices)}, |E|={len(self.edges)})"

    @property
    def labels(self) -> List[int]:
        """Vertex labels of a width-1 graph as plain ints."""
        return [v[0] for v in self.vertices]

    def is_symmetric(self) -> bool:
        return all((v, u) in self.edges for u, v in self.edges)

    def has_self_loop(self) -> bool:
        return any(u == v for u, v in self.edges)


class Formula:
    """Common base of ``Leaf`` and ``OpNode``."""

    is_leaf = False
    dims: frozenset
    key: tuple

    def __add__(self, other):
        return make_op(UNION, [self, other])

    def __mul__(self, other):
        return make_op(TENSOR, [self, other])

    def cart(self, other):
        return make_op(CART, [self, other])

    def __eq__(self, other):
        return isinstance(other, Formula) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


class Leaf(Formula):
    is_leaf = True

    def __init__(self, graph: BaseGraph):
        self.graph = graph
        self.dims = frozenset([graph.width])
        self.key = ("leaf", graph.name)

    def __repr__(self):
        return f"Leaf({self.graph.name})"


class OpNode(Formula):
    def __init__(self, op: str, children: Sequence[Formula]):
        if op not in OPS:
            raise ValidationError(f"unknown operation {op!r}")
        if len(children) < 2:
            raise ValidationError("an operation node needs at least two children")
        self.op = op
        self.children: Tuple[Formula, ...] = tuple(children)
        if op == UNION:
            self.dims = frozenset().union(*(c.dims for c in children))
        else:
            acc = {0}
            for c in children:
                acc = {a + b for a in acc for b in c.dims}
            self.dims = frozenset(acc)
        self.key = (op,) + tuple(c.key for c in children)
        self._hash = hash(self.key)
        self._spans: Dict[int, list] = {}
        # Children in the order product edge tests should try them: leaves
        # first, since they are cheap and usually decide the answer.
        self.test_order = tuple(sorted(range(len(self.children)),
                                       key=lambda i: not self.children[i].is_leaf))
        self.adj_memo: Dict[tuple, bool] = {}

    def __repr__(self):
        return f"OpNode({self.op!r}, {list(self.children)!r})"

    def __hash__(self):
        return self._hash

    def spans(self, length: int) -> list:
        """All ways to cut ``length`` coordinates among the children.

        Only meaningful for product nodes.  Each result is a tuple of
        ``(start, stop)`` slices, one per child.
        """
        hit = self._spans.get(length)
        if hit is not None:
            return hit
        out = []

        def walk(i, start, acc):
            if i == len(self.children):
                if start == length:
                    out.append(tuple(acc))
                return
            for d in sorted(self.children[i].dims):
                if start + d <= length:
                    acc.append((start, start + d))
                    walk(i + 1, start + d, acc)
                    acc.pop()

        if length in self.dims:
            walk(0, 0, [])
        self._spans[length] = out
        return out


def make_op(op: str, children: Sequence[Formula]) -> Formula:
    """Build an operation node, flattening same-op children (canonical form)."""
    flat: List[Formula] = []
    for c in children:
        if isinstance(c, OpNode) and c.op == op:
            flat.extend(c.children)
        else:
            flat.append(c)
    if len(flat) == 1:
        return flat[0]
    return OpNode(op, flat)


def union(*fs: Formula) -> Formula:
    return make_op(UNION, fs)


def cart(*fs: Formula) -> Formula:
    return make_op(CART, fs)


def tensor(*fs: Formula) -> Formula:
    return make_op(TENSOR, fs)


@dataclass
class FormulaDoc:
    """A parsed document: named base graphs and named formulas, in file order."""

    graphs: Dict[str, BaseGraph] = field(default_factory=dict)
    formulas: Dict[str, Formula] = field(default_factory=dict)

    def formula(self, name: Optional[str] = None) -> Formula:
        if name is None:
            if not self.formulas:
                raise ValidationError("document declares no formula")
            return list(self.formulas.values())[-1]
        if name not in self.formulas:
            raise ValidationError(f"unknown formula {name!r}")
        return self.formulas[name]


class Complexity(NamedTuple):
    n: int
    k: int

    def __str__(self):
        return f"(n={self.n}, k={self.k})"


def iter_nodes(f: Formula):
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        if not node.is_leaf:
            stack.extend(reversed(node.children))


def leaves(f: Formula) -> List[Leaf]:
    return [n for n in iter_nodes(f) if n.is_leaf]


def base_graphs(f: Formula) -> Dict[str, BaseGraph]:
    out: Dict[str, BaseGraph] = {}
    for leaf in leaves(f):
        g = out.setdefault(leaf.graph.name, leaf.graph)
        if g is not leaf.graph:
            raise ValidationError(f"two different graphs are named {leaf.graph.name!r}")
    return out


def operation_count(f: Formula) -> int:
    return sum(len(n.children) - 1 for n in iter_nodes(f) if not n.is_leaf)


def complexity(f: Formula) -> Complexity:
    n = max(len(g) for g in base_graphs(f).values())
    return Complexity(n, 1 + operation_count(f))


def component_count_bound(f: Formula) -> int:
    """Number of union resolutions before duplicates are removed."""
    if f.is_leaf:
        return 1
    counts = [component_count_bound(c) for c in f.children]
    if f.op == UNION:
        return sum(counts)
    total = 1
    for c in counts:
        total *= c
    return total


def components(f: Formula, cap: int = DEFAULT_COMPONENT_CAP) -> List[Formula]:
    """Distinct union-free resolutions of ``f`` in left-to-right resolution order."""
    bound = component_count_bound(f)
    if bound > cap:
        raise SizeCapError(f"component count {bound} exceeds cap {cap}")
    seen = set()
    out = []
    for c in _resolve(f):
        if c.key not in seen:
            seen.add(c.key)
            out.append(c)
    return out


def _resolve(f: Formula):
    if f.is_leaf:
        return [f]
    parts = [_resolve(c) for c in f.children]
    if f.op == UNION:
        return [c for p in parts for c in p]
    return [make_op(f.op, combo) for combo in itertools.product(*parts)]


def dim(c: Formula) -> int:
    """Dimension of a union-free formula (its total leaf width)."""
    (d,) = c.dims
    return d


def contains(f: Formula, v) -> bool:
    """True iff ``v`` is a vertex of ``f`` (any component)."""
    v = tuple(v)
    if len(v) not in f.dims:
        return False
    return _contains(f, v)


def _contains(node: Formula, v: Vertex) -> bool:
    if node.is_leaf:
        return v in node.graph.vertex_set
    if node.op == UNION:
        n = len(v)
        return any(n in c.dims and _contains(c, v) for c in node.children)
    for spans in node.spans(len(v)):
        if all(_contains(c, v[a:b]) for c, (a, b) in zip(node.children, spans)):
            return True
    return False


def dimension_of(f: Formula, v) -> int:
    v = tuple(v)
    if not contains(f, v):
        raise NotAVertexError(f"{format_tuple(v)} is not a vertex of the formula")
    return len(v)


def vertex_key(v: Vertex):
    """Sort key realizing the vertex order: dimension first, then labels."""
    return (len(v), v)


def vertex_order(u, v) -> int:
    """Three-way comparison under the vertex order (-1, 0 or 1)."""
    ku, kv = vertex_key(tuple(u)), vertex_key(tuple(v))
    return (ku > kv) - (ku < kv)


def has_self_loop(f: Formula) -> bool:
    """Exact test for a vertex ``v`` with an edge ``(v, v)`` in ``f``."""
    if f.is_leaf:
        return f.graph.has_self_loop()
    if f.op == TENSOR:
        return all(has_self_loop(c) for c in f.children)
    return any(has_self_loop(c) for c in f.children)


def format_tuple(v) -> str:
    return "[" + ",".join(str(x) for x in v) + "]"


def parse_tuple(text: str) -> Vertex:
    """Parse a vertex tuple literal such as ``[3,0,7]``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValidationError(f"bad vertex tuple literal {text!r}")
    body = s[1:-1].strip()
    if not body:
        raise ValidationError("empty vertex tuple")
    try:
        labels = tuple(int(p) for p in body.split(","))
    except ValueError:
        raise ValidationError(f"bad vertex tuple literal {text!r}") from None
    return as_vertex(labels)
