"""Reader and writer for the ``.fg`` formula language.

    graph A { vertices: 0 1 2; edges: (0,1) (1,2); }
    formula F = (A * A) # A + A;

Precedence is tensor ``*`` over Cartesian ``#`` over union ``+``.  A name in
a formula refers to a graph or to a formula declared earlier in the file.
Vertices may also be written as tuple literals (``[3,4]``) for graphs whose
vertices span several coordinates.
"""
from __future__ import annotations

import re
from typing import Dict, List, Optional

from .core import (CART, TENSOR, UNION, BaseGraph, Formula, FormulaDoc, Leaf,
                   make_op)
from .errors import DslSyntaxError, ValidationError

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>//[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[{}()\[\],;:=+#*])
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(text: str) -> List[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.doc = FormulaDoc()

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return DslSyntaxError(msg, tok.line, tok.col)

    def expect(self, text=None, kind=None):
        t = self.peek()
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(t.text) if t.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        return self.next()

    def parse(self) -> FormulaDoc:
        while self.peek().kind != "eof":
            t = self.peek()
            if t.text == "graph":
                self.graphdecl()
            elif t.text == "formula":
                self.formuladecl()
            else:
                raise self.error(f"expected 'graph' or 'formula', got {t.text!r}")
        return self.doc

    def _check_fresh(self, tok):
        if tok.text in self.doc.graphs or tok.text in self.doc.formulas:
            raise self.error(f"duplicate graph/formula name {tok.text!r}", tok)

    def graphdecl(self):
        self.expect("graph")
        name = self.expect(kind="name")
        self._check_fresh(name)
        self.expect("{")
        self.expect("vertices")
        self.expect(":")
        verts = []
        while self.peek().text != ";":
            verts.append(self.vertex())
        if not verts:
            raise self.error("a graph needs at least one vertex")
        self.expect(";")
        self.expect("edges")
        self.expect(":")
        edges = []
        seen = set()
        while self.peek().text != ";":
            tok = self.expect("(")
            u = self.vertex()
            self.expect(",")
            v = self.vertex()
            self.expect(")")
            if (u, v) in seen:
                raise self.error(f"duplicate edge ({_fmt_vertex(u)},{_fmt_vertex(v)})", tok)
            seen.add((u, v))
            edges.append((u, v))
        self.expect(";")
        self.expect("}")
        try:
            self.doc.graphs[name.text] = BaseGraph(name.text, verts, edges)
        except ValidationError as e:
            raise DslSyntaxError(str(e), name.line, name.col) from None

    def vertex(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            return (int(t.text),)
        if t.text == "[":
            self.next()
            labels = [int(self.expect(kind="int").text)]
            while self.peek().text == ",":
                self.next()
                labels.append(int(self.expect(kind="int").text))
            self.expect("]")
            return tuple(labels)
        raise self.error(f"expected a vertex label, got {t.text!r}")

    def formuladecl(self):
        self.expect("formula")
        name = self.expect(kind="name")
        self._check_fresh(name)
        self.expect("=")
        f = self.expr()
        self.expect(";")
        self.doc.formulas[name.text] = f

    def expr(self):
        return self._chain(UNION, self.term)

    def term(self):
        return self._chain(CART, self.factor)

    def factor(self):
        return self._chain(TENSOR, self.atom)

    def _chain(self, op, sub):
        parts = [sub()]
        while self.peek().text == op:
            self.next()
            parts.append(sub())
        return make_op(op, parts)

    def atom(self):
        t = self.peek()
        if t.text == "(":
            self.next()
            f = self.expr()
            self.expect(")")
            return f
        if t.kind == "name":
            self.next()
            if t.text in self.doc.graphs:
                return Leaf(self.doc.graphs[t.text])
            if t.text in self.doc.formulas:
                return self.doc.formulas[t.text]
            raise self.error(f"unknown graph name {t.text!r}", t)
        raise self.error(f"expected a graph name or '(', got {t.text!r}")


def parse(text: str) -> FormulaDoc:
    """Parse a ``.fg`` document."""
    return _Parser(text).parse()


def parse_formula(text: str, graphs: Dict[str, BaseGraph]) -> Formula:
    """Parse a bare expression against already-known graphs."""
    p = _Parser(text)
    p.doc.graphs.update(graphs)
    f = p.expr()
    p.expect(kind="eof")
    return f


def _fmt_vertex(v) -> str:
    if len(v) == 1:
        return str(v[0])
    return "[" + ",".join(str(x) for x in v) + "]"


def format_graph(g: BaseGraph, per_line: int = 12) -> str:
    verts = [_fmt_vertex(v) for v in g.vertices]
    edges = [f"({_fmt_vertex(u)},{_fmt_vertex(v)})" for u, v in sorted(g.edges)]

    def block(items):
        if len(items) <= per_line:
            return " ".join(items)
        rows = [" ".join(items[i:i + per_line]) for i in range(0, len(items), per_line)]
        return "\n    " + "\n    ".join(rows) + "\n   "

    return f"graph {g.name} {{\n  vertices: {block(verts)};\n  edges: {block(edges)};\n}}\n"


def format_formula(f: Formula, names: Optional[Dict[tuple, str]] = None) -> str:
    """Fully parenthesized text for ``f``; subtrees found in ``names`` print as names."""
    names = names or {}

    def go(node, top):
        if node.is_leaf:
            return node.graph.name
        if not top and node.key in names:
            return names[node.key]
        inner = f" {node.op} ".join(go(c, False) for c in node.children)
        return inner if top else f"({inner})"

    return go(f, True)


def format_doc(doc: FormulaDoc) -> str:
    out = [format_graph(g) for g in doc.graphs.values()]
    names: Dict[tuple, str] = {}
    for name, f in doc.formulas.items():
        out.append(f"formula {name} = {format_formula(f, names)};\n")
        if not f.is_leaf:
            names.setdefault(f.key, name)
    return "\n".join(out)

