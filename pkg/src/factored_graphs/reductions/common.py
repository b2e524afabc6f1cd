"""Output bundle shared by the reduction compilers."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, Tuple

from ..core import FormulaDoc, Vertex, contains, format_tuple, parse_tuple
from ..dsl import format_doc, parse
from ..errors import ValidationError


@dataclass
class CompiledInstance:
    """A compiled problem: the .fg document, the query and a label legend.

    ``query`` holds ``target`` (LFMIS membership) or ``src`` and ``dst``
    (reachability).  ``info`` carries compiler facts such as T or the
    segment length.
    """

    doc: FormulaDoc
    formula_name: str
    query: Dict[str, Vertex]
    legend: Dict[int, str]
    info: dict = field(default_factory=dict)

    @property
    def formula(self):
        return self.doc.formula(self.formula_name)

    def check(self):
        used = set()
        for g in self.doc.graphs.values():
            for v in g.vertices:
                used.update(v)
        missing = used - set(self.legend)
        if missing:
            raise ValidationError(f"legend misses labels {sorted(missing)[:5]}")
        for key, v in self.query.items():
            if not contains(self.formula, v):
                raise ValidationError(f"query vertex {key} is not a vertex of the formula")

    def query_text(self) -> str:
        lines = [f"formula {self.formula_name}"]
        lines += [f"{k} {format_tuple(v)}" for k, v in self.query.items()]
        return "\n".join(lines) + "\n"

    def legend_text(self) -> str:
        return "".join(f"{lab}\t{name}\n" for lab, name in sorted(self.legend.items()))

    def write(self, prefix: str) -> Tuple[str, str, str]:
        """Write ``prefix.fg``, ``prefix.legend`` and ``prefix.query``."""
        d = os.path.dirname(prefix)
        if d:
            os.makedirs(d, exist_ok=True)
        paths = (prefix + ".fg", prefix + ".legend", prefix + ".query")
        for path, text in zip(paths, (format_doc(self.doc), self.legend_text(), self.query_text())):
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return paths


def read_query(text: str) -> Tuple[str, Dict[str, Vertex]]:
    name = None
    query: Dict[str, Vertex] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        key, _, value = line.partition(" ")
        if key == "formula":
            name = value.strip()
        else:
            query[key] = parse_tuple(value)
    if name is None:
        raise ValidationError("query file names no formula")
    return name, query


def load_instance(prefix: str) -> CompiledInstance:
    with open(prefix + ".fg", encoding="utf-8") as fh:
        doc = parse(fh.read())
    with open(prefix + ".query", encoding="utf-8") as fh:
        name, query = read_query(fh.read())
    legend = {}
    if os.path.exists(prefix + ".legend"):
        with open(prefix + ".legend", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    lab, _, text = line.rstrip("\n").partition("\t")
                    legend[int(lab)] = text
    return CompiledInstance(doc, name, query, legend)
