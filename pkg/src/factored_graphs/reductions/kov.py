"""k-Orthogonal-Vectors instances and their reachability compiler.

Vertex v(i, j, l, b) stands for set i, vector j, coordinate l (1..d) and a
bit b.  Along a path every coordinate of the k-tuple walks l = 1..d; at each
l the tuple must flip all bits from 0 to 1 before stepping to l + 1.  A flip
of coordinate i is free when vector j of set i has a zero at l (graph G_i);
otherwise it needs some other coordinate already flipped (the horizontal
gadget H).  So the source reaches the target iff some choice of vectors has
at least one zero in every position.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..core import BaseGraph, FormulaDoc, Leaf, cart, tensor, union
from ..errors import ValidationError
from .common import CompiledInstance
from .specfile import one, read_fields

Vector = Tuple[int, ...]


@dataclass
class KOVInstance:
    sets: List[List[Vector]]

    def __post_init__(self):
        self.sets = [[tuple(v) for v in s] for s in self.sets]
        if not self.sets:
            raise ValidationError("need at least one vector set")
        n = len(self.sets[0])
        if n == 0 or any(len(s) != n for s in self.sets):
            raise ValidationError("all vector sets must hold the same positive number of vectors")
        d = len(self.sets[0][0])
        for s in self.sets:
            for v in s:
                if len(v) != d or any(x not in (0, 1) for x in v):
                    raise ValidationError("vectors must be 0/1 of one common length")

    @property
    def k(self):
        return len(self.sets)

    @property
    def n(self):
        return len(self.sets[0])

    @property
    def d(self):
        return len(self.sets[0][0])


def parse_kov(text: str) -> KOVInstance:
    fields = read_fields(text, "kov")
    k, d = int(one(fields, "k")), int(one(fields, "d"))
    sets = []
    for raw in fields.get("set", []):
        vecs = []
        for word in raw.split():
            if not re.fullmatch(r"[01]+", word) or len(word) != d:
                raise ValidationError(f"bad vector {word!r} (want {d} bits)")
            vecs.append(tuple(int(c) for c in word))
        sets.append(vecs)
    if len(sets) != k:
        raise ValidationError(f"expected {k} sets, found {len(sets)}")
    return KOVInstance(sets)


def format_kov(inst: KOVInstance) -> str:
    lines = ["kov {", f"  k: {inst.k};", f"  d: {inst.d};"]
    for s in inst.sets:
        lines.append("  set: " + " ".join("".join(map(str, v)) for v in s) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_kov(k: int, n: int, d: int, rng: Optional[random.Random] = None,
               p_one: float = 0.5) -> KOVInstance:
    rng = rng or random.Random()
    return KOVInstance([[tuple(int(rng.random() < p_one) for _ in range(d)) for _ in range(n)]
                        for _ in range(k)])


def solve_kov_brute(inst: KOVInstance) -> bool:
    for combo in itertools.product(*inst.sets):
        if all(any(v[l] == 0 for v in combo) for l in range(inst.d)):
            return True
    return False


def compile_kov_reach(inst: KOVInstance) -> CompiledInstance:
    k, n, d = inst.k, inst.n, inst.d
    if k < 2:
        raise ValidationError("need k >= 2")
    legend: Dict[int, str] = {}
    lab: Dict[tuple, int] = {}
    nxt = 0

    def new(key, name):
        nonlocal nxt
        lab[key] = nxt
        legend[nxt] = name
        nxt += 1

    for i in range(1, k + 1):
        new(("s", i), f"s_{i}")
        for j in range(1, n + 1):
            for l in range(1, d + 1):
                for b in (0, 1):
                    new(("v", i, j, l, b), f"v_{{{i},{j},{l},{b}}}")
        new(("t", i), f"t_{i}")

    def v(i, j, l, b):
        return lab[("v", i, j, l, b)]

    doc = FormulaDoc()

    def add(name, verts, edges):
        doc.graphs[name] = BaseGraph(name, sorted(verts), edges)
        return Leaf(doc.graphs[name])

    G, D, H, L0, L1, S, T = {}, {}, {}, {}, {}, {}, {}
    for i in range(1, k + 1):
        vecs = inst.sets[i - 1]
        V = [v(i, j, l, b) for j in range(1, n + 1) for l in range(1, d + 1) for b in (0, 1)]
        G[i] = add(f"G{i}", V, [(v(i, j, l, 0), v(i, j, l, 1)) for j in range(1, n + 1)
                                for l in range(1, d + 1) if vecs[j - 1][l - 1] == 0])
        H[i] = add(f"H{i}", V, [(v(i, j, l, 0), v(i, j, l, 1)) for j in range(1, n + 1)
                                for l in range(1, d + 1)])
        L0[i] = add(f"L0_{i}", V, [(x, x) for x in V])
        L1[i] = add(f"L1_{i}", V, [(v(i, j, l, 1), v(i, j, l, 1)) for j in range(1, n + 1)
                                   for l in range(1, d + 1)])
        D[i] = add(f"D{i}", V, [(v(i, j, l - 1, 1), v(i, j, l, 0)) for j in range(1, n + 1)
                                for l in range(2, d + 1)])
        firsts = [v(i, j, 1, 0) for j in range(1, n + 1)]
        lasts = [v(i, j, d, 1) for j in range(1, n + 1)]
        S[i] = add(f"S{i}", [lab[("s", i)]] + firsts, [(lab[("s", i)], x) for x in firsts])
        T[i] = add(f"T{i}", lasts + [lab[("t", i)]], [(x, lab[("t", i)]) for x in lasts])

    idx = range(1, k + 1)
    # Coordinate i flips via H_i while coordinate j, already flipped, waits on L1_j.
    horiz = [tensor(*[H[p] if p == i else L1[p] if p == j else L0[p] for p in idx])
             for i in idx for j in idx if i != j]
    doc.formulas["Gv"] = cart(*[G[i] for i in idx])
    doc.formulas["Dg"] = tensor(*[D[i] for i in idx])
    doc.formulas["H"] = union(*horiz)
    doc.formulas["Src"] = tensor(*[S[i] for i in idx])
    doc.formulas["Tgt"] = tensor(*[T[i] for i in idx])
    doc.formulas["G"] = union(doc.formulas["Gv"], doc.formulas["Dg"], doc.formulas["H"],
                              doc.formulas["Src"], doc.formulas["Tgt"])
    src = tuple(lab[("s", i)] for i in idx)
    dst = tuple(lab[("t", i)] for i in idx)
    return CompiledInstance(doc, "G", {"src": src, "dst": dst}, legend,
                            {"labels": lab, "k": k, "n": n, "d": d})
