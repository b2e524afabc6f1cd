"""Compile a Turing machine run into an LFMIS instance on a factored graph.

The graph has a T x T grid of supernodes.  Each supernode is a clique on the
tile alphabet (state-or-star, symbol), so an independent set picks at most
one tile per grid cell.  Between a cell and its four children (below, right,
below-right, below-left) an edge joins every pair of tiles that is not
allowed to sit together.  Grid cells are written as k base-n digits, so a
row or column index costs k coordinates and the grid itself is a product of
digit graphs.
"""
from __future__ import annotations

from typing import Dict, List, Tuple

from ..core import BaseGraph, Formula, FormulaDoc, Leaf, cart, tensor, union
from ..errors import SizeCapError, ValidationError
from .common import CompiledInstance
from .tm import (BLANK, STAR, START_TILE, TMSpec, consistency, input_symbols, marked_input,
                 simulate_tm)

DEFAULT_MAX_T = 4096


def digit_graphs(b: int, labels=None):
    """Edgeless ``A``, increment ``B``, wrap ``C`` and their reversals on Z_b."""
    labels = list(range(b)) if labels is None else list(labels)
    inc = [(labels[i], labels[i + 1]) for i in range(b - 1)]
    wrap = [(labels[b - 1], labels[0])]
    return {
        "A": BaseGraph("A", labels),
        "B": BaseGraph("B", labels, inc),
        "C": BaseGraph("C", labels, wrap),
        "Bd": BaseGraph("Bd", labels, [(v, u) for u, v in inc]),
        "Cd": BaseGraph("Cd", labels, [(v, u) for u, v in wrap]),
    }


def path_formula(A: BaseGraph, B: BaseGraph, C: BaseGraph, k: int) -> Formula:
    """Path on b^k vertices in base-b digit order.

    Term i adds one at the digit in position i from the right: that digit
    steps along B while the i lower digits wrap from b-1 to 0 along C and the
    higher digits stay fixed.
    """
    terms = []
    for i in range(k):
        step = tensor(Leaf(B), *[Leaf(C)] * i)
        fixed = [Leaf(A)] * (k - i - 1)
        terms.append(cart(*fixed, step) if fixed else step)
    return union(*terms)


def empty_power(A: BaseGraph, k: int) -> Formula:
    """Edgeless graph on b^k vertices as a k-fold Cartesian power."""
    return cart(*[Leaf(A)] * k)


def build_factored_path(b: int, k: int, direction: str = "inc") -> FormulaDoc:
    if b < 2 or k < 1:
        raise ValidationError("need b >= 2 and k >= 1")
    if direction not in ("inc", "dec"):
        raise ValidationError("direction is 'inc' or 'dec'")
    g = digit_graphs(b)
    B, C = (g["B"], g["C"]) if direction == "inc" else (g["Bd"], g["Cd"])
    B = BaseGraph("B", B.vertices, B.edges)
    C = BaseGraph("C", C.vertices, C.edges)
    doc = FormulaDoc()
    for graph in (g["A"], B, C):
        doc.graphs[graph.name] = graph
    doc.formulas["P"] = path_formula(g["A"], B, C, k)
    return doc


def grid_doc(n: int, k: int) -> FormulaDoc:
    """The four T x T direction grids (T = n^k) as named formulas GV, GH, GR, GL."""
    g = digit_graphs(n)
    doc = FormulaDoc(dict(g))
    P = path_formula(g["A"], g["B"], g["C"], k)
    Pd = path_formula(g["A"], g["Bd"], g["Cd"], k)
    E = empty_power(g["A"], k)
    doc.formulas.update(P=P, Pd=Pd, E=E, GV=cart(P, E), GH=cart(E, P),
                        GR=tensor(P, P), GL=tensor(P, Pd))
    return doc


def to_digits(value: int, n: int, k: int) -> Tuple[int, ...]:
    out = []
    for _ in range(k):
        value, r = divmod(value, n)
        out.append(r)
    return tuple(reversed(out))


def from_digits(digits, n: int) -> int:
    val = 0
    for d in digits:
        val = val * n + d
    return val


def choose_T(n: int, t: int) -> Tuple[int, int]:
    """Smallest power T = n^k (k >= 1) with T >= t."""
    T, k = n, 1
    while T < t:
        T *= n
        k += 1
    return T, k


def compile_tm_lfmis(tm: TMSpec, x, max_T: int = DEFAULT_MAX_T) -> CompiledInstance:
    xs = input_symbols(x)
    n = len(xs)
    if n < 2:
        raise ValidationError("the input needs at least two symbols (base-n digits)")
    trace = simulate_tm(tm, xs)
    T, k = choose_T(n, trace.t)
    if T > max_T:
        raise SizeCapError(f"T = {T} exceeds cap {max_T}")
    table = consistency(tm, xs)
    tiles = table.tiles
    tile_label = {tile: n + i for i, tile in enumerate(tiles)}
    labels = list(tile_label.values())

    g = digit_graphs(n)
    doc = FormulaDoc(dict(g))
    doc.graphs["K"] = BaseGraph("K", labels, [(u, v) for u in labels for v in labels if u != v])
    for d in "VHRL":
        edges = [(tile_label[a], tile_label[b]) for a in tiles for b in tiles
                 if b not in table(d, *a)]
        doc.graphs["R" + d] = BaseGraph("R" + d, labels, edges)
    R = {d: Leaf(doc.graphs["R" + d]) for d in "VHRL"}

    P = path_formula(g["A"], g["B"], g["C"], k)
    Pd = path_formula(g["A"], g["Bd"], g["Cd"], k)
    E = empty_power(g["A"], k)
    G1 = cart(E, E, Leaf(doc.graphs["K"]))
    GV = tensor(cart(P, E), R["V"])
    GH = tensor(cart(E, P), R["H"])
    GR = tensor(P, P, R["R"])
    GL = tensor(P, Pd, R["L"])
    doc.formulas.update(P=P, Pd=Pd, E=E, G1=G1, GV=GV, GH=GH, GR=GR, GL=GL,
                        G=union(G1, GV, GH, GR, GL))

    legend: Dict[int, str] = {i: f"digit {i}" for i in range(n)}
    for (q, a), lab in tile_label.items():
        legend[lab] = f"({q}, {a})"
    target = to_digits(T - 1, n, k) + to_digits(0, n, k) + (tile_label[(tm.accept, BLANK)],)
    return CompiledInstance(doc, "G", {"target": target}, legend,
                            {"T": T, "k": k, "n": n, "t": trace.t, "accept": trace.accept,
                             "tile_label": tile_label, "trace": trace})


def expected_tiling(trace, xs, T: int) -> List[List[Tuple[str, str]]]:
    """The tile every grid cell should carry in the LFMIS.

    Row 0 holds the marked start tile and marked input copies; rows after
    the halting row repeat it.
    """
    n = len(xs)
    rows = []
    for i in range(T):
        src = trace.rows[min(i, trace.t - 1)]
        row = [src[j] if j < len(src) else (STAR, BLANK) for j in range(T)]
        rows.append(row)
    first = [(STAR, BLANK)] * T
    for j in range(n):
        first[j] = (STAR, marked_input(j + 1))
    first[0] = (START_TILE, marked_input(1))
    rows[0] = first
    return rows


def decode_members(members, inst: CompiledInstance):
    """Map LFMIS members back to ``{(row, col): tile}``."""
    n, k = inst.info["n"], inst.info["k"]
    by_label = {lab: tile for tile, lab in inst.info["tile_label"].items()}
    out = {}
    for v in members:
        row = from_digits(v[:k], n)
        col = from_digits(v[k:2 * k], n)
        out.setdefault((row, col), []).append(by_label[v[2 * k]])
    return out

