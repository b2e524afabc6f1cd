"""Space-bounded nondeterministic machines and their reachability compiler.

Machine model: a read-only input tape holding x followed by one blank end
marker, and a work tape of S * m cells where m = max(1, ceil(log2 |x|)).
Both heads start on cell 0, move L, R or S, and are clamped at the tape ends.

The compiler cuts the work tape into S segments of m cells.  A segmented
configuration gives every segment its contents; exactly one segment is
active and additionally carries the state and both head positions.  The
configuration graph is then a union of tensor products, one per active
segment and one per boundary the work head can cross.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..core import BaseGraph, FormulaDoc, Leaf, tensor, union
from ..errors import SizeCapError, ValidationError
from .common import CompiledInstance
from .specfile import arrows, one, read_fields, symbols
from .tm import BLANK, input_symbols

NTM_MOVES = {"L": -1, "R": 1, "S": 0}
DEFAULT_CONFIG_CAP = 10 ** 6
DEFAULT_FACTOR_CAP = 10 ** 6

Move = Tuple[str, str, str, str]


@dataclass
class NTMSpec:
    states: List[str]
    input_alphabet: List[str]
    work_alphabet: List[str]
    start: str
    accept: str
    reject: str
    delta: Dict[Tuple[str, str, str], List[Move]] = field(default_factory=dict)
    space: int = 2

    def __post_init__(self):
        self.validate()

    @property
    def halting(self):
        return (self.accept, self.reject)

    def validate(self):
        qs, ws = set(self.states), set(self.work_alphabet)
        ins = set(self.input_alphabet) | {BLANK}
        if BLANK not in ws:
            raise ValidationError("work alphabet must contain the blank '_'")
        for q in (self.start, self.accept, self.reject):
            if q not in qs:
                raise ValidationError(f"unknown state {q!r}")
        if self.accept == self.reject:
            raise ValidationError("accept and reject states must differ")
        if self.space < 1:
            raise ValidationError("space factor must be at least 1")
        for (q, a, w), moves in self.delta.items():
            if q not in qs or a not in ins or w not in ws:
                raise ValidationError(f"bad transition key ({q},{a},{w})")
            for q2, w2, d1, d2 in moves:
                if q2 not in qs or w2 not in ws or d1 not in NTM_MOVES or d2 not in NTM_MOVES:
                    raise ValidationError(f"bad transition ({q},{a},{w})->({q2},{w2},{d1},{d2})")

    def moves(self, q, a, w):
        if q in self.halting:
            return ()
        return self.delta.get((q, a, w), ())


def parse_ntm(text: str) -> NTMSpec:
    fields = read_fields(text, "ntm")
    delta: Dict[Tuple[str, str, str], List[Move]] = {}
    for lhs, rhs in arrows(" ".join(fields.get("delta", []))):
        if len(lhs) != 3 or len(rhs) != 4:
            raise ValidationError("NTM transitions look like (q,ain,aw)->(q',aw',Din,Dw)")
        delta.setdefault(tuple(lhs), []).append(tuple(rhs))
    try:
        space = int(one(fields, "space"))
    except ValueError:
        raise ValidationError("space must be an integer") from None
    return NTMSpec(symbols(one(fields, "states")), symbols(one(fields, "input")),
                   symbols(one(fields, "tape")), one(fields, "start"), one(fields, "accept"),
                   one(fields, "reject"), delta, space)


def format_ntm(ntm: NTMSpec) -> str:
    lines = ["ntm {",
             f"  states: {' '.join(ntm.states)};",
             f"  input: {' '.join(ntm.input_alphabet)};",
             f"  tape: {' '.join(ntm.work_alphabet)};",
             f"  start: {ntm.start};", f"  accept: {ntm.accept};", f"  reject: {ntm.reject};",
             f"  space: {ntm.space};",
             "  delta:"]
    for (q, a, w), moves in ntm.delta.items():
        for q2, w2, d1, d2 in moves:
            lines.append(f"    ({q},{a},{w})->({q2},{w2},{d1},{d2})")
    lines += ["  ;", "}"]
    return "\n".join(lines) + "\n"


def segment_length(n: int) -> int:
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def _clamp(v, lo, hi):
    return lo if v < lo else hi if v > hi else v


def _successors(ntm: NTMSpec, tape_in, work_len, conf):
    q, hi, hw, work = conf
    for q2, w2, d1, d2 in ntm.moves(q, tape_in[hi], work[hw]):
        new = work[:hw] + (w2,) + work[hw + 1:]
        yield (q2, _clamp(hi + NTM_MOVES[d1], 0, len(tape_in) - 1),
               _clamp(hw + NTM_MOVES[d2], 0, work_len - 1), new)


def simulate_ntm_config_graph(ntm: NTMSpec, x, max_configs: int = DEFAULT_CONFIG_CAP) -> bool:
    """Explicit search of the configuration graph; True iff an accepting state is reachable."""
    xs = input_symbols(x)
    for a in xs:
        if a not in ntm.input_alphabet:
            raise ValidationError(f"input symbol {a!r} not in the input alphabet")
    tape_in = tuple(xs) + (BLANK,)
    work_len = ntm.space * segment_length(len(xs))
    start = (ntm.start, 0, 0, (BLANK,) * work_len)
    seen = {start}
    frontier = deque([start])
    while frontier:
        conf = frontier.popleft()
        if conf[0] == ntm.accept:
            return True
        for nxt in _successors(ntm, tape_in, work_len, conf):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_configs:
                    raise SizeCapError(f"more than {max_configs} configurations")
                frontier.append(nxt)
    return False


def with_cleanup(ntm: NTMSpec) -> NTMSpec:
    """Make acceptance end in one fixed configuration.

    The old accept state hands over to a sweep that blanks the work tape
    rightwards, then leftwards, then stops on cell 0.  Heads are clamped, so
    the machine cannot see the tape ends; it guesses when to turn and when to
    stop, and only correct guesses reach the blank configuration.  The input
    head drifts left throughout and parks on cell 0.
    """
    sweep_r, sweep_l, done = f"{ntm.accept}.sweepR", f"{ntm.accept}.sweepL", f"{ntm.accept}.done"
    delta = {key: list(moves) for key, moves in ntm.delta.items() if key[0] not in ntm.halting}
    for a in list(ntm.input_alphabet) + [BLANK]:
        for w in ntm.work_alphabet:
            delta[(ntm.accept, a, w)] = [(sweep_r, w, "S", "S")]
            delta[(sweep_r, a, w)] = [(sweep_r, BLANK, "L", "R"), (sweep_l, BLANK, "L", "S")]
            delta[(sweep_l, a, w)] = [(sweep_l, BLANK, "L", "L"), (done, BLANK, "L", "S")]
    return NTMSpec(list(ntm.states) + [sweep_r, sweep_l, done], list(ntm.input_alphabet),
                   list(ntm.work_alphabet), ntm.start, done, ntm.reject, delta, ntm.space)


def compile_ntm_reach(ntm: NTMSpec, x, max_factor: int = DEFAULT_FACTOR_CAP) -> CompiledInstance:
    xs = input_symbols(x)
    for a in xs:
        if a not in ntm.input_alphabet:
            raise ValidationError(f"input symbol {a!r} not in the input alphabet")
    machine = with_cleanup(ntm)
    tape_in = tuple(xs) + (BLANK,)
    m = segment_length(len(xs))
    S = machine.space
    W = S * m
    contents = list(itertools.product(machine.work_alphabet, repeat=m))
    per_segment = len(contents) * (1 + len(machine.states) * len(tape_in) * m)
    if per_segment > max_factor:
        raise SizeCapError(f"{per_segment} sub-configurations per segment exceed cap {max_factor}")

    legend: Dict[int, str] = {}
    meaning: Dict[int, tuple] = {}
    inactive: List[Dict] = []
    active: List[Dict] = []
    label = 0
    for i in range(S):
        lab_i, lab_a = {}, {}
        for c in contents:
            lab_i[c] = label
            meaning[label] = (i, None, c)
            legend[label] = f"seg{i + 1} inactive [{''.join(c)}]"
            label += 1
        for q in machine.states:
            for hi in range(len(tape_in)):
                for hw in range(m):
                    for c in contents:
                        lab_a[(q, hi, hw, c)] = label
                        meaning[label] = (i, (q, hi, i * m + hw), c)
                        legend[label] = f"seg{i + 1} active {q} in@{hi} work@{i * m + hw} [{''.join(c)}]"
                        label += 1
        inactive.append(lab_i)
        active.append(lab_a)

    def step(i, q, hi, hw, c):
        """Moves from segment i with local work head hw: (q2, hi2, global hw2, c2)."""
        g = i * m + hw
        for q2, w2, d1, d2 in machine.moves(q, tape_in[hi], c[hw]):
            c2 = c[:hw] + (w2,) + c[hw + 1:]
            yield (q2, _clamp(hi + NTM_MOVES[d1], 0, len(tape_in) - 1),
                   _clamp(g + NTM_MOVES[d2], 0, W - 1), c2)

    doc = FormulaDoc()
    for i in range(S):
        lab_i, lab_a = inactive[i], active[i]
        doc.graphs[f"I{i + 1}"] = BaseGraph(f"I{i + 1}", sorted(lab_i.values()),
                                            [(v, v) for v in lab_i.values()])
        edges = []
        for (q, hi, hw, c), u in lab_a.items():
            for q2, hi2, g2, c2 in step(i, q, hi, hw, c):
                if g2 // m == i:
                    edges.append((u, lab_a[(q2, hi2, g2 - i * m, c2)]))
        doc.graphs[f"A{i + 1}"] = BaseGraph(f"A{i + 1}", sorted(lab_a.values()), edges)

    for i in range(1, S):
        left_i, left_a = inactive[i - 1], active[i - 1]
        right_i, right_a = inactive[i], active[i]
        verts = [(a, b) for a in left_a.values() for b in right_i.values()] + \
                [(a, b) for a in left_i.values() for b in right_a.values()]
        edges = []
        for (q, hi, hw, c), u in left_a.items():
            if hw != m - 1:
                continue
            for q2, hi2, g2, c2 in step(i - 1, q, hi, hw, c):
                if g2 == i * m:
                    for rc, r in right_i.items():
                        edges.append(((u, r), (left_i[c2], right_a[(q2, hi2, 0, rc)])))
        for (q, hi, hw, c), u in right_a.items():
            if hw != 0:
                continue
            for q2, hi2, g2, c2 in step(i, q, hi, hw, c):
                if g2 == i * m - 1:
                    for lc, l in left_i.items():
                        edges.append(((l, u), (left_a[(q2, hi2, m - 1, lc)], right_i[c2])))
        doc.graphs[f"T{i + 1}"] = BaseGraph(f"T{i + 1}", sorted(verts), edges)

    I = [Leaf(doc.graphs[f"I{i + 1}"]) for i in range(S)]
    terms = []
    for i in range(S):
        factors = I[:i] + [Leaf(doc.graphs[f"A{i + 1}"])] + I[i + 1:]
        terms.append(tensor(*factors) if len(factors) > 1 else factors[0])
    for i in range(1, S):
        factors = I[:i - 1] + [Leaf(doc.graphs[f"T{i + 1}"])] + I[i + 1:]
        terms.append(tensor(*factors) if len(factors) > 1 else factors[0])
    doc.formulas["G"] = union(*terms) if len(terms) > 1 else terms[0]

    blank = (BLANK,) * m
    rest = tuple(inactive[i][blank] for i in range(1, S))
    src = (active[0][(machine.start, 0, 0, blank)],) + rest
    dst = (active[0][(machine.accept, 0, 0, blank)],) + rest
    return CompiledInstance(doc, "G", {"src": src, "dst": dst}, legend,
                            {"segment_length": m, "segments": S, "work_cells": W,
                             "factor_size": per_segment, "machine": machine,
                             "meaning": meaning})


def decode_configuration(inst: CompiledInstance, v):
    """Turn a compiled vertex back into (state, input head, work head, work tape)."""
    meaning = inst.info["meaning"]
    head = None
    tape: List[str] = []
    for i, lab in enumerate(v):
        seg, act, c = meaning[lab]
        if seg != i:
            raise ValidationError(f"label {lab} belongs to segment {seg + 1}, found at {i + 1}")
        tape.extend(c)
        if act is not None:
            if head is not None:
                raise ValidationError("two active segments")
            head = act
    if head is None:
        raise ValidationError("no active segment")
    return head + (tuple(tape),)
