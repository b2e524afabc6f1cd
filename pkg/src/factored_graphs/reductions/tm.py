"""Deterministic single-tape Turing machines: model, simulator, tile consistency.

Conventions: the tape starts with the input in cells 1..n (index 0..n-1
here) followed by blanks ``_``.  A run is valid only if the machine halts
with its head on cell 1 and cell 1 blank; moving left from cell 1 is
reported as a violation rather than silently clamped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..errors import ConventionError, StepBudgetError, ValidationError
from .specfile import arrows, one, read_fields, symbols

BLANK = "_"
STAR = "*"
START_TILE = "^q0"     # the marked start state
MOVES = ("L", "R")

Tile = Tuple[str, str]


def marked_input(i: int) -> str:
    """Name of the marked copy of input cell ``i`` (1-based)."""
    return f"^x{i}"


@dataclass
class TMSpec:
    states: List[str]
    input_alphabet: List[str]
    tape_alphabet: List[str]
    start: str
    accept: str
    reject: str
    delta: Dict[Tuple[str, str], Tuple[str, str, str]] = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    @property
    def halting(self):
        return (self.accept, self.reject)

    def validate(self):
        qs, gs = set(self.states), set(self.tape_alphabet)
        if len(qs) != len(self.states) or len(gs) != len(self.tape_alphabet):
            raise ValidationError("duplicate state or symbol")
        if BLANK not in gs:
            raise ValidationError("tape alphabet must contain the blank '_'")
        for q in (self.start, self.accept, self.reject):
            if q not in qs:
                raise ValidationError(f"unknown state {q!r}")
        if self.accept == self.reject:
            raise ValidationError("accept and reject states must differ")
        for a in self.input_alphabet:
            if a not in gs or a == BLANK:
                raise ValidationError(f"input symbol {a!r} must be a non-blank tape symbol")
        for (q, a), (q2, a2, d) in self.delta.items():
            if q not in qs or a not in gs or q2 not in qs or a2 not in gs or d not in MOVES:
                raise ValidationError(f"bad transition ({q},{a})->({q2},{a2},{d})")
            if q in self.halting:
                raise ValidationError(f"halting state {q!r} has a transition")
        for q in self.states:
            if q in self.halting:
                continue
            for a in self.tape_alphabet:
                if (q, a) not in self.delta:
                    raise ValidationError(f"transition function is not total: missing ({q},{a})")


def parse_tm(text: str) -> TMSpec:
    fields = read_fields(text, "tm")
    delta = {}
    for lhs, rhs in arrows(" ".join(fields.get("delta", []))):
        if len(lhs) != 2 or len(rhs) != 3:
            raise ValidationError("TM transitions look like (q,a)->(q',a',R)")
        key = (lhs[0], lhs[1])
        if key in delta:
            raise ValidationError(f"transition ({lhs[0]},{lhs[1]}) given twice")
        delta[key] = (rhs[0], rhs[1], rhs[2])
    return TMSpec(symbols(one(fields, "states")), symbols(one(fields, "input")),
                  symbols(one(fields, "tape")), one(fields, "start"), one(fields, "accept"),
                  one(fields, "reject"), delta)


def format_tm(tm: TMSpec) -> str:
    lines = ["tm {",
             f"  states: {' '.join(tm.states)};",
             f"  input: {' '.join(tm.input_alphabet)};",
             f"  tape: {' '.join(tm.tape_alphabet)};",
             f"  start: {tm.start};", f"  accept: {tm.accept};", f"  reject: {tm.reject};",
             "  delta:"]
    for (q, a), (q2, a2, d) in tm.delta.items():
        lines.append(f"    ({q},{a})->({q2},{a2},{d})")
    lines += ["  ;", "}"]
    return "\n".join(lines) + "\n"


def input_symbols(x) -> List[str]:
    """Strings are read one character per symbol; sequences are taken as given."""
    return list(x)


@dataclass
class ExecutionTrace:
    """Configuration matrix of a halting run.

    ``rows[i][c]`` is ``(state, symbol)`` for the head cell and
    ``("*", symbol)`` elsewhere.  ``t`` is the number of rows, so the
    initial configuration is row 0 and the halting one is row ``t - 1``.
    """

    rows: List[List[Tile]]
    accept: bool
    halt_state: str

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def steps(self) -> int:
        return len(self.rows) - 1

    @property
    def width(self) -> int:
        return len(self.rows[0])


def simulate_tm(tm: TMSpec, x, max_steps: int = 100_000) -> ExecutionTrace:
    xs = input_symbols(x)
    for a in xs:
        if a not in tm.input_alphabet:
            raise ValidationError(f"input symbol {a!r} not in the input alphabet")
    tape = xs[:] or [BLANK]
    head, state = 0, tm.start
    snaps = [(state, head, tuple(tape))]
    while state not in tm.halting:
        if len(snaps) > max_steps:
            raise StepBudgetError(f"no halt within {max_steps} steps")
        q2, a2, d = tm.delta[(state, tape[head])]
        tape[head] = a2
        if d == "L":
            if head == 0:
                raise ConventionError("head moved off left end")
            head -= 1
        else:
            head += 1
            if head == len(tape):
                tape.append(BLANK)
        state = q2
        snaps.append((state, head, tuple(tape)))
    if head != 0:
        raise ConventionError("head not leftmost")
    if tape[0] != BLANK:
        raise ConventionError("leftmost not blank")
    width = max(len(s[2]) for s in snaps)
    rows = []
    for q, h, cells in snaps:
        cells = cells + (BLANK,) * (width - len(cells))
        rows.append([(q if c == h else STAR, a) for c, a in enumerate(cells)])
    return ExecutionTrace(rows, state == tm.accept, state)


@dataclass
class ConventionReport:
    ok: bool
    violation: Optional[str] = None

    def __str__(self):
        return "ok" if self.ok else f"violation: {self.violation}"


def validate_tm_convention(tm: TMSpec, x, max_steps: int = 100_000) -> ConventionReport:
    try:
        simulate_tm(tm, x, max_steps)
    except ConventionError as e:
        return ConventionReport(False, str(e))
    return ConventionReport(True)


@dataclass
class ConsistencyTable:
    """Allowed neighbour tiles per direction V, H, R, L over the full tile alphabet."""

    states: List[str]          # marked start, star, then the machine states
    symbols: List[str]         # marked inputs, blank, then the other tape symbols
    tables: Dict[str, Dict[Tile, FrozenSet[Tile]]]

    def __call__(self, direction: str, q: str, a: str) -> FrozenSet[Tile]:
        return self.tables[direction][(q, a)]

    @property
    def tiles(self) -> List[Tile]:
        return [(q, a) for q in self.states for a in self.symbols]


def tile_alphabet(tm: TMSpec, n: int):
    """Tile states and symbols in priority order."""
    states = [START_TILE, STAR] + list(tm.states)
    syms = [marked_input(i) for i in range(1, n + 1)] + [BLANK] + \
        [a for a in tm.tape_alphabet if a != BLANK]
    return states, syms


def consistency(tm: TMSpec, x) -> ConsistencyTable:
    xs = input_symbols(x)
    n = len(xs)
    states, syms = tile_alphabet(tm, n)
    q_star = list(tm.states) + [STAR]
    gamma = list(tm.tape_alphabet)

    def nq(q):
        return tm.start if q == START_TILE else q

    def na(a):
        if a.startswith("^x"):
            return xs[int(a[2:]) - 1]
        return a

    def grid(qs, as_):
        return frozenset((q, a) for q in qs for a in as_)

    all_qg = grid(q_star, gamma)
    tables: Dict[str, Dict[Tile, FrozenSet[Tile]]] = {"V": {}, "H": {}, "R": {}, "L": {}}
    for q in states:
        for a in syms:
            q0, a0 = nq(q), na(a)
            if q0 == STAR:
                tables["V"][(q, a)] = grid(q_star, [a0])
            elif q0 in tm.halting:
                tables["V"][(q, a)] = frozenset([(q0, a0)])
            else:
                tables["V"][(q, a)] = frozenset([(STAR, tm.delta[(q0, a0)][1])])

            if a.startswith("^x") and int(a[2:]) <= n - 1:
                tables["H"][(q, a)] = grid(q_star, gamma + [marked_input(int(a[2:]) + 1)])
            else:
                tables["H"][(q, a)] = all_qg

            for side in ("R", "L"):
                if q0 == STAR or q0 in tm.halting:
                    tables[side][(q, a)] = all_qg
                else:
                    q2, _, d = tm.delta[(q0, a0)]
                    tables[side][(q, a)] = grid([q2] if d == side else [STAR], gamma)
    return ConsistencyTable(states, syms, tables)
