"""Small sample machines over the alphabet {0, 1}.

Every sample TM halts with its head on cell 1 over a blank, as the LFMIS
compiler requires.
"""
from __future__ import annotations

from typing import Callable, Dict, Iterable, List

from .ntm import NTMSpec
from .tm import BLANK, TMSpec

BITS = ["0", "1"]


def _fill(delta, states, tape, halting):
    """Complete a partial table with harmless moves (only unreachable entries)."""
    for q in states:
        if q in halting:
            continue
        for a in tape:
            delta.setdefault((q, a), (q, a, "R"))
    return delta


def first_is_one() -> TMSpec:
    """Accepts iff the first symbol is 1.  Blanks cell 1, steps right, steps back."""
    states = ["q0", "yes", "no", "acc", "rej"]
    tape = [BLANK] + BITS
    delta = {
        ("q0", "1"): ("yes", BLANK, "R"),
        ("q0", "0"): ("no", BLANK, "R"),
    }
    for a in tape:
        delta[("yes", a)] = ("acc", a, "L")
        delta[("no", a)] = ("rej", a, "L")
    return TMSpec(states, BITS, tape, "q0", "acc", "rej", _fill(delta, states, tape, {"acc", "rej"}))


def dfa_machine(dfa_states: List[str], start: str, step: Callable[[str, str], str],
                accepting: Iterable[str]) -> TMSpec:
    """Run a DFA over the input, then return to cell 1 and halt.

    Cell 1 is overwritten with a marked copy (``0'`` or ``1'``) so the way back
    can find it; it is blanked on arrival.
    """
    accepting = set(accepting)
    marked = {b: b + "'" for b in BITS}
    tape = [BLANK] + BITS + list(marked.values())
    states = ["q0"] + [f"scan_{s}" for s in dfa_states] + [f"back_{s}" for s in dfa_states] + \
        [f"fin_{s}" for s in dfa_states] + ["acc", "rej"]
    delta: Dict = {}
    for b in BITS:
        delta[("q0", b)] = (f"scan_{step(start, b)}", marked[b], "R")
    delta[("q0", BLANK)] = (f"fin_{start}", BLANK, "R")
    for s in dfa_states:
        for b in BITS:
            delta[(f"scan_{s}", b)] = (f"scan_{step(s, b)}", b, "R")
            delta[(f"back_{s}", b)] = (f"back_{s}", b, "L")
            delta[(f"back_{s}", marked[b])] = (f"fin_{s}", BLANK, "R")
        delta[(f"scan_{s}", BLANK)] = (f"back_{s}", BLANK, "L")
        for a in tape:
            delta[(f"fin_{s}", a)] = ("acc" if s in accepting else "rej", a, "L")
    return TMSpec(states, BITS, tape, "q0", "acc", "rej", _fill(delta, states, tape, {"acc", "rej"}))


def ends_in_one() -> TMSpec:
    return dfa_machine(["e0", "e1"], "e0", lambda s, b: "e" + b, ["e1"])


def even_ones() -> TMSpec:
    flip = {("p0", "0"): "p0", ("p0", "1"): "p1", ("p1", "0"): "p1", ("p1", "1"): "p0"}
    return dfa_machine(["p0", "p1"], "p0", lambda s, b: flip[(s, b)], ["p0"])


def halts_mid_tape() -> TMSpec:
    """Violates the convention: accepts one cell to the right of cell 1."""
    states, tape = ["q0", "acc", "rej"], [BLANK] + BITS
    delta = {("q0", a): ("acc", a, "R") for a in tape}
    return TMSpec(states, BITS, tape, "q0", "acc", "rej", delta)


def leaves_symbol() -> TMSpec:
    """Violates the convention: halts on cell 1 without blanking it."""
    states, tape = ["q0", "q1", "acc", "rej"], [BLANK] + BITS
    delta = {("q0", a): ("q1", a, "R") for a in tape}
    delta.update({("q1", a): ("acc", a, "L") for a in tape})
    return TMSpec(states, BITS, tape, "q0", "acc", "rej", delta)


SAMPLE_TMS = {"first_is_one": first_is_one, "ends_in_one": ends_in_one, "even_ones": even_ones}


def _ntm(states, delta, space, accept="acc", reject="rej") -> NTMSpec:
    return NTMSpec(states, BITS, [BLANK] + BITS, "q0", accept, reject, delta, space)


def ntm_ends_in_one(space: int = 2) -> NTMSpec:
    """Deterministic: walks the input to its end marker, logging 1s on the work tape."""
    reads = BITS + [BLANK]
    delta = {}
    for aw in [BLANK] + BITS:
        for b in BITS:
            delta[("q0", b, aw)] = [("q0", "1", "R", "R")]
        delta[("q0", BLANK, aw)] = [("look", aw, "L", "S")]
        for a in reads:
            delta[("look", a, aw)] = [("acc" if a == "1" else "rej", aw, "S", "S")]
    return _ntm(["q0", "look", "acc", "rej"], delta, space)


def ntm_contains_one(space: int = 2) -> NTMSpec:
    """Guesses a position holding 1, stamping the work tape while it walks."""
    delta = {}
    for aw in [BLANK] + BITS:
        for a in BITS:
            delta[("q0", a, aw)] = [("q0", a, "R", "R"), ("check", aw, "S", "S")]
        delta[("q0", BLANK, aw)] = [("rej", aw, "S", "S")]
        for a in BITS + [BLANK]:
            delta[("check", a, aw)] = [("acc" if a == "1" else "rej", aw, "S", "L")]
    return _ntm(["q0", "check", "acc", "rej"], delta, space)


def ntm_guess_bit(space: int = 2) -> NTMSpec:
    """Guesses a bit onto the work tape, walks right and back, then checks it
    against x_1 and x_2.  Accepts iff the first two input symbols are equal."""
    delta = {}
    for a in BITS + [BLANK]:
        for aw in [BLANK] + BITS:
            delta[("q0", a, aw)] = [("out", "0", "S", "R"), ("out", "1", "S", "R")]
            delta[("out", a, aw)] = [("ret", aw, "S", "L")]
            delta[("ret", a, aw)] = [("cmp2", aw, "R", "S") if aw == a else ("rej", aw, "S", "S")]
            delta[("cmp2", a, aw)] = [("acc" if aw == a else "rej", aw, "S", "S")]
    return _ntm(["q0", "out", "ret", "cmp2", "acc", "rej"], delta, space)


def ntm_never_accepts(space: int = 2) -> NTMSpec:
    delta = {}
    for a in BITS + [BLANK]:
        for aw in [BLANK] + BITS:
            delta[("q0", a, aw)] = [("q0", "1", "R", "R"), ("rej", aw, "S", "S")]
    return _ntm(["q0", "acc", "rej"], delta, space)


SAMPLE_NTMS = {"ends_in_one": ntm_ends_in_one, "contains_one": ntm_contains_one,
               "guess_bit": ntm_guess_bit, "never_accepts": ntm_never_accepts}
