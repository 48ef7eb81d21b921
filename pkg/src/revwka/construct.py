"""Constructions: NFA to Rev-WKA compilation and the L_k machine family.

``L_k`` is the set of words ``x^n`` with ``n >= 1`` and ``x`` a word of
length ``k`` over ``{a, b}``.

Two generators are provided for ``L_k``.  :func:`gen_lk_verbatim` transcribes
the published transition table as is, including its defects (it rejects
members such as ``abab`` for ``k = 2``).  :func:`gen_lk_corrected` follows
the same shift-then-compare idea and is bounded-equivalent to
:func:`lk_member`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import LEFT, RIGHT, Nfa, RevWka, UnknownSymbolError, make_wka

LK_LETTERS = ("a", "b")


def fresh(name: str, taken: set) -> str:
    """``name`` with primes appended until it is not in ``taken``; records it."""
    while name in taken:
        name += "'"
    taken.add(name)
    return name


@dataclass(frozen=True)
class TransitionNumbering:
    transitions: tuple  # (source, symbol, target); index i is symbol t_{i+1}
    symbols: tuple  # the fresh lower-strand token for each transition

    def __len__(self) -> int:
        return len(self.transitions)

    def symbol_for(self, transition: tuple) -> str:
        return self.symbols[self.transitions.index(transition)]


def transition_order(nfa: Nfa) -> TransitionNumbering:
    """Number the NFA's transitions by (source position, symbol, target position)."""
    pos = {q: i for i, q in enumerate(nfa.states)}
    ordered = tuple(sorted(nfa.transitions, key=lambda t: (pos[t[0]], t[1], pos[t[2]])))
    taken = set(nfa.alphabet)
    symbols = tuple(fresh(f"t{i}", taken) for i in range(1, len(ordered) + 1))
    return TransitionNumbering(ordered, symbols)


def _compile_nfa(nfa: Nfa, per_final_sinks: bool) -> RevWka:
    numbering = transition_order(nfa)
    taken_states = set(nfa.states)
    start = fresh("q0'", taken_states)
    nfa_finals = [q for q in nfa.states if q in nfa.finals]
    if per_final_sinks:
        sink_of = {q: fresh(f"qf_{q}", taken_states) for q in nfa_finals}
        sinks = list(sink_of.values())
    else:
        sinks = [fresh("qf", taken_states)]
        sink_of = {q: sinks[0] for q in nfa_finals}

    alphabet = sorted(nfa.alphabet) + list(numbering.symbols)
    pairs = [(x, t) for x in sorted(nfa.alphabet) for t in numbering.symbols]
    pairs += [(t, x) for x, t in pairs]
    if not numbering.symbols:
        # No transitions: nothing to relate input symbols to, keep rho total.
        pairs = [(x, x) for x in sorted(nfa.alphabet)]

    entries = [(start, LEFT, LEFT, nfa.start, 1, 1)]
    for (q, x, r), t in zip(numbering.transitions, numbering.symbols):
        entries.append((q, x, t, r, 1, 1))
    for q, sink in sink_of.items():
        entries.append((q, RIGHT, RIGHT, sink, 0, 0))

    states = [start] + list(nfa.states) + sinks
    return make_wka(states, alphabet, pairs, start, set(sinks), entries)


def nfa_to_wka_verbatim(nfa: Nfa) -> RevWka:
    """The published construction: ``n + 2`` states, one shared accepting sink.

    With more than one NFA final state the shared sink breaks backward
    determinism; that is reported by the checks, not repaired here.
    """
    return _compile_nfa(nfa, per_final_sinks=False)


def nfa_to_wka_repaired(nfa: Nfa) -> RevWka:
    """Like :func:`nfa_to_wka_verbatim` but with a private sink per final state."""
    return _compile_nfa(nfa, per_final_sinks=True)


def gen_lk_verbatim(k: int) -> RevWka:
    """The published ``L_k`` table, transcribed without corrections."""
    _check_k(k)
    q = [f"q{i}" for i in range(2 * k + 3)]
    decorated = {"a": "a1", "b": "b1"}
    pairs = [("a", "a"), ("a", "a1"), ("a1", "a"), ("b", "b"), ("b", "b1"), ("b1", "b")]
    entries = [(q[0], LEFT, LEFT, q[0], 1, 1)]
    for m in range(k):
        entries += [(q[m], x, x, q[m + 1], 0, 1) for x in LK_LETTERS]
    entries += [(q[k], x, decorated[x], q[k + 1], 1, 1) for x in LK_LETTERS]
    for m in range(k + 1, 2 * k + 1):
        entries += [(q[m], x, x, q[m + 1], 1, 1) for x in LK_LETTERS]
    entries += [(q[2 * k + 1], x, x, q[k + 1], 1, 1) for x in LK_LETTERS]
    entries += [(q[2 * k + 1], x, RIGHT, q[2 * k + 2], 1, 0) for x in LK_LETTERS]
    return make_wka(q, ["a", "b", "a1", "b1"], pairs, q[0], {q[2 * k + 2]}, entries)


def gen_lk_corrected(k: int) -> RevWka:
    """A reversible machine for ``L_k`` with ``2k + 3`` states.

    The lower head first runs ``k`` cells ahead (states ``s0..sk``), then the
    cycle ``m1..mk`` compares each upper symbol with the lower symbol ``k``
    cells further on.  Lower decorations keep the entries into ``m1``
    apart: ``x'`` marks the first comparison, ``x''`` each cycle restart.
    """
    _check_k(k)
    once = {x: x + "'" for x in LK_LETTERS}
    twice = {x: x + "''" for x in LK_LETTERS}
    lower = [*LK_LETTERS, *once.values(), *twice.values()]
    pairs = []
    for x in LK_LETTERS:
        for y in (x, once[x], twice[x]):
            pairs += [(x, y), (y, x)]

    s = [f"s{j}" for j in range(k + 1)]
    m = [None] + [f"m{j}" for j in range(1, k + 1)]
    entries = [(s[0], LEFT, LEFT, s[0], 1, 1)]
    for j in range(k):
        entries += [(s[j], x, y, s[j + 1], 0, 1) for x in LK_LETTERS for y in lower]
    entries += [(s[k], x, once[x], m[1], 1, 1) for x in LK_LETTERS]
    for j in range(1, k):
        entries += [(m[j], x, x, m[j + 1], 1, 1) for x in LK_LETTERS]
    entries += [(m[k], x, twice[x], m[1], 1, 1) for x in LK_LETTERS]
    entries += [(s[k], x, RIGHT, "f'", 0, 0) for x in LK_LETTERS]
    entries += [(m[k], x, RIGHT, "f", 0, 0) for x in LK_LETTERS]
    states = s + m[1:] + ["f", "f'"]
    return make_wka(states, lower, set(pairs), s[0], {"f", "f'"}, entries)


def gen_lk(k: int, mode: str = "corrected") -> RevWka:
    if mode == "verbatim":
        return gen_lk_verbatim(k)
    if mode == "corrected":
        return gen_lk_corrected(k)
    raise ValueError(f"unknown mode {mode!r}")


def lk_member(k: int, w: Iterable[str]) -> bool:
    """Membership in ``L_k``."""
    _check_k(k)
    w = tuple(w)
    for x in w:
        if x not in LK_LETTERS:
            raise UnknownSymbolError(f"symbol {x!r} is not in {{a, b}}")
    if not w or len(w) % k:
        return False
    return all(w[i] == w[i + k] for i in range(len(w) - k))


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k must be a positive integer, got {k!r}")
