"""Operational semantics of Rev-WKAs, plus the reference NFA acceptor.

The lower strand is never materialised by :func:`accepts`.  Heads only move
right and only the lower head reads the lower strand, so the complement at a
position can be chosen when the lower head first arrives there and then held
fixed while the head stays put.  A configuration therefore records the state,
both head positions and the committed lower symbol under the lower head.

:func:`accepts_exhaustive` is the brute-force reference: it runs the machine
deterministically on every complement strand.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple

from .model import (LEFT, RIGHT, ComplementarityRelation, Nfa, RevWka, TapeSymbol,
                    UnknownSymbolError, tape_token)

DEFAULT_CAP = 1_000_000

ACCEPT_HALT = "accept-halt"
REJECT_HALT = "reject-halt"
REJECT_LOOP = "reject-loop"


class StrandError(ValueError):
    """The lower strand is not a complement string of the upper strand."""


class CapExceeded(RuntimeError):
    pass


class SimConfig(NamedTuple):
    state: str
    p1: int
    p2: int
    c2: TapeSymbol  # symbol under the lower head

    def __str__(self) -> str:
        return f"({self.state}, {self.p1}, {self.p2}, {tape_token(self.c2)})"


def upper_read(w1: tuple, p1: int) -> TapeSymbol:
    if p1 == 0:
        return LEFT
    if p1 == len(w1) + 1:
        return RIGHT
    return w1[p1 - 1]


def _check_word(wka_alphabet: frozenset, w1: tuple) -> None:
    for x in w1:
        if x not in wka_alphabet:
            raise UnknownSymbolError(f"symbol {x!r} is not in the alphabet")


def initial_config(wka: RevWka) -> SimConfig:
    return SimConfig(wka.start, 0, 0, LEFT)


def lazy_successors(wka: RevWka, w1: Iterable[str], cfg: SimConfig) -> tuple:
    """All one-step successors of ``cfg``; empty when the machine halts.

    When the lower head advances onto a strand position, one successor is
    produced per complement of the upper symbol there (in token order).
    """
    w1 = tuple(w1)
    step = wka.delta.get((cfg.state, upper_read(w1, cfg.p1), cfg.c2))
    if step is None:
        return ()
    target, d1, d2 = step
    p1, p2 = cfg.p1 + d1, cfg.p2 + d2
    if d2 == 0:
        return (SimConfig(target, p1, p2, cfg.c2),)
    if p2 == len(w1) + 1:
        return (SimConfig(target, p1, p2, RIGHT),)
    return tuple(SimConfig(target, p1, p2, y) for y in sorted(wka.complements(w1[p2 - 1])))


@dataclass(frozen=True)
class RunOutcome:
    """Result of :func:`accepts`.

    For an accepted word ``halt`` is the accepting halting configuration,
    ``path`` the configurations leading to it and ``w2`` one complement
    strand realising the run.  ``consumed`` is False when the machine
    accepted without both heads reaching ``$``.
    """

    accepted: bool
    halt: SimConfig | None = None
    path: tuple = ()
    w2: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted

    @property
    def consumed(self) -> bool:
        if self.halt is None:
            return False
        n = len(self.w2 or ())
        return self.halt.p1 == n + 1 and self.halt.p2 == n + 1


def accepts(wka: RevWka, w1: Iterable[str]) -> RunOutcome:
    """Decide acceptance by breadth-first search over lazy configurations."""
    w1 = tuple(w1)
    _check_word(wka.alphabet, w1)
    start = initial_config(wka)
    parent: dict[SimConfig, SimConfig | None] = {start: None}
    frontier = deque([start])
    while frontier:
        cfg = frontier.popleft()
        succ = lazy_successors(wka, w1, cfg)
        if not succ:
            if cfg.state in wka.finals:
                path = _unwind(parent, cfg)
                return RunOutcome(True, cfg, path, _witness(wka, w1, path))
            continue
        for nxt in succ:
            if nxt not in parent:
                parent[nxt] = cfg
                frontier.append(nxt)
    return RunOutcome(False, reason="no accepting halting configuration is reachable")


def _unwind(parent: dict, cfg: SimConfig) -> tuple:
    path = []
    node = cfg
    while node is not None:
        path.append(node)
        node = parent[node]
    return tuple(reversed(path))


def _witness(wka: RevWka, w1: tuple, path: tuple) -> tuple:
    # Positions the lower head never reached take their least complement.
    w2 = [min(wka.complements(x)) for x in w1]
    for cfg in path:
        if 1 <= cfg.p2 <= len(w1):
            w2[cfg.p2 - 1] = cfg.c2
    return tuple(w2)


def check_strand(rho: ComplementarityRelation, w1: tuple, w2: tuple) -> None:
    if len(w1) != len(w2):
        raise StrandError(f"strand lengths differ: |w1|={len(w1)}, |w2|={len(w2)}")
    for i, (x, y) in enumerate(zip(w1, w2), 1):
        if y not in rho.complements(x):
            raise StrandError(f"position {i}: {y!r} is not a complement of {x!r}")


def complement_count(rho: ComplementarityRelation, w1: Iterable[str]) -> int:
    return math.prod(len(rho.complements(x)) for x in w1)


def enumerate_complements(rho: ComplementarityRelation, w1: Iterable[str],
                          cap: int = DEFAULT_CAP) -> list:
    """Every lower strand of ``w1``, in lexicographic order of tokens."""
    w1 = tuple(w1)
    count = complement_count(rho, w1)
    if count > cap:
        raise CapExceeded(f"{count} complement strands exceed the cap of {cap}")
    return [tuple(w2) for w2 in product(*(sorted(rho.complements(x)) for x in w1))]


@dataclass(frozen=True)
class FixedRunOutcome:
    result: str  # ACCEPT_HALT, REJECT_HALT or REJECT_LOOP
    trace: tuple  # SimConfig per step, c2 being the lower read

    @property
    def accepted(self) -> bool:
        return self.result == ACCEPT_HALT

    @property
    def lower_reach(self) -> int:
        """Furthest lower-strand position the run looked at."""
        return max(cfg.p2 for cfg in self.trace)


def run_fixed(wka: RevWka, w1: Iterable[str], w2: Iterable[str]) -> FixedRunOutcome:
    """Run deterministically with both strands given."""
    w1, w2 = tuple(w1), tuple(w2)
    _check_word(wka.alphabet, w1)
    check_strand(wka.rho, w1, w2)
    lower = (LEFT,) + w2 + (RIGHT,)
    state, p1, p2 = wka.start, 0, 0
    seen = set()
    trace = []
    while True:
        trace.append(SimConfig(state, p1, p2, lower[p2]))
        seen.add((state, p1, p2))
        step = wka.delta.get((state, upper_read(w1, p1), lower[p2]))
        if step is None:
            result = ACCEPT_HALT if state in wka.finals else REJECT_HALT
            return FixedRunOutcome(result, tuple(trace))
        state, d1, d2 = step
        p1, p2 = p1 + d1, p2 + d2
        if (state, p1, p2) in seen:
            trace.append(SimConfig(state, p1, p2, lower[p2]))
            return FixedRunOutcome(REJECT_LOOP, tuple(trace))


def accepts_exhaustive(wka: RevWka, w1: Iterable[str], cap: int = DEFAULT_CAP) -> bool:
    """Reference acceptance: some complement strand gives an accepting fixed run.

    Strands are visited in lexicographic order.  A run that never looked past
    lower position ``r`` behaves identically on every strand sharing the first
    ``r`` symbols, so those strands are skipped without changing the answer.
    """
    w1 = tuple(w1)
    _check_word(wka.alphabet, w1)
    count = complement_count(wka.rho, w1)
    if count > cap:
        raise CapExceeded(f"{count} complement strands exceed the cap of {cap}")
    choices = [sorted(wka.complements(x)) for x in w1]
    idx = [0] * len(w1)
    while True:
        w2 = tuple(c[i] for c, i in zip(choices, idx))
        outcome = run_fixed(wka, w1, w2)
        if outcome.accepted:
            return True
        pos = min(outcome.lower_reach, len(w1)) - 1
        while pos >= 0:
            idx[pos] += 1
            if idx[pos] < len(choices[pos]):
                idx[pos + 1:] = [0] * (len(idx) - pos - 1)
                break
            idx[pos] = 0
            pos -= 1
        if pos < 0:
            return False


def nfa_accepts(nfa: Nfa, w: Iterable[str]) -> bool:
    """Subset simulation."""
    step: dict[tuple, set] = {}
    for s, x, t in nfa.transitions:
        step.setdefault((s, x), set()).add(t)
    current = {nfa.start}
    for x in w:
        if x not in nfa.alphabet:
            raise UnknownSymbolError(f"symbol {x!r} is not in the alphabet")
        current = set().union(*(step.get((q, x), ()) for q in current))
        if not current:
            return False
    return bool(current & nfa.finals)


@dataclass(frozen=True)
class ConfigGraph:
    """Configurations ``(state, p1, p2)`` over fixed strands and their step edges.

    The step relation is deterministic, so ``edges`` maps each node with a
    successor to that successor.
    """

    nodes: frozenset
    edges: dict

    def in_degrees(self) -> Counter:
        return Counter(self.edges.values())

    def max_in_degree(self) -> int:
        return max(self.in_degrees().values(), default=0)


def config_graph(wka: RevWka, w1: Iterable[str], w2: Iterable[str],
                 scope: str = "all") -> ConfigGraph:
    """Configuration graph for the strands ``(w1, w2)``.

    ``scope="all"`` covers every ``(state, p1, p2)`` over the strands;
    ``scope="reachable"`` only those reachable from the initial configuration.
    """
    w1, w2 = tuple(w1), tuple(w2)
    _check_word(wka.alphabet, w1)
    check_strand(wka.rho, w1, w2)
    upper = (LEFT,) + w1 + (RIGHT,)
    lower = (LEFT,) + w2 + (RIGHT,)
    delta = wka.delta

    def successor(node):
        q, p1, p2 = node
        step = delta.get((q, upper[p1], lower[p2]))
        if step is None:
            return None
        return (step[0], p1 + step[1], p2 + step[2])

    edges = {}
    if scope == "all":
        positions = range(len(upper))
        nodes = frozenset((q, p1, p2) for q in wka.states for p1 in positions for p2 in positions)
        for node in nodes:
            nxt = successor(node)
            if nxt is not None:
                edges[node] = nxt
    elif scope == "reachable":
        node = (wka.start, 0, 0)
        seen = {node}
        while True:
            nxt = successor(node)
            if nxt is None:
                break
            edges[node] = nxt
            if nxt in seen:
                break
            seen.add(nxt)
            node = nxt
        nodes = frozenset(seen)
    else:
        raise ValueError(f"unknown scope {scope!r}")
    return ConfigGraph(nodes, edges)
