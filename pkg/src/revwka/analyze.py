"""Bounded language comparison, configuration-graph audits and state counts."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Union

import numpy as np

from .construct import gen_lk_corrected, gen_lk_verbatim
from .model import LEFT, RIGHT, Nfa, RevWka, validate_nfa
from .simulate import accepts, config_graph, nfa_accepts

Acceptor = Union[Nfa, RevWka, Callable[[tuple], bool]]


def words_upto(alphabet: Iterable[str], max_len: int) -> Iterator[tuple]:
    """All words of length ``<= max_len`` in shortlex order, starting with the empty word."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    letters = sorted(alphabet)
    for n in range(max_len + 1):
        yield from product(letters, repeat=n)


def as_predicate(acceptor: Acceptor) -> Callable[[tuple], bool]:
    if isinstance(acceptor, Nfa):
        return lambda w: nfa_accepts(acceptor, w)
    if isinstance(acceptor, RevWka):
        return lambda w: accepts(acceptor, w).accepted
    if callable(acceptor):
        return lambda w: bool(acceptor(w))
    raise TypeError(f"not an acceptor: {acceptor!r}")


class AcceptorError(RuntimeError):
    """An acceptor failed on a particular word."""

    def __init__(self, word: tuple, cause: Exception):
        self.word = word
        self.cause = cause
        super().__init__(f"on word {''.join(word) or 'λ'!r}: {cause}")


@dataclass(frozen=True)
class EquivReport:
    max_len: int
    words_checked: int
    counterexample: tuple | None = None  # (word, accepted by A, accepted by B)

    @property
    def equal(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.equal

    def render(self) -> str:
        if self.equal:
            return f"equal on all {self.words_checked} words of length <= {self.max_len}"
        word, a, b = self.counterexample
        shown = " ".join(word) if any(len(x) > 1 for x in word) else "".join(word)
        return (f"counterexample {shown or 'λ'!r} (length {len(word)}): "
                f"A {'accepts' if a else 'rejects'}, B {'accepts' if b else 'rejects'}"
                f" [{self.words_checked} words checked]")


def bounded_equiv(a: Acceptor, b: Acceptor, alphabet: Iterable[str], max_len: int) -> EquivReport:
    """Compare two acceptors on every word up to ``max_len``.

    Stops at the shortlex-least disagreement.
    """
    accept_a, accept_b = as_predicate(a), as_predicate(b)
    checked = 0
    for word in words_upto(alphabet, max_len):
        try:
            ra, rb = accept_a(word), accept_b(word)
        except Exception as exc:
            raise AcceptorError(word, exc) from exc
        checked += 1
        if ra != rb:
            return EquivReport(max_len, checked, (word, ra, rb))
    return EquivReport(max_len, checked)


def _strand_columns(wka: RevWka, alphabet: Iterable[str]) -> list[tuple]:
    # Symbols a head never reads in any entry are interchangeable for the
    # configuration graph; keep one (upper, lower) column per read class.
    upper_read = {e.upper for e in wka.entries()}
    lower_read = {e.lower for e in wka.entries()}
    columns = {}
    for x in sorted(alphabet):
        for y in sorted(wka.complements(x)):
            cls = (x if x in upper_read else None, y if y in lower_read else None)
            columns.setdefault(cls, (x, y))
    return list(columns.values())


def indegree_audit_reference(wka: RevWka, max_len: int, alphabet: Iterable[str] | None = None) -> int:
    """:func:`indegree_audit` computed graph by graph through :func:`config_graph`."""
    columns = _strand_columns(wka, wka.alphabet if alphabet is None else alphabet)
    worst = 0
    for n in range(max_len + 1):
        for strand in product(columns, repeat=n):
            w1 = tuple(c[0] for c in strand)
            w2 = tuple(c[1] for c in strand)
            worst = max(worst, config_graph(wka, w1, w2, "all").max_in_degree())
    return worst


def indegree_audit(wka: RevWka, max_len: int, alphabet: Iterable[str] | None = None,
                   batch: int = 4096) -> int:
    """Largest in-degree over full configuration graphs of all strand pairs.

    Upper strands range over ``alphabet`` (default: the machine's alphabet)
    with length ``<= max_len``; lower strands over all their complements.
    Graphs are built for many strand pairs at once with array lookups into
    the transition table.
    """
    columns = _strand_columns(wka, wka.alphabet if alphabet is None else alphabet)
    symbols = [LEFT, RIGHT] + sorted({s for c in columns for s in c})
    sym_index = {s: i for i, s in enumerate(symbols)}
    state_index = {q: i for i, q in enumerate(wka.states)}
    n_states, n_syms = len(wka.states), len(symbols)

    target = np.full((n_states, n_syms, n_syms), -1, dtype=np.int64)
    d1 = np.zeros_like(target)
    d2 = np.zeros_like(target)
    for (q, up, low), (r, m1, m2) in wka.delta.items():
        if up in sym_index and low in sym_index:
            key = (state_index[q], sym_index[up], sym_index[low])
            target[key], d1[key], d2[key] = state_index[r], m1, m2

    col_upper = np.array([sym_index[c[0]] for c in columns], dtype=np.int64)
    col_lower = np.array([sym_index[c[1]] for c in columns], dtype=np.int64)
    worst = 0
    for n in range(max_len + 1):
        width = n + 2
        n_nodes = n_states * width * width
        combos = list(product(range(len(columns)), repeat=n))
        strands = np.array(combos, dtype=np.int64).reshape(len(combos), n)
        for lo in range(0, len(strands), batch):
            chunk = strands[lo:lo + batch]
            rows = np.arange(len(chunk))
            pad_l = np.full((len(chunk), 1), sym_index[LEFT])
            pad_r = np.full((len(chunk), 1), sym_index[RIGHT])
            upper = np.hstack([pad_l, col_upper[chunk], pad_r])
            lower = np.hstack([pad_l, col_lower[chunk], pad_r])
            counts = np.zeros((len(chunk), n_nodes), dtype=np.int32)
            for q in range(n_states):
                for p1 in range(width):
                    for p2 in range(width):
                        t = target[q, upper[:, p1], lower[:, p2]]
                        hit = t >= 0
                        if not hit.any():
                            continue
                        key = (q, upper[hit, p1], lower[hit, p2])
                        node = (t[hit] * width + p1 + d1[key]) * width + p2 + d2[key]
                        counts[rows[hit], node] += 1
            worst = max(worst, int(counts.max(initial=0)))
    return worst


@dataclass(frozen=True)
class ComplexityRow:
    k: int
    corrected_states: int
    verbatim_states: int
    nfa_reference: int  # 2^(k+1), quoted lower bound, not verified here


def complexity_table(k_max: int) -> list[ComplexityRow]:
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    return [
        ComplexityRow(k, len(gen_lk_corrected(k).states), len(gen_lk_verbatim(k).states), 2 ** (k + 1))
        for k in range(1, k_max + 1)
    ]


TABLE_FOOTNOTE = ("nfa_reference is the quoted NFA lower bound 2^(k+1) for L_k; "
                  "it is reported, not verified.")


def format_table(rows: list[ComplexityRow]) -> str:
    header = ("k", "corrected", "verbatim", "nfa_reference")
    body = [(r.k, r.corrected_states, r.verbatim_states, r.nfa_reference) for r in rows]
    widths = [max(len(str(v)) for v in col) for col in zip(header, *body)]
    lines = ["  ".join(str(v).rjust(w) for v, w in zip(line, widths)) for line in (header, *body)]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines + ["", "* " + TABLE_FOOTNOTE])


def table_csv(rows: list[ComplexityRow]) -> str:
    lines = ["k,corrected_states,verbatim_states,nfa_reference"]
    lines += [f"{r.k},{r.corrected_states},{r.verbatim_states},{r.nfa_reference}" for r in rows]
    return "\n".join(lines) + "\n"


def random_nfa(rng: random.Random, max_states: int = 4, alphabet=("a", "b"),
               max_transitions: int = 10) -> Nfa:
    n = rng.randint(1, max_states)
    states = [f"p{i}" for i in range(n)]
    candidates = [(s, x, t) for s in states for x in alphabet for t in states]
    m = rng.randint(0, min(max_transitions, len(candidates)))
    return validate_nfa({
        "states": states,
        "alphabet": list(alphabet),
        "start": rng.choice(states),
        "finals": [q for q in states if rng.random() < 0.45],
        "transitions": rng.sample(candidates, m),
    })


def random_nfa_corpus(count: int = 50, seed: int = 2024, **kwargs) -> list[Nfa]:
    rng = random.Random(seed)
    return [random_nfa(rng, **kwargs) for _ in range(count)]
