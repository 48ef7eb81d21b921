"""Alphabets, complementarity relations, NFAs and reversible Watson-Crick automata.

Machines are built from *raw descriptions*: plain mappings shaped like the
JSON interchange documents (see :mod:`revwka.documents`).  Validation
collects every problem it can find instead of stopping at the first one, so
a broken machine can be fixed in a single pass.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Union


class Marker(enum.Enum):
    """End markers of both strands.  They never belong to an alphabet."""

    LEFT = "#"
    RIGHT = "$"

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return f"Marker.{self.name}"


LEFT = Marker.LEFT
RIGHT = Marker.RIGHT

# An input symbol is a plain token string; markers are separate values.
TapeSymbol = Union[str, Marker]
Word = tuple  # tuple[str, ...]

MARKER_TOKENS = {m.value: m for m in Marker}


def as_word(w: Iterable[str]) -> tuple[str, ...]:
    """Normalise a word.  A plain string is read one character per symbol."""
    return tuple(w)


def tape_token(sym: TapeSymbol) -> str:
    return sym.value if isinstance(sym, Marker) else sym


def parse_tape_token(token: str) -> TapeSymbol:
    return MARKER_TOKENS.get(token, token)


def tape_sort_key(sym: TapeSymbol) -> tuple[int, str]:
    # '#' sorts before every symbol, '$' after.
    if sym is LEFT:
        return (0, "")
    if sym is RIGHT:
        return (2, "")
    return (1, sym)


@dataclass(frozen=True)
class Problem:
    """One well-formedness violation: a stable code plus the offending element."""

    code: str
    element: Any
    message: str = ""

    def __str__(self) -> str:
        text = f"{self.code}: {self.element!r}"
        return f"{text} ({self.message})" if self.message else text


class MachineError(ValueError):
    """Raised when a raw description does not describe a well-formed machine."""

    def __init__(self, problems: list[Problem]):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems) or "invalid machine")

    @property
    def codes(self) -> list[str]:
        return [p.code for p in self.problems]


class UnknownSymbolError(ValueError):
    pass


@dataclass(frozen=True)
class ComplementarityRelation:
    alphabet: frozenset
    pairs: frozenset

    def complements(self, x: str) -> frozenset:
        if x not in self.alphabet:
            raise UnknownSymbolError(f"symbol {x!r} is not in the alphabet")
        return self._image()[x]

    def _image(self) -> dict:
        # Cached lazily; the dataclass is frozen so bypass __setattr__.
        try:
            return self.__dict__["_image_cache"]
        except KeyError:
            image: dict[str, set] = {x: set() for x in self.alphabet}
            for x, y in self.pairs:
                image[x].add(y)
            cache = {x: frozenset(ys) for x, ys in image.items()}
            object.__setattr__(self, "_image_cache", cache)
            return cache

    def is_identity(self) -> bool:
        return all(self.complements(x) == {x} for x in self.alphabet)

    @classmethod
    def identity(cls, alphabet: Iterable[str]) -> "ComplementarityRelation":
        alphabet = frozenset(alphabet)
        return cls(alphabet, frozenset((x, x) for x in alphabet))


def complements(rho: ComplementarityRelation, x: str) -> frozenset:
    """The set of symbols ``y`` with ``(x, y)`` in ``rho``."""
    return rho.complements(x)


@dataclass(frozen=True)
class Entry:
    """A single transition ``(source, (upper, lower)) -> (target, (d1, d2))``."""

    source: str
    upper: TapeSymbol
    lower: TapeSymbol
    target: str
    d1: int
    d2: int

    @property
    def key(self) -> tuple:
        return (self.source, self.upper, self.lower)

    @property
    def moves(self) -> tuple[int, int]:
        return (self.d1, self.d2)

    def __str__(self) -> str:
        return (f"({self.source},({tape_token(self.upper)},{tape_token(self.lower)}))"
                f" -> ({self.target},({self.d1},{self.d2}))")


@dataclass(frozen=True, eq=False)
class RevWka:
    """A one-way reversible Watson-Crick automaton.

    ``delta`` maps ``(state, upper, lower)`` to ``(target, d1, d2)``; its
    insertion order is the declaration order of the entries.  Instances are
    only produced by :func:`validate_wka` and should be treated as read-only.
    """

    states: tuple
    alphabet: frozenset
    rho: ComplementarityRelation
    start: str
    finals: frozenset
    delta: Mapping = field(repr=False)

    def entries(self) -> list[Entry]:
        return [Entry(q, a1, a2, t, d1, d2) for (q, a1, a2), (t, d1, d2) in self.delta.items()]

    def complements(self, x: str) -> frozenset:
        return self.rho.complements(x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RevWka):
            return NotImplemented
        return (self.states == other.states and self.alphabet == other.alphabet
                and self.rho.pairs == other.rho.pairs and self.start == other.start
                and self.finals == other.finals and dict(self.delta) == dict(other.delta))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Nfa:
    """An epsilon-free nondeterministic finite automaton."""

    states: tuple
    alphabet: frozenset
    start: str
    finals: frozenset
    transitions: frozenset  # of (source, symbol, target)

    def successors(self, state: str, symbol: str) -> set:
        return {t for (s, x, t) in self.transitions if s == state and x == symbol}


def _symbol_problems(alphabet: Any) -> tuple[list[Problem], list[str]]:
    problems: list[Problem] = []
    if not isinstance(alphabet, (list, tuple, set, frozenset)):
        return [Problem("malformed", "alphabet", "expected an array of symbols")], []
    seen: list[str] = []
    for sym in alphabet:
        if not isinstance(sym, str) or not sym:
            problems.append(Problem("bad-symbol", sym, "symbols are non-empty strings"))
        elif sym in MARKER_TOKENS:
            problems.append(Problem("marker-in-alphabet", sym))
        elif any(ch.isspace() for ch in sym):
            problems.append(Problem("bad-symbol", sym, "symbols contain no whitespace"))
        elif sym in seen:
            problems.append(Problem("duplicate-symbol", sym))
        else:
            seen.append(sym)
    return problems, seen


def _state_problems(raw: Mapping) -> tuple[list[Problem], list[str]]:
    problems: list[Problem] = []
    states = raw.get("states")
    if not isinstance(states, (list, tuple)):
        return [Problem("malformed", "states", "expected an array of state names")], []
    seen: list[str] = []
    for q in states:
        if not isinstance(q, str) or not q:
            problems.append(Problem("bad-state", q, "state names are non-empty strings"))
        elif q in seen:
            problems.append(Problem("duplicate-state", q))
        else:
            seen.append(q)
    start = raw.get("start")
    if start not in seen:
        problems.append(Problem("undeclared-state", start, "start"))
    finals = raw.get("finals", [])
    if not isinstance(finals, (list, tuple, set, frozenset)):
        problems.append(Problem("malformed", "finals", "expected an array of state names"))
    else:
        for q in finals:
            if q not in seen:
                problems.append(Problem("undeclared-state", q, "final"))
    return problems, seen


def _missing_fields(raw: Any, required: Iterable[str]) -> list[Problem]:
    if not isinstance(raw, Mapping):
        return [Problem("malformed", type(raw).__name__, "expected an object")]
    return [Problem("malformed", name, "missing field") for name in required if name not in raw]


def wka_problems(raw: Mapping) -> list[Problem]:
    """Every well-formedness violation of a raw Rev-WKA description."""
    try:
        validate_wka(raw)
    except MachineError as exc:
        return exc.problems
    return []


def validate_wka(raw: Mapping) -> RevWka:
    """Build a :class:`RevWka` from ``raw`` or raise :class:`MachineError`.

    ``raw`` has the fields ``states``, ``alphabet``, ``start``, ``finals``,
    ``complement`` (pairs) and ``delta`` (objects with ``from``, ``upper``,
    ``lower``, ``to``, ``d1``, ``d2``; markers written as ``"#"``/``"$"``).
    """
    problems = _missing_fields(raw, ("states", "alphabet", "start", "complement", "delta"))
    if problems:
        raise MachineError(problems)

    state_problems, states = _state_problems(raw)
    symbol_problems, alphabet = _symbol_problems(raw["alphabet"])
    problems += state_problems + symbol_problems
    declared_states = set(states)
    declared_symbols = set(alphabet)

    pairs: set[tuple[str, str]] = set()
    complement = raw["complement"]
    if not isinstance(complement, (list, tuple, set, frozenset)):
        problems.append(Problem("malformed", "complement", "expected an array of pairs"))
        complement = []
    for pair in complement:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            problems.append(Problem("malformed", pair, "complement pairs have two elements"))
            continue
        x, y = pair
        bad = [s for s in (x, y) if s not in declared_symbols]
        if bad:
            for s in bad:
                code = "marker-in-alphabet" if s in MARKER_TOKENS else "undeclared-symbol"
                problems.append(Problem(code, s, f"in complement pair {[x, y]}"))
            continue
        pairs.add((x, y))
    for x, y in sorted(pairs):
        if (y, x) not in pairs:
            problems.append(Problem("rho-not-symmetric", (x, y)))
    related = {x for x, _ in pairs}
    for x in alphabet:
        if x not in related:
            problems.append(Problem("rho-not-total", x))

    delta: dict[tuple, tuple] = {}
    raw_delta = raw["delta"]
    if not isinstance(raw_delta, (list, tuple)):
        problems.append(Problem("malformed", "delta", "expected an array of entries"))
        raw_delta = []
    for item in raw_delta:
        entry_problems = _missing_fields(item, ("from", "upper", "lower", "to", "d1", "d2"))
        if entry_problems:
            problems += entry_problems
            continue
        src, dst = item["from"], item["to"]
        reads = [parse_tape_token(item["upper"]) if isinstance(item["upper"], str) else item["upper"],
                 parse_tape_token(item["lower"]) if isinstance(item["lower"], str) else item["lower"]]
        moves = [item["d1"], item["d2"]]
        ok = True
        for q in (src, dst):
            if q not in declared_states:
                problems.append(Problem("undeclared-state", q, f"in delta entry {_describe(item)}"))
                ok = False
        for sym in reads:
            if not isinstance(sym, Marker) and sym not in declared_symbols:
                problems.append(Problem("undeclared-symbol", sym, f"in delta entry {_describe(item)}"))
                ok = False
        for d in moves:
            if d not in (0, 1) or isinstance(d, bool):
                problems.append(Problem("bad-move", d, f"in delta entry {_describe(item)}"))
                ok = False
        if not ok:
            continue
        for sym, d in zip(reads, moves):
            if sym is RIGHT and d != 0:
                problems.append(Problem("endmarker-move", _describe(item),
                                        "a head reading $ must not move"))
                ok = False
        key = (src, reads[0], reads[1])
        if key in delta:
            problems.append(Problem("delta-not-function", _describe(item),
                                    "another entry has the same state and reads"))
            ok = False
        if ok:
            delta[key] = (dst, moves[0], moves[1])

    if problems:
        raise MachineError(problems)
    rho = ComplementarityRelation(frozenset(alphabet), frozenset(pairs))
    return RevWka(tuple(states), frozenset(alphabet), rho, raw["start"],
                  frozenset(raw.get("finals", ())), delta)


def _describe(item: Mapping) -> str:
    return (f"({item.get('from')},({item.get('upper')},{item.get('lower')}))"
            f"->({item.get('to')},({item.get('d1')},{item.get('d2')}))")


def validate_nfa(raw: Mapping) -> Nfa:
    """Build an :class:`Nfa` from ``raw`` or raise :class:`MachineError`."""
    problems = _missing_fields(raw, ("states", "alphabet", "start", "transitions"))
    if problems:
        raise MachineError(problems)
    state_problems, states = _state_problems(raw)
    symbol_problems, alphabet = _symbol_problems(raw["alphabet"])
    problems += state_problems + symbol_problems
    transitions: set[tuple[str, str, str]] = set()
    raw_transitions = raw["transitions"]
    if not isinstance(raw_transitions, (list, tuple, set, frozenset)):
        problems.append(Problem("malformed", "transitions", "expected an array"))
        raw_transitions = []
    for item in raw_transitions:
        if isinstance(item, (list, tuple)) and len(item) == 3:
            src, sym, dst = item
        else:
            missing = _missing_fields(item, ("from", "symbol", "to"))
            if missing:
                problems += missing
                continue
            src, sym, dst = item["from"], item["symbol"], item["to"]
        for q in (src, dst):
            if q not in states:
                problems.append(Problem("undeclared-state", q, f"in transition {[src, sym, dst]}"))
        if sym in ("", None):
            problems.append(Problem("epsilon-transition", [src, sym, dst]))
        elif sym not in alphabet:
            problems.append(Problem("undeclared-symbol", sym, f"in transition {[src, sym, dst]}"))
        transitions.add((src, sym, dst))
    if problems:
        raise MachineError(problems)
    return Nfa(tuple(states), frozenset(alphabet), raw["start"],
               frozenset(raw.get("finals", ())), frozenset(transitions))


def wka_to_raw(wka: RevWka) -> dict:
    """Inverse of :func:`validate_wka` (entries in declaration order)."""
    return {
        "states": list(wka.states),
        "alphabet": sorted(wka.alphabet),
        "start": wka.start,
        "finals": [q for q in wka.states if q in wka.finals],
        "complement": [list(p) for p in sorted(wka.rho.pairs)],
        "delta": [
            {"from": e.source, "upper": tape_token(e.upper), "lower": tape_token(e.lower),
             "to": e.target, "d1": e.d1, "d2": e.d2}
            for e in wka.entries()
        ],
    }


def make_wka(states, alphabet, pairs, start, finals, entries) -> RevWka:
    """Convenience constructor used by the generators.

    ``entries`` are ``(source, upper, lower, target, d1, d2)`` tuples where
    the reads may be :class:`Marker` values or symbol tokens.
    """
    raw = {
        "states": list(states),
        "alphabet": list(alphabet),
        "start": start,
        "finals": list(finals),
        "complement": [list(p) for p in pairs],
        "delta": [
            {"from": s, "upper": tape_token(u), "lower": tape_token(l), "to": t, "d1": d1, "d2": d2}
            for (s, u, l, t, d1, d2) in entries
        ],
    }
    return validate_wka(raw)


def is_strongly_reversible(wka: RevWka) -> bool:
    """True iff the machine's complementarity relation is the identity."""
    return wka.rho.is_identity()
