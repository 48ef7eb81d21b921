"""JSON machine documents and Graphviz export.

A document has a top-level ``kind`` of ``"nfa"`` or ``"revwka"``.  Field
order is irrelevant on input; unknown fields are rejected.  Output is
canonical: fixed key order, sorted collections, one delta entry per line, so
equal machines always serialise to identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .model import (MachineError, Nfa, Problem, RevWka, tape_sort_key, tape_token,
                    validate_nfa, validate_wka)

Machine = Union[Nfa, RevWka]

FIELDS = {
    "revwka": ("kind", "states", "alphabet", "start", "finals", "complement", "delta"),
    "nfa": ("kind", "states", "alphabet", "start", "finals", "transitions"),
}
DELTA_FIELDS = ("from", "upper", "lower", "to", "d1", "d2")
TRANSITION_FIELDS = ("from", "symbol", "to")


class DocumentError(MachineError):
    """The text is not a valid machine document."""


def parse_document(text: str) -> Machine:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError([Problem("parse-error", f"line {exc.lineno} column {exc.colno}", exc.msg)])
    if not isinstance(doc, dict):
        raise DocumentError([Problem("malformed", type(doc).__name__, "expected a JSON object")])
    kind = doc.get("kind")
    if kind not in FIELDS:
        raise DocumentError([Problem("bad-kind", kind, "kind must be 'nfa' or 'revwka'")])

    problems = [Problem("unknown-field", name) for name in doc if name not in FIELDS[kind]]
    nested = doc.get("delta") if kind == "revwka" else doc.get("transitions")
    allowed = DELTA_FIELDS if kind == "revwka" else TRANSITION_FIELDS
    if isinstance(nested, list):
        for item in nested:
            if isinstance(item, dict):
                problems += [Problem("unknown-field", name, f"in {item}") for name in item
                             if name not in allowed]
            elif kind == "nfa":
                problems.append(Problem("malformed", item, "transitions are objects"))
    try:
        machine = validate_wka(doc) if kind == "revwka" else validate_nfa(doc)
    except MachineError as exc:
        problems += exc.problems
    if problems:
        raise DocumentError(problems)
    return machine


def load(path: Union[str, Path]) -> Machine:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError([Problem("unreadable", str(path), exc.strerror or str(exc))])
    return parse_document(text)


def _entry_sort_key(machine: RevWka):
    pos = {q: i for i, q in enumerate(machine.states)}
    return lambda e: (pos[e.source], tape_sort_key(e.upper), tape_sort_key(e.lower))


def to_document(machine: Machine) -> dict:
    """Canonical document as a plain dict."""
    finals = [q for q in machine.states if q in machine.finals]
    if isinstance(machine, RevWka):
        return {
            "kind": "revwka",
            "states": list(machine.states),
            "alphabet": sorted(machine.alphabet),
            "start": machine.start,
            "finals": finals,
            "complement": [list(p) for p in sorted(machine.rho.pairs)],
            "delta": [
                {"from": e.source, "upper": tape_token(e.upper), "lower": tape_token(e.lower),
                 "to": e.target, "d1": e.d1, "d2": e.d2}
                for e in sorted(machine.entries(), key=_entry_sort_key(machine))
            ],
        }
    pos = {q: i for i, q in enumerate(machine.states)}
    return {
        "kind": "nfa",
        "states": list(machine.states),
        "alphabet": sorted(machine.alphabet),
        "start": machine.start,
        "finals": finals,
        "transitions": [
            {"from": s, "symbol": x, "to": t}
            for s, x, t in sorted(machine.transitions, key=lambda t: (pos[t[0]], t[1], pos[t[2]]))
        ],
    }


def _inline(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def format_document(doc: dict) -> str:
    """Render a document dict canonically (key order taken from ``FIELDS``)."""
    lines = ["{"]
    keys = [k for k in FIELDS[doc["kind"]] if k in doc]
    for i, key in enumerate(keys):
        value = doc[key]
        comma = "," if i < len(keys) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            inner = ",\n".join("    " + _inline(item) for item in value)
            lines.append(f'  "{key}": [\n{inner}\n  ]{comma}')
        else:
            lines.append(f'  "{key}": {_inline(value)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(machine: Machine) -> str:
    return format_document(to_document(machine))


def canonicalize(text: str) -> str:
    """Canonical form of a document given as text (validates it on the way)."""
    return dumps(parse_document(text))


def save(machine: Machine, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(machine), encoding="utf-8")


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(machine: Machine) -> str:
    """Graphviz source: one node per state, one labelled edge per transition.

    Finals are double circles; the start state is drawn bold with an
    external "start" label.
    """
    lines = ["digraph machine {", "  rankdir=LR;", "  node [shape=circle];"]
    for q in machine.states:
        attrs = []
        if q in machine.finals:
            attrs.append("shape=doublecircle")
        if q == machine.start:
            attrs += ["penwidth=2", 'xlabel="start"']
        lines.append(f"  {_dot_id(q)}" + (f" [{', '.join(attrs)}];" if attrs else ";"))
    if isinstance(machine, RevWka):
        for e in sorted(machine.entries(), key=_entry_sort_key(machine)):
            label = f"{tape_token(e.upper)},{tape_token(e.lower)}/({e.d1},{e.d2})"
            lines.append(f"  {_dot_id(e.source)} -> {_dot_id(e.target)} [label={_dot_id(label)}];")
    else:
        for t in to_document(machine)["transitions"]:
            lines.append(f"  {_dot_id(t['from'])} -> {_dot_id(t['to'])} [label={_dot_id(t['symbol'])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
