"""Static reversibility checks on a Rev-WKA's transition table.

Two restrictions make a machine backward deterministic:

* move uniformity: all entries into the same state move the heads the same way;
* backward determinism: two distinct entries into the same state with the same
  moves must differ in at least one read symbol.

Both are reported pairwise and exhaustively.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .model import RIGHT, Entry, RevWka

MOVE_UNIFORMITY = "move-uniformity"
BACKWARD_DETERMINISM = "backward-determinism"
ENDMARKER_MOVE = "endmarker-move"


@dataclass(frozen=True)
class Violation:
    kind: str
    witnesses: tuple  # of Entry

    def __str__(self) -> str:
        return f"{self.kind}: " + " vs ".join(str(e) for e in self.witnesses)


def _entry_order(e: Entry) -> tuple:
    return (str(e.source), str(e.upper), str(e.lower), str(e.target), e.d1, e.d2)


def _by_target(wka: RevWka) -> dict[str, list[Entry]]:
    groups: dict[str, list[Entry]] = defaultdict(list)
    for e in sorted(wka.entries(), key=_entry_order):
        groups[e.target].append(e)
    return groups


def check_move_uniformity(wka: RevWka) -> list[Violation]:
    violations = []
    groups = _by_target(wka)
    for target in sorted(groups):
        for e, f in combinations(groups[target], 2):
            if e.moves != f.moves:
                violations.append(Violation(MOVE_UNIFORMITY, (e, f)))
    return violations


def check_backward_determinism(wka: RevWka) -> list[Violation]:
    violations = []
    groups = _by_target(wka)
    for target in sorted(groups):
        for e, f in combinations(groups[target], 2):
            if e.moves == f.moves and e.upper == f.upper and e.lower == f.lower:
                violations.append(Violation(BACKWARD_DETERMINISM, (e, f)))
    return violations


def check_endmarker_rule(wka: RevWka) -> list[Violation]:
    # Validated machines never violate this; kept so reports are self-contained.
    return [Violation(ENDMARKER_MOVE, (e,)) for e in sorted(wka.entries(), key=_entry_order)
            if (e.upper is RIGHT and e.d1) or (e.lower is RIGHT and e.d2)]


@dataclass(frozen=True)
class ReversibilityReport:
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]

    def render(self) -> str:
        if self.passed:
            return "reversible: pass (0 violations)"
        lines = [f"reversible: FAIL ({len(self.violations)} violation(s))"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


def validate_reversible(wka: RevWka) -> ReversibilityReport:
    violations = check_endmarker_rule(wka) + check_move_uniformity(wka) + check_backward_determinism(wka)
    return ReversibilityReport(tuple(violations))
