from pathlib import Path

import pytest

from revwka.analyze import random_nfa_corpus
from revwka.model import LEFT, RIGHT, make_wka, validate_nfa

GOLDEN = Path(__file__).parent / "golden"


def toy(entries, states=("p", "q", "r"), alphabet=("a", "b"), pairs=None, start="p", finals=("r",)):
    """Small machine builder; reads may be "#"/"$" strings or symbols."""
    if pairs is None:
        pairs = [(x, x) for x in alphabet]
    marker = {"#": LEFT, "$": RIGHT}
    entries = [(s, marker.get(u, u), marker.get(l, l), t, d1, d2) for (s, u, l, t, d1, d2) in entries]
    return make_wka(states, alphabet, pairs, start, finals, entries)


def a_star_nfa():
    return validate_nfa({"states": ["s"], "alphabet": ["a"], "start": "s", "finals": ["s"],
                         "transitions": [["s", "a", "s"]]})


def two_final_nfa():
    # a or b, each ending in its own final state
    return validate_nfa({"states": ["p", "f1", "f2"], "alphabet": ["a", "b"], "start": "p",
                         "finals": ["f1", "f2"],
                         "transitions": [["p", "a", "f1"], ["p", "b", "f2"], ["f1", "a", "f1"]]})


@pytest.fixture(scope="session")
def nfa_corpus():
    return random_nfa_corpus(50, seed=2024)


def pytest_terminal_summary(terminalreporter):
    import sys
    module = sys.modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in module.RESULTS:
            terminalreporter.write_line(line)
