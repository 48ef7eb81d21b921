import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revwka.analyze import words_upto
from revwka.construct import gen_lk_corrected, gen_lk_verbatim, lk_member, nfa_to_wka_verbatim
from revwka.model import LEFT, RIGHT, ComplementarityRelation, UnknownSymbolError, validate_nfa
from revwka.reversibility import check_backward_determinism, validate_reversible
from revwka.simulate import (ACCEPT_HALT, REJECT_HALT, REJECT_LOOP, CapExceeded, SimConfig, StrandError,
                             accepts, accepts_exhaustive, config_graph, enumerate_complements,
                             lazy_successors, nfa_accepts, run_fixed)

from conftest import a_star_nfa, toy
from strategies import machines, words


def nfa_paths_accept(nfa, w):
    """Depth-first search for an accepting transition path."""
    def search(state, i):
        if i == len(w):
            return state in nfa.finals
        return any(search(t, i + 1) for (s, x, t) in nfa.transitions if s == state and x == w[i])
    return search(nfa.start, 0)


def exhaustive_plain(machine, w1):
    return any(run_fixed(machine, w1, w2).accepted
               for w2 in enumerate_complements(machine.rho, w1))


EMPTY_DELTA = toy([], states=("q0",), start="q0", finals=("q0",))
LK2_RHO = gen_lk_verbatim(2).rho


# lazy_successors

def test_successors_of_initial_config():
    machine = gen_lk_corrected(2)
    succ = lazy_successors(machine, "abab", SimConfig("s0", 0, 0, LEFT))
    assert set(succ) == {SimConfig("s0", 1, 1, c) for c in ("a", "a'", "a''")}


def test_no_entry_means_halt():
    assert lazy_successors(gen_lk_corrected(2), "abab", SimConfig("m1", 1, 2, "b")) == ()


def test_stationary_lower_head_keeps_commitment():
    machine = toy([("q", "a", "a", "r", 1, 0)], states=("q", "r"), start="q", finals=("r",))
    assert lazy_successors(machine, "aa", SimConfig("q", 1, 2, "a")) == (SimConfig("r", 2, 2, "a"),)


def test_lower_head_reaching_right_marker():
    machine = toy([("q", "a", "a", "r", 1, 1)], states=("q", "r"), start="q", finals=("r",))
    assert lazy_successors(machine, "a", SimConfig("q", 1, 1, "a")) == (SimConfig("r", 2, 2, RIGHT),)


# accepts

def test_empty_delta_accepts_immediately():
    outcome = accepts(EMPTY_DELTA, "ab")
    assert outcome.accepted
    assert outcome.halt == SimConfig("q0", 0, 0, LEFT)
    assert not outcome.consumed


def test_corrected_l2_accepts_abab():
    outcome = accepts(gen_lk_corrected(2), "abab")
    assert outcome.accepted
    assert len(outcome.w2) == 4
    assert run_fixed(gen_lk_corrected(2), "abab", outcome.w2).result == ACCEPT_HALT


def test_corrected_l2_rejects_aab():
    assert not accepts(gen_lk_corrected(2), "aab").accepted
    assert not lk_member(2, "aab")


def test_unknown_symbol_is_an_error():
    with pytest.raises(UnknownSymbolError):
        accepts(gen_lk_corrected(2), "abc")


def test_empty_word_uses_empty_strands():
    # accepts only via ($,$) at positions (1, 1)
    machine = toy([("p", "#", "#", "q", 1, 1), ("q", "$", "$", "r", 0, 0)])
    outcome = accepts(machine, "")
    assert outcome.accepted and outcome.w2 == () and outcome.halt == SimConfig("r", 1, 1, RIGHT)
    assert outcome.consumed
    assert not accepts(machine, "a").accepted


# enumerate_complements

def test_enumerate_lk2_relation():
    assert set(enumerate_complements(LK2_RHO, "ab")) == {
        ("a", "b"), ("a", "b1"), ("a1", "b"), ("a1", "b1")}


def test_enumerate_identity():
    rho = ComplementarityRelation.identity("abc")
    assert enumerate_complements(rho, "abc") == [("a", "b", "c")]


def test_enumerate_empty_word():
    assert enumerate_complements(LK2_RHO, "") == [()]


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_complements(LK2_RHO, "ab" * 6, cap=100)


# run_fixed

def test_fixed_run_replays_witness():
    outcome = accepts(gen_lk_corrected(2), "abab")
    assert run_fixed(gen_lk_corrected(2), "abab", outcome.w2).accepted


def test_stationary_self_loop():
    machine = toy([("q0", "#", "#", "q0", 0, 0)], states=("q0",), start="q0", finals=("q0",))
    outcome = run_fixed(machine, "ab", "ab")
    assert outcome.result == REJECT_LOOP
    assert outcome.trace[0][:3] == outcome.trace[-1][:3]


def test_undecorated_strand_rejected():
    # entering m1 needs a primed lower symbol
    outcome = run_fixed(gen_lk_corrected(2), "abab", "abab")
    assert outcome.result == REJECT_HALT
    assert outcome.trace[-1].state == "s2"


@pytest.mark.parametrize("w2", ["ab", "abbb", "abc"])
def test_invalid_strands(w2):
    with pytest.raises((StrandError, UnknownSymbolError)):
        run_fixed(gen_lk_corrected(2), "abab", w2)


# accepts_exhaustive

def test_exhaustive_agrees_on_corrected_l2():
    machine = gen_lk_corrected(2)
    for w in words_upto("ab", 6):
        assert accepts(machine, w).accepted == accepts_exhaustive(machine, w)


def test_exhaustive_empty_delta():
    for w in words_upto("ab", 3):
        assert accepts_exhaustive(EMPTY_DELTA, w)


def test_exhaustive_verbatim_l2_rejects_abab():
    machine = gen_lk_verbatim(2)
    assert len(enumerate_complements(machine.rho, "abab")) == 16
    assert not accepts_exhaustive(machine, "abab")
    assert not exhaustive_plain(machine, "abab")


def test_skipping_matches_plain_enumeration():
    machines_ = [gen_lk_verbatim(2), gen_lk_corrected(2), nfa_to_wka_verbatim(a_star_nfa())]
    for machine in machines_:
        for w in words_upto(sorted(machine.alphabet)[:3], 4):
            assert accepts_exhaustive(machine, w) == exhaustive_plain(machine, w)


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_lazy_matches_exhaustive(data):
    machine = data.draw(machines())
    w1 = data.draw(words(machine.alphabet, 6))
    assert accepts(machine, w1).accepted == accepts_exhaustive(machine, w1) == exhaustive_plain(machine, w1)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_fixed_runs_move_heads_right_only(data):
    machine = data.draw(machines())
    w1 = data.draw(words(machine.alphabet, 5))
    w2 = tuple(data.draw(st.sampled_from(sorted(machine.complements(x)))) for x in w1)
    trace = run_fixed(machine, w1, w2).trace
    for a, b in zip(trace, trace[1:]):
        assert a.p1 <= b.p1 <= len(w1) + 1 and a.p2 <= b.p2 <= len(w1) + 1
        if a.c2 is RIGHT:
            assert b.p2 == a.p2


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_witness_strand_is_valid(data):
    machine = data.draw(machines())
    w1 = data.draw(words(machine.alphabet, 5))
    outcome = accepts(machine, w1)
    if outcome.accepted:
        assert len(outcome.w2) == len(w1)
        assert all(y in machine.complements(x) for x, y in zip(w1, outcome.w2))
        assert run_fixed(machine, w1, outcome.w2).accepted


# nfa_accepts

def test_nfa_a_star():
    nfa = a_star_nfa()
    assert all(nfa_accepts(nfa, w) for w in ["", "a", "aa"])


def test_nfa_rejects_other_symbol():
    nfa = validate_nfa({"states": ["s"], "alphabet": ["a", "b"], "start": "s", "finals": ["s"],
                        "transitions": [["s", "a", "s"]]})
    assert not nfa_accepts(nfa, "b")


def test_nfa_matches_path_oracle(nfa_corpus):
    for nfa in nfa_corpus:
        for w in words_upto("ab", 6):
            assert nfa_accepts(nfa, w) == nfa_paths_accept(nfa, w)


# config_graph

def test_graph_of_accepting_run_is_backward_deterministic():
    machine = gen_lk_corrected(2)
    w2 = accepts(machine, "abab").w2
    for scope in ("all", "reachable"):
        assert config_graph(machine, "abab", w2, scope).max_in_degree() == 1


def test_graph_shows_read_clash():
    machine = toy([("p", "#", "#", "p", 1, 1), ("p", "a", "a", "r", 1, 1), ("q", "a", "a", "r", 1, 1)])
    (violation,) = check_backward_determinism(machine)
    e = violation.witnesses[0]
    graph = config_graph(machine, (e.upper,), (e.lower,))
    assert graph.in_degrees()[("r", 2, 2)] == 2
    assert {n for n, t in graph.edges.items() if t == ("r", 2, 2)} == {("p", 1, 1), ("q", 1, 1)}


def test_graph_for_empty_word():
    machine = gen_lk_corrected(1)
    graph = config_graph(machine, "", "")
    assert graph.nodes == {(q, p1, p2) for q in machine.states for p1 in (0, 1) for p2 in (0, 1)}


def test_reachable_scope_follows_run():
    machine = gen_lk_corrected(2)
    w2 = accepts(machine, "abab").w2
    graph = config_graph(machine, "abab", w2, "reachable")
    trace = run_fixed(machine, "abab", w2).trace
    assert graph.nodes == {(c.state, c.p1, c.p2) for c in trace}


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_reversible_machines_have_indegree_at_most_one(data):
    machine = data.draw(machines(reversible=True))
    assert validate_reversible(machine).passed
    w1 = data.draw(words(machine.alphabet, 4))
    w2 = tuple(data.draw(st.sampled_from(sorted(machine.complements(x)))) for x in w1)
    assert config_graph(machine, w1, w2).max_in_degree() <= 1
