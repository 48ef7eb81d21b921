import pytest

from revwka.construct import gen_lk_corrected, gen_lk_verbatim, nfa_to_wka_verbatim
from revwka.model import (LEFT, RIGHT, ComplementarityRelation, MachineError, UnknownSymbolError,
                          complements, is_strongly_reversible, validate_wka, wka_problems, wka_to_raw)

from conftest import a_star_nfa, toy

LK2_RHO = [["a", "a"], ["a", "a1"], ["a1", "a"], ["b", "b"], ["b", "b1"], ["b1", "b"]]


def raw_machine(**overrides):
    raw = {
        "states": ["p", "q"],
        "alphabet": ["a", "b"],
        "start": "p",
        "finals": ["q"],
        "complement": [["a", "a"], ["b", "b"]],
        "delta": [{"from": "p", "upper": "#", "lower": "#", "to": "q", "d1": 1, "d2": 1}],
    }
    raw.update(overrides)
    return raw


def test_verbatim_lk2_machine_is_valid():
    raw = wka_to_raw(gen_lk_verbatim(2))
    assert raw["complement"] == LK2_RHO
    assert wka_problems(raw) == []


def test_rho_not_symmetric():
    raw = raw_machine(complement=[["a", "a"], ["b", "b"], ["a", "b"]])
    with pytest.raises(MachineError) as exc:
        validate_wka(raw)
    assert exc.value.codes == ["rho-not-symmetric"]
    assert exc.value.problems[0].element == ("a", "b")


def test_endmarker_move():
    raw = raw_machine(delta=[{"from": "p", "upper": "a", "lower": "$", "to": "q", "d1": 1, "d2": 1}])
    assert [p.code for p in wka_problems(raw)] == ["endmarker-move"]


def test_endmarker_stationary_is_fine():
    raw = raw_machine(delta=[{"from": "p", "upper": "$", "lower": "$", "to": "q", "d1": 0, "d2": 0}])
    assert wka_problems(raw) == []


def test_duplicate_delta_key():
    entry = {"from": "p", "upper": "a", "lower": "a", "to": "q", "d1": 1, "d2": 1}
    raw = raw_machine(delta=[entry, dict(entry, to="p")])
    assert [p.code for p in wka_problems(raw)] == ["delta-not-function"]


def test_all_problems_reported_together():
    raw = raw_machine(
        alphabet=["a", "b", "#"],
        complement=[["a", "b"]],
        start="zz",
        delta=[{"from": "p", "upper": "c", "lower": "a", "to": "nowhere", "d1": 2, "d2": 0}],
    )
    codes = set(p.code for p in wka_problems(raw))
    assert codes == {"marker-in-alphabet", "undeclared-state", "rho-not-symmetric",
                     "rho-not-total", "undeclared-symbol", "bad-move"}


@pytest.mark.parametrize("field", ["states", "alphabet", "start", "complement", "delta"])
def test_missing_field(field):
    raw = raw_machine()
    del raw[field]
    assert [p.code for p in wka_problems(raw)] == ["malformed"]


@pytest.mark.parametrize("symbol", ["", "a b", "$"])
def test_bad_symbols(symbol):
    raw = raw_machine(alphabet=["a", "b", symbol])
    assert wka_problems(raw)


def test_revalidation_is_idempotent():
    for machine in (gen_lk_verbatim(3), gen_lk_corrected(2), nfa_to_wka_verbatim(a_star_nfa())):
        again = validate_wka(wka_to_raw(machine))
        assert again == machine
        assert validate_wka(wka_to_raw(again)) == machine


def test_markers_are_not_symbols():
    machine = gen_lk_corrected(1)
    assert LEFT not in machine.alphabet and RIGHT not in machine.alphabet
    assert "#" not in machine.alphabet and "$" not in machine.alphabet


def test_complements_lk2_relation():
    rho = gen_lk_verbatim(2).rho
    assert complements(rho, "a") == {"a", "a1"}
    assert complements(rho, "a1") == {"a"}


def test_complements_identity():
    rho = ComplementarityRelation.identity({"a", "b"})
    assert complements(rho, "a") == {"a"}
    with pytest.raises(UnknownSymbolError):
        complements(rho, "c")


def test_complements_conversion():
    machine = nfa_to_wka_verbatim(toy_nfa := a_star_nfa())
    assert complements(machine.rho, "a") == {"t1"}
    assert complements(machine.rho, "t1") == {"a"}
    assert toy_nfa.alphabet < machine.alphabet


@pytest.mark.parametrize("machine", [gen_lk_verbatim(2), gen_lk_corrected(3),
                                     nfa_to_wka_verbatim(a_star_nfa())])
def test_complements_symmetric(machine):
    for x in machine.alphabet:
        for y in machine.alphabet:
            assert (y in complements(machine.rho, x)) == (x in complements(machine.rho, y))


def test_strong_reversibility():
    assert is_strongly_reversible(toy([("p", "#", "#", "r", 1, 1)]))
    assert not is_strongly_reversible(gen_lk_verbatim(2))
    assert not is_strongly_reversible(nfa_to_wka_verbatim(a_star_nfa()))
