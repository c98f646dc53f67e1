from fractions import Fraction
from pathlib import Path

import pytest

import seqprice

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


def test_alice_bob_dynamic_reaches_optimum():
    m = seqprice.builtin_market("alice_bob")
    allocation, opt = seqprice.optimum(m)
    assert opt == 6
    assert allocation == {"alice": ["a"], "bob": ["b"]}
    report = seqprice.simulate(m, "dynamic-matching")
    assert report["worst_welfare"] == 6
    assert report["opt"] == 6
    assert report["trace_count"] == 2


def test_static_prices_can_lose_welfare():
    m = seqprice.builtin_market("alice_bob")
    prices = {"a": 4, "b": 0}
    assert seqprice.demand(m, "alice", prices) == [["a"], ["b"]]
    assert seqprice.simulate(m, "static-items", prices=prices)["worst_welfare"] == 1
    scripted = seqprice.simulate(m, "static-items", prices=prices, order=["alice", "bob"],
                                 tie_break="scripted", script=[["b"], []])
    assert scripted["worst_welfare"] == 1


def test_round_zero_matching_prices():
    m = seqprice.builtin_market("alice_bob")
    assert seqprice.dynamic_matching_prices(m) == {"a": Fraction(4, 3), "b": Fraction(0)}


def test_cyclic_market():
    m = seqprice.builtin_market("cyclic_three")
    assert seqprice.simulate(m, "dynamic-matching", max_traces=0)["worst_welfare"] == 3
    zero = {"a": 0, "b": 0, "c": 0}
    assert seqprice.simulate(m, "static-items", prices=zero, max_traces=0)["worst_welfare"] == 2


def test_coverage_instance():
    m = seqprice.builtin_market("coverage")
    assert m.kind("agent1") == "coverage"
    assert seqprice.value(m, "agent1", ["a"]) == 3
    best = seqprice.unique_optimum(m)
    assert best == {"agent1": ["a"], "agent2": ["b"], "agent3": ["c"], "agent4": ["d"]}
    ok, reason = seqprice.is_walrasian(m, {"a": 1, "b": 1, "c": 1, "d": 1}, best)
    assert ok and reason is None
    ok, reason = seqprice.is_walrasian(m, {"a": 0, "b": 0, "c": 0, "d": 0}, {})
    assert not ok and reason
    assert not seqprice.is_gross_substitutes(m, "agent1")
    with pytest.raises(seqprice.PreconditionError):
        seqprice.simulate(m, "gs-unique")
    report = seqprice.simulate(m, "static-half", max_traces=0)
    assert report["worst_welfare"] == 7
    assert report["opt"] == 8


def test_gs_unique_prices_single_out_the_optimum():
    m = seqprice.parse_market(
        "items: [a, b]\n"
        "agents:\n"
        "  - {name: x, valuation: {type: unit_demand, values: {a: '5', b: '1'}}}\n"
        "  - {name: y, valuation: {type: unit_demand, values: {a: '1', b: '2'}}}\n")
    p = seqprice.gs_unique_prices(m)
    assert seqprice.demand(m, "x", p) == [["a"]]
    assert seqprice.demand(m, "y", p) == [["b"]]
    assert seqprice.simulate(m, "gs-unique")["worst_welfare"] == 7


def test_sapb_synergy():
    m = seqprice.parse_market(
        "items: [a, b]\n"
        "agents:\n"
        "  - name: x\n"
        "    valuation: {type: explicit, values: [{bundle: [a], value: '2'}, {bundle: [b], value: '1'},"
        " {bundle: [a, b], value: '6'}]}\n"
        "  - name: y\n"
        "    valuation: {type: explicit, values: [{bundle: [a], value: '0'}, {bundle: [b], value: '2'},"
        " {bundle: [a, b], value: '2'}]}\n")
    assert seqprice.is_superadditive(m, "x")
    r = seqprice.sapb(m, {"x": ["a"], "y": ["b"]})
    assert r["merges"] == 1
    assert r["bundles"] == {"x": ["a", "b"], "y": []}
    assert r["delta"] == 4 and r["epsilon"] == 2
    assert r["prices"] == [(["a", "b"], Fraction(4))]


def test_feasibility():
    r = seqprice.feasible((FIXTURES / "coverage_conditions.sys").read_text())
    assert not r["feasible"]
    assert "sum:" in r["certificate"]
    assert all(y >= 0 for y in r["multipliers"])
    r = seqprice.feasible("x < 1\nx >= 0\n")
    assert r["feasible"] and r["point"] == {"x": Fraction(0)}


def test_files_and_errors():
    m = seqprice.load_market(str(FIXTURES / "alice_bob.yaml"))
    assert m.items == ["a", "b"] and m.agents == ["alice", "bob"]
    assert seqprice.parse_market(m.dump()).dump() == m.dump()
    with pytest.raises(seqprice.ParseError):
        seqprice.parse_market("items: [a]\nagents:\n  - {name: x, valuation: {type: unit_demand, values: {a: 1.5}}}\n")
    with pytest.raises(seqprice.InputError):
        seqprice.simulate(m, "no-such-scheme")
    with pytest.raises(TypeError):
        seqprice.demand(m, "alice", {"a": 0.5, "b": 0})
