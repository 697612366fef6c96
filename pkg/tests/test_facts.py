import json
import logging

import pytest

from app.agents.fact_verifier import TOOLS, FactVerifierAgent, check_fact
from app.exceptions import FactMismatchError, UsageError
from app.models import Fact, FactEntry, FactLedger
from app.services.corpus import CORPUS
from app.services.facts import FactStore


@pytest.fixture(scope="module")
def ledger():
    return FactStore().load()


def test_shipped_ledger_covers_the_corpus(ledger):
    assert ledger.schema_version == 1
    assert {e.algebra for e in ledger.algebras} == {e.slug for e in CORPUS}
    for entry in ledger.algebras:
        keys = [f.key for f in entry.facts]
        assert len(keys) == len(set(keys))
        for fact in entry.facts:
            assert fact.key.partition(":")[0] in TOOLS
            assert fact.provenance in ("PAPER", "TRIVIAL", "DERIVED")


def test_derived_deviation_is_recorded(ledger):
    fact = next(f for f in ledger.entry("reflexive-simples-2").facts if f.key == "module:mho(P1/<c>)")
    assert fact.provenance == "DERIVED"
    assert fact.value["dim"] == 6
    assert fact.value["torsionless"] is False


@pytest.mark.parametrize("slug", ["line-2", "linear-3-zero-composite", "local-xy-rad2", "semisimple-2"])
def test_small_algebras_verify(ledger, slug):
    results = FactVerifierAgent(include_slow=False, algebras=[slug]).verify(ledger)
    assert results
    assert all(r["success"] for r in results)


@pytest.mark.slow
def test_whole_ledger_verifies(ledger):
    results = FactVerifierAgent().verify(ledger)
    assert all(r["success"] for r in results)


def test_slow_facts_are_skipped(ledger):
    results = FactVerifierAgent(include_slow=False, algebras=["reflexive-simples-4"]).run(ledger)
    assert "census" not in {r["key"] for r in results}


def test_mismatch_is_reported(line2, caplog):
    with caplog.at_level(logging.ERROR):
        result = check_fact(line2, Fact(key="dim", value=4, provenance="TRIVIAL"))
    assert result["success"] is False
    assert result["actual"] == 3
    assert "FACT_TOOL MISMATCH" in caplog.text


def test_unknown_kind_and_failing_tool(a2):
    assert check_fact(a2, Fact(key="genus", value=0, provenance="TRIVIAL"))["error"].startswith("no tool")
    result = check_fact(a2, Fact(key="scan:local", value={"vacuous": True}, provenance="DERIVED"))
    assert result["success"] is False
    assert result["error"].startswith("UsageError")


def test_socle_basis_order_does_not_matter(a2):
    fact = Fact(key="socleBasis", value=["cy", "bx", "c", "b"], provenance="PAPER")
    assert check_fact(a2, fact)["success"]


def test_module_and_iso_facts(three_vertex):
    assert check_fact(three_vertex, Fact(key="module:dual(S2)", value={"simple": True}, provenance="PAPER"))["success"]
    fact = Fact(key="iso:dual(dual(S2))~P3", value={"left": "dual(dual(S2))", "right": "P3", "expected": True},
                provenance="PAPER")
    assert check_fact(three_vertex, fact)["success"]


def test_verify_raises_on_mismatch():
    ledger = FactLedger(algebras=[FactEntry(algebra="line-2", facts=[
        Fact(key="dim", value=3, provenance="TRIVIAL"),
        Fact(key="census", value=5, provenance="DERIVED"),
    ])])
    with pytest.raises(FactMismatchError, match="line-2/census"):
        FactVerifierAgent().verify(ledger)


def test_store_add_and_reload(tmp_path):
    store = FactStore(tmp_path / "facts.json")
    store.add("kronecker", Fact(key="dim", value=4, provenance="TRIVIAL"))
    store.add("kronecker", Fact(key="dim", value=4, provenance="DERIVED", note="recounted"))
    store.add("line-2", Fact(key="qf2", value=True, provenance="DERIVED"))
    ledger = store.load()
    assert [e.algebra for e in ledger.algebras] == ["kronecker", "line-2"]
    [fact] = ledger.entry("kronecker").facts
    assert (fact.provenance, fact.note) == ("DERIVED", "recounted")
    assert "slow" in json.loads(store.path.read_text())["algebras"][0]["facts"][0]
    assert FactVerifierAgent().verify(ledger)


def test_store_rejects_bad_files(tmp_path):
    with pytest.raises(UsageError):
        FactStore(tmp_path / "missing.json").load()
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1, "algebras": [{"facts": []}]}')
    with pytest.raises(UsageError):
        FactStore(bad).load()
    old = tmp_path / "old.json"
    old.write_text('{"schema_version": 0, "algebras": []}')
    with pytest.raises(UsageError, match="schema_version"):
        FactStore(old).load()

