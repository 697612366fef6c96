import json

import pytest

import main
from app import config
from app.routers.commands import run


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_info(capsys):
    assert run(["info", str(config.PRESENTATIONS_DIR / "a2.quiv")]) == 0
    report = _json(capsys)
    assert report["schema_version"] == 1
    assert report["algebra"]["dim"] == 8
    assert report["algebra"]["regularDims"] == [5, 3]
    assert sorted(report["socle"]["basis"]) == ["b", "bx", "c", "cy"]


def test_canonical(capsys):
    assert run(["canonical", "three-vertex"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("name linear-3-zero-composite\nfield F101\n")
    assert "relation a*b\n" in out


def test_simples_filter(capsys):
    assert run(["simples", "linear-3-zero-composite", "--check", "torsionless"]) == 0
    names = [s["name"] for s in _json(capsys)["simples"]]
    assert names == ["S1", "S2"]


def test_dual(capsys):
    assert run(["dual", "a2", "--module", "S1"]) == 0
    report = _json(capsys)
    assert report["module"]["dims"] == [1, 0]
    assert sum(report["dual"]["dims"]) == 2


def test_mho_quiver_json_and_dot(capsys):
    assert run(["mho-quiver", "a2"]) == 0
    quiver = _json(capsys)["mhoQuiver"]
    assert len(quiver["nodes"]) == 6
    assert quiver["componentSizes"] == [3, 3]
    assert run(["mho-quiver", "a2", "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert dot.lstrip().startswith(("digraph", "//"))
    assert dot.count("->") == 4


def test_mho_quiver_from_module_seeds(capsys):
    assert run(["mho-quiver", "a2", "--seeds", "P1/<c>", "--max-steps", "1"]) == 0
    assert len(_json(capsys)["mhoQuiver"]["nodes"]) == 2


def test_self_injective(capsys):
    assert run(["self-injective", "local-x3"]) == 0
    section = _json(capsys)["selfInjective"]
    assert section["verdict"] is True
    assert all(section["conditions"].values())


def test_census(capsys):
    assert run(["census", "line-2"]) == 0
    census = _json(capsys)["census"]
    assert census["count"] == 2
    assert census["provedWithinBudget"] is True


def test_verify_paper(capsys):
    assert run(["verify-paper", "--algebra", "line-2", "--algebra", "kronecker", "--skip-slow"]) == 0
    summary = _json(capsys)
    assert summary["failed"] == 0
    assert summary["checked"] > 0


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["mho-quiver", "a2", "--max-steps", "-1"], ["census", "line-2", "--budget", "0"],
     ["dual", "a2", "--module", "S7"], ["info", "no-such-file"]],
)
def test_usage_errors_exit_one(argv):
    assert main.main(argv) == 1


def test_parse_error_exits_two(tmp_path, capsys):
    broken = tmp_path / "broken.quiv"
    broken.write_text("vertices 1\narrow x 1 1\nrelation x*z\n")
    assert main.main(["info", str(broken)]) == 2
    assert "line 3, column 12" in capsys.readouterr().err


def test_fact_mismatch_exits_five(tmp_path):
    store = tmp_path / "facts.json"
    store.write_text(json.dumps({"schema_version": 1, "algebras": [
        {"algebra": "line-2", "facts": [{"key": "census", "value": 7, "provenance": "DERIVED"}]},
    ]}))
    assert main.main(["verify-paper", "--facts", str(store)]) == 5


def test_verify_paper_counts_failures(monkeypatch, capsys):
    from app.routers import commands

    monkeypatch.setattr(
        commands.FactVerifierAgent, "verify", lambda self, ledger: [{"success": True}, {"success": False}]
    )
    assert main.main(["verify-paper", "--algebra", "line-2", "--skip-slow"]) == 5
    summary = _json(capsys)
    assert (summary["checked"], summary["failed"]) == (2, 1)


def test_non_prime_field_exits_two(tmp_path, capsys):
    broken = tmp_path / "f6.quiv"
    broken.write_text("field F6\nvertices 1\n")
    assert main.main(["info", str(broken)]) == 2
    assert "6 is not prime" in capsys.readouterr().err
