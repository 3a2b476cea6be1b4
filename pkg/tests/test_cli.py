"""The command line front end, driven in process through main()."""

import json

import pytest

from netdesign import load_game
from netdesign.cli import (
    EXIT_BUDGET,
    EXIT_IO,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    EXIT_VALIDATION,
    EXIT_VERIFICATION,
    main,
)

DIRECTED_TEXT = """\
{
  "directed": true,
  "vertices": ["s1", "v", "t"],
  "edges": [
    {"id": "direct1", "u": "s1", "v": "t", "cost": 1},
    {"id": "spoke1", "u": "s1", "v": "v", "cost": 0},
    {"id": "shared", "u": "v", "v": "t", "cost": "11/10"}
  ],
  "players": [{"id": 1, "source": "s1", "target": "t"}]
}
"""


@pytest.fixture
def instance_file(tmp_path, instance_a_text):
    path = tmp_path / "instance_a.json"
    path.write_text(instance_a_text)
    return str(path)


def test_exit_code_constants_are_distinct():
    codes = [
        EXIT_OK,
        EXIT_USAGE,
        EXIT_PARSE,
        EXIT_VALIDATION,
        EXIT_BUDGET,
        EXIT_VERIFICATION,
        EXIT_IO,
    ]
    assert codes == [0, 2, 10, 11, 12, 13, 14]


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(["no-such-command"]) == EXIT_USAGE
    assert main(["--help"]) == EXIT_OK


def test_analyze_instance_a(instance_file, capsys):
    assert main(["analyze", instance_file]) == EXIT_OK
    out = capsys.readouterr().out
    assert "players: 2  vertices: 2  edges: 2" in out
    assert "profiles: 4" in out
    assert "nash equilibria: 2" in out
    assert "potential minimizers: 1" in out
    assert "potential minimum: 3 (3)" in out
    assert "optimum cost: 2 (2)" in out
    assert "PoS = 1 (1)" in out
    assert "PoA = 3/2 (1.5)" in out
    assert "POPoA = 1 (1)" in out


def test_analyze_json(instance_file, capsys):
    assert main(["analyze", instance_file, "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["players"] == 2
    assert doc["profiles"] == 4
    assert doc["pos"] == "1"
    assert doc["poa"] == "3/2"
    assert doc["popoa"] == "1"
    assert doc["optimum_cost"] == "2"


def test_analyze_zero_cost_optimum(tmp_path, capsys):
    text = json.dumps(
        {
            "vertices": ["a", "b"],
            "edges": [
                {"id": "e0", "u": "a", "v": "b", "cost": 0},
                {"id": "e1", "u": "a", "v": "b", "cost": 1},
            ],
            "players": [{"id": 1, "source": "a", "target": "b"}],
        }
    )
    path = tmp_path / "zero.json"
    path.write_text(text)
    assert main(["analyze", str(path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PoS = undefined (optimum cost is 0)" in out


def test_analyze_missing_file(tmp_path, capsys):
    code = main(["analyze", str(tmp_path / "absent.json")])
    assert code == EXIT_IO
    assert "error:" in capsys.readouterr().err


def test_analyze_malformed_instance(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["analyze", str(path)]) == EXIT_PARSE


def test_analyze_invalid_instance(tmp_path, instance_a_text):
    doc = json.loads(instance_a_text)
    doc["edges"][0]["cost"] = -2
    path = tmp_path / "invalid.json"
    path.write_text(json.dumps(doc))
    assert main(["analyze", str(path)]) == EXIT_VALIDATION


def test_analyze_budget(instance_file):
    assert main(["analyze", instance_file, "--max-profiles", "3"]) == EXIT_BUDGET


def test_analyze_out_file(instance_file, tmp_path, capsys):
    target = tmp_path / "report.txt"
    assert main(["analyze", instance_file, "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert "PoS = 1 (1)" in target.read_text()


def test_verify_lemmas_instance_a(instance_file, capsys):
    assert main(["verify-lemmas", instance_file]) == EXIT_OK
    out = capsys.readouterr().out
    pivot_lines = [l for l in out.splitlines() if l.startswith("lemma1 pivot")]
    assert len(pivot_lines) == 2
    assert all(l.endswith("PASS") for l in pivot_lines)
    assert "lemma1 pivot 1: phi(N) = 3 (3), phi(dev) = 3 (3), RHS = 3 (3)" in out
    assert "aggregate: PASS" in out
    assert "  ratio:" in out


def test_verify_lemmas_json(instance_file, capsys):
    assert main(["verify-lemmas", instance_file, "--json"]) == EXIT_OK
    docs = json.loads(capsys.readouterr().out)
    assert len(docs) == 1
    assert docs[0]["lemma"] == "lemma1"
    assert len(docs[0]["pivots"]) == 2
    assert docs[0]["aggregate"]["ok"] is True


def test_verify_lemmas_rejects_directed(tmp_path):
    path = tmp_path / "directed.json"
    path.write_text(DIRECTED_TEXT)
    assert main(["verify-lemmas", str(path)]) == EXIT_VALIDATION


def test_bounds_explicit_rows(capsys):
    assert main(["bounds", "--n", "2", "--n", "100"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "n,H_n,x,B(n),H(n/2),gap"
    assert len(lines) == 3
    assert lines[1].startswith("2,3/2,1,")
    assert lines[2].startswith("100,")


def test_bounds_range(capsys):
    assert main(["bounds", "--n-max", "10"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().split("\n")
    # header plus n = 2..10
    assert len(lines) == 10
    assert [row.split(",")[0] for row in lines[1:]] == [
        str(n) for n in range(2, 11)
    ]


def test_bounds_epsilon_threshold(capsys):
    assert main(["bounds", "--n", "100", "--n", "1000", "--epsilon", "0.2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "least tabulated n with gap < 0.2: 1000" in out
    assert main(["bounds", "--n", "100", "--epsilon", "0.1"]) == EXIT_OK
    assert "no tabulated n has gap < 0.1" in capsys.readouterr().out


def test_bounds_json_format(capsys):
    assert main(["bounds", "--n", "2", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc[0]["n"] == 2
    assert doc[0]["x"] == "1"


def test_bounds_rejects_small_n(capsys):
    assert main(["bounds", "--n", "1"]) == EXIT_VALIDATION


def test_fuzz_small_campaign(capsys):
    assert main(["fuzz", "--count", "6", "--seed", "5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "fuzz summary" in out
    assert "seed: 5" in out
    assert "requested: 6" in out
    assert "violations: 0" in out


def test_fuzz_zero_count(capsys):
    assert main(["fuzz", "--count", "0"]) == EXIT_OK
    assert "requested: 0" in capsys.readouterr().out


def test_fuzz_deterministic(capsys):
    assert main(["fuzz", "--count", "8", "--seed", "11"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["fuzz", "--count", "8", "--seed", "11"]) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second


def test_gen_bridge_round_trip(tmp_path):
    target = tmp_path / "bridge.json"
    code = main(
        ["gen", "--family", "bridge", "--players", "3", "--out", str(target)]
    )
    assert code == EXIT_OK
    g = load_game(target.read_text())
    assert g.n == 3
    assert g.edge("ab").cost == 1


def test_gen_directed_eps_token(capsys):
    assert main(["gen", "--family", "directed", "--players", "2", "--eps", "1/100"]) == EXIT_OK
    g = load_game(capsys.readouterr().out)
    assert g.directed
    assert g.edge("shared").cost.numerator == 101


def test_gen_random_deterministic(capsys):
    argv = ["gen", "--family", "random", "--seed", "9"]
    assert main(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert main(argv) == EXIT_OK
    assert first == capsys.readouterr().out
    load_game(first)


def test_gen_rejects_bad_params(capsys):
    code = main(["gen", "--family", "directed", "--players", "1"])
    assert code == EXIT_VALIDATION
    assert "error:" in capsys.readouterr().err
