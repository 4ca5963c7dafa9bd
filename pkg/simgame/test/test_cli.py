import json

import pytest

from ..cli import EXIT_INVALID, EXIT_OK, EXIT_REFUSED, EXIT_USAGE, run_command
from ..info import RELEASE
from ..utils.buffers import RegionBuffer


def doc(argv):
    status, text = run_command(argv + ["--format", "doc"])
    assert status == EXIT_OK, text
    return json.loads(text)


def test_stackelberg():
    record, = doc(["stackelberg", "tg"])
    assert record == {"commitment": "5/6 C + 1/6 D", "reply": "T", "u1": "0", "u1_approx": "0",
                      "u2": "100/3", "u2_approx": "33.3333"}


def test_solve():
    records = doc(["solve", "tg", "--method", "vertex"])
    assert len(records) == 1
    assert (records[0]["s1"], records[0]["s2"]) == ("WO", "D")
    assert records[0]["degenerate"] is True
    assert records[0]["extreme_points"] == 2


def test_transform():
    game = doc(["transform", "tg", "--cost", "1"])
    assert game["s1"] == ["T", "WO", "m-sim"]
    assert game["s2"] == ["C", "5/6 C + 1/6 D", "D"]
    assert game["u1"][2] == [19, -1, -1]
    pure = doc(["transform", "tg", "--cost", "1", "--kind", "pure"])
    assert pure["s1"][-1] == "p-sim"


def test_helps():
    record, = doc(["helps", "ptg", "--cost", "2"])
    assert record["helps"] == "yes"
    assert record["criterion"] == "a"
    record, = doc(["helps", "tg", "--cost", "1/10"])
    assert record["helps"] == "no"
    assert "u1" not in record


def test_sim_eq():
    records = doc(["sim-eq", "ptg", "--cost", "2"])
    assert any(r["u1"] == "58/17" and r["u2"] == "500/29" for r in records)


def test_analyze():
    record, = doc(["analyze", "ptg", "--class", "gptg", "--cost", "2"])
    assert record["p_D"] == "2/25"
    assert record["p_D_approx"] == "0.08"
    assert record["p_sim_approx"] == "0.310345"
    assert record["u1"] == "58/17"
    assert record["t1"] == "PT"
    assert record["aggregate"] == "69/85 C + 16/85 D"
    record, = doc(["analyze", "dtg", "--class", "tcg", "--cost", "1/2"])
    assert record["u1"] == "85/9"
    assert record["v1"] == "9, 10"


def test_analyze_coordination(tmp_path):
    path = tmp_path / "coordination.json"
    path.write_text(json.dumps({"name": "coord", "class": "coordination", "s1": ["a1_1", "a1_2"],
                                "s2": ["a2_1", "a2_2"], "u1": [[2, 0], [0, 1]], "u2": [[2, 0], [0, 1]]}))
    record, = doc(["analyze", str(path), "--class", "coordination", "--cost", "1/10"])
    assert record["u1"] == "19/20"
    assert record["case"] == 2


def test_refusals():
    status, text = run_command(["analyze", "tg", "--class", "gptg", "--cost", "1/10"])
    assert status == EXIT_REFUSED
    assert text.startswith("refused (trivial)")
    status, text = run_command(["analyze", "ptg", "--class", "gptg", "--cost", "5"])
    assert status == EXIT_REFUSED
    assert "cost_too_high" in text


def test_invalid_input(tmp_path):
    status, text = run_command(["solve", "nonsense"])
    assert status == EXIT_INVALID
    path = tmp_path / "broken.json"
    path.write_text('{"name": "x",\n "u1": }')
    status, text = run_command(["solve", str(path)])
    assert status == EXIT_INVALID
    assert "line 2 column 8" in text
    path.write_bytes(b'{"name": "\xff", "s1": ["T"]}')
    status, text = run_command(["solve", str(path)])
    assert status == EXIT_INVALID
    assert "invalid UTF-8 at byte offset 10" in text
    status, _ = run_command(["analyze", "tg", "--class", "coordination", "--cost", "1"])
    assert status == EXIT_INVALID


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["transform", "tg"], ["helps", "tg", "--cost", "x"],
                                  ["solve", "tg", "--format", "xml"]])
def test_usage_errors(argv):
    status, text = run_command(argv)
    assert status == EXIT_USAGE
    assert "usage" in text


def test_pg():
    game = doc(["pg", "--passwords", "3", "--stakes", "20"])
    assert game["name"] == "PG(3, 20)"
    assert game["u1"][1] == [21, -42, -42]
    status, text = run_command(["pg", "--passwords", "0", "--stakes", "20"])
    assert status == EXIT_INVALID


def test_gadget(tmp_path):
    path = tmp_path / "k22.txt"
    path.write_text("2 2\n0 0\n0 1\n1 0\n1 1\n")
    game = doc(["gadget", "--graph", str(path), "--k", "2"])
    assert game["name"] == "CBS(k=2)"
    record, = doc(["gadget", "--graph", str(path), "--k", "2", "--cost", "1/10"])
    assert (record["u1"], record["u2"]) == ("9/10", "1")
    status, _ = run_command(["gadget", "--graph", str(tmp_path / "missing.txt"), "--k", "2"])
    assert status == EXIT_INVALID


def test_sweep_csv():
    status, text = run_command(["sweep", "ptg", "--class", "gptg", "--cost-min", "1", "--cost-max", "5",
                                "--steps", "3", "--threads", "2"])
    assert status == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "cost,p_sim,p_D,u1,u2,status"
    assert lines[-1] == "5,,,,,refused:cost_too_high"


def test_informed():
    records = doc(["informed", "tg", "--cost", "1/10", "1"])
    assert records == [{"cost": "1/10", "helps": "no"}, {"cost": "1", "helps": "no"}]


def test_table_output():
    status, text = run_command(["stackelberg", "ptg"])
    assert status == EXIT_OK
    assert "15/17 C + 2/17 D" in text
    assert "500/17" in text


def test_version(capsys):
    status, text = run_command(["--version"])
    assert status == EXIT_OK
    assert capsys.readouterr().out.strip() == f"simgame {RELEASE}"


@pytest.mark.parametrize("argv", [["solve", "ptg", "--format", "csv"],
                                  ["solve", "tg", "--method", "vertex", "--format", "doc"],
                                  ["stackelberg", "ptg", "--format", "csv"],
                                  ["transform", "ptg", "--cost", "2", "--format", "doc"],
                                  ["sim-eq", "ptg", "--cost", "2", "--format", "csv"],
                                  ["helps", "ptg", "--cost", "2", "--format", "doc"],
                                  ["sweep", "ptg", "--class", "gptg", "--cost-min", "1", "--cost-max", "5",
                                   "--steps", "5", "--threads", "3"]])
def test_machine_output_is_reproducible(argv):
    first = run_command(argv)
    RegionBuffer().clear()
    second = run_command(argv)
    assert first[0] == EXIT_OK
    assert first == second
    assert first[1].encode("utf-8") == second[1].encode("utf-8")
