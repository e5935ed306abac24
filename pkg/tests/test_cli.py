import json

import pytest

from toric_split.cli import main
from toric_split.decomposition import MainReport
from toric_split.graphs import GraphReport


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_complex_betti(capsys, data_dir):
    code, out = run(capsys, "complex", "betti", "--in", data_dir / "tri.json", "--field", "q")
    assert code == 0
    assert out.out.splitlines()[-1].split() == ["b~", "0", "0", "1"]
    code, out = run(capsys, "complex", "betti", "--in", data_dir / "empty.json", "--field", "f3")
    assert code == 0 and out.out.splitlines()[-1].split() == ["b~", "1"]
    code, out = run(capsys, "complex", "betti", "--in", data_dir / "claw-K.json", "--field", "f5", "--json", "-")
    assert code == 0
    payload = json.loads(out.out[out.out.index("{"):])
    assert payload["reduced_betti"] == {"-1": 0, "0": 0, "1": 0, "2": 1}


def test_verify(capsys, data_dir, tmp_path):
    k, lam = data_dir / "tri.json", data_dir / "rp2.json"
    code, out = run(capsys, "verify", "--k", k, "--lambda", lam, "--p", 3)
    assert code == 0 and "verdict: PASS" in out.out
    report = tmp_path / "r.json"
    code, out = run(capsys, "verify", "--k", k, "--lambda", lam, "--p", 2, "--json", report)
    assert code == 0 and "verdict: EXPECTED-FAIL" in out.out
    assert "quotient   1  1  1" in out.out and "rhs        1  0  0" in out.out
    parsed = MainReport.from_json(json.loads(report.read_text()))
    assert parsed.verdict == "EXPECTED-FAIL"
    code, out = run(capsys, "verify", "--k", k, "--lambda", data_dir / "id3.json", "--p", 0)
    assert code == 0 and "verdict: PASS" in out.out


def test_input_errors(capsys, data_dir, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(capsys, "complex", "betti", "--in", bad)
    assert code == 2 and "not valid JSON" in out.err
    code, _ = run(capsys, "verify", "--k", data_dir / "tri.json", "--lambda", tmp_path / "missing.json")
    assert code == 2
    code, _ = run(capsys, "verify", "--k", data_dir / "tri.json", "--lambda", data_dir / "rp2.json", "--p", 4)
    assert code == 2
    code, _ = run(capsys, "graph", "verify", "--in", data_dir / "disconnected.json")
    assert code == 2
    code, _ = run(capsys, "nonsense")
    assert code == 2


def test_capacity_exit(capsys, data_dir, monkeypatch):
    monkeypatch.setenv("TORIC_SPLIT_MAX_CELLS", "10")
    code, out = run(capsys, "verify", "--k", data_dir / "tri.json", "--lambda", data_dir / "rp2.json", "--p", 3)
    assert code == 3 and "capacity" in out.err


def test_graph_commands(capsys, data_dir, tmp_path):
    code, out = run(capsys, "graph", "a-numbers", "--in", data_dir / "p4.json")
    assert code == 0 and out.out.splitlines()[-1].split() == ["a_i", "1", "3", "2"]
    code, out = run(capsys, "graph", "tubes", "--in", data_dir / "p4.json")
    assert code == 0 and out.out.startswith("9 tubes, tubing complex f-vector (9, 21, 14)")
    report = tmp_path / "g.json"
    code, out = run(capsys, "graph", "verify", "--in", data_dir / "p4.json", "--p", 5, "--json", report)
    assert code == 0 and "verdict: PASS" in out.out
    assert GraphReport.from_json(json.loads(report.read_text())).verdict == "PASS"
    code, out = run(capsys, "graph", "compare", "--in", data_dir / "p4.json", "--in2", data_dir / "claw.json", "--p", 3)
    assert code == 0 and out.out.rstrip().endswith("EQUIVALENT")


@pytest.mark.parametrize("scenario,needles", [
    ("rp2", ["verdict: PASS", "verdict: EXPECTED-FAIL"]),
    ("p4-vs-claw", ["a_i(P_4) = [1, 3, 2], a_i(K_1,3) = [1, 3, 2]: EQUIVALENT"]),
    ("bbcg", ["F2: PASS", "Q: PASS"]),
])
def test_demos(capsys, scenario, needles):
    code, out = run(capsys, "demo", scenario)
    assert code == 0
    for n in needles:
        assert n in out.out


def test_check_is_seeded(capsys):
    code, first = run(capsys, "check", "--seed", 7, "--samples", 10, "--max-m", 4)
    assert code == 0 and "0 disagreements" in first.out
    _, second = run(capsys, "check", "--seed", 7, "--samples", 10, "--max-m", 4)
    assert first.out.split("(")[0] == second.out.split("(")[0]
