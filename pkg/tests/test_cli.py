import json
import subprocess
import sys


from bettishape.cli import CAP_ENV, run_command
from bettishape.render import diagram_totals

REF = "ring x1..x4; I = (x1*x2^3 + x3^4, x1 + x2 + x4, x2^3)"
XY = "(x^3,x^2*y^2,y^3)"


def test_betti_power_two():
    res = run_command(["betti", REF, "--power", "2"])
    assert res.status == 0
    assert diagram_totals(res.output) == (22, 49, 38, 10)
    assert res.diagnostics == ""


def test_betti_json():
    res = run_command(["betti", XY, "--json"])
    doc = json.loads(res.output)
    assert doc["schema"] == "bettishape/1"
    assert doc["engine"] == "upper-koszul"
    assert doc["table"]["entries"] == [[0, 3, 2], [0, 4, 1], [1, 5, 2]]


def test_betti_engines_and_cap():
    a = json.loads(run_command(["betti", XY, "--engine", "ideal", "--json"]).output)
    assert a["engine"] == "ideal"
    assert a["table"]["entries"] == [[0, 3, 2], [0, 4, 1], [1, 5, 2]]
    low = run_command(["betti", "(x^2, y^2)", "--cap", "4", "--engine", "koszul"])
    assert low.status == 0 and "warning" in low.diagnostics and "warning" not in low.output


def test_heuristic_label_and_stderr():
    res = run_command(["betti", REF, "--prime", "32003", "--json"])
    assert json.loads(res.output)["engine"] == "prime-field-heuristic"
    assert "heuristic" in res.diagnostics


def test_linquot_construct():
    res = run_command(["linquot", XY, "--construct", "--max-power", "5"])
    assert res.status == 0
    assert "t = 2" in res.output and "2 -> 1 -> 0" in res.output
    assert "[x^4, x^3*y, x*y^3, y^4]" in res.output


def test_linquot_json_and_cap():
    doc = json.loads(run_command(["linquot", XY, "--construct", "--json"]).output)
    assert doc["t"] == 2 and doc["lambda_trajectory"] == [2, 1, 0] and doc["admissible"]
    assert run_command(["linquot", XY, "--construct", "--max-power", "1"]).status == 2
    assert run_command(["linquot", REF]).status == 1
    assert "yes" in run_command(["linquot", "(x^2, x*y)"]).output


def test_conjecture_on_reference():
    res = run_command(["conjecture", REF])
    assert res.status == 0
    assert "holds for k=1..2; formula holds k=2..4" in res.output


def test_cwl_c_index_strands_pattern():
    assert run_command(["cwl", "(x1*x2, x3*x4)"]).output == "componentwise linear: no\n"
    assert run_command(["c-index", "(x1*x2, x3*x4)"]).output == "c_I = 1\n"
    res = run_command(["strands", REF, "--power", "2", "--json"])
    doc = json.loads(res.output)
    assert doc["strands"] == [3, 5, 6] and doc["all_full"]
    doc = json.loads(run_command(["pattern", REF, "--from", "1", "--to", "3", "--json"]).output)
    assert [row.get("shift_to_next") for row in doc["powers"]] == [False, True, None]


def test_exit_codes(monkeypatch):
    assert run_command(["cwl", "(x + y^2)"]).status == 1
    assert run_command(["betti"]).status == 1
    assert run_command(["bogus", "(x)"]).status == 1
    assert run_command(["c-index", REF, "--cap", "1"]).status == 2
    monkeypatch.setenv(CAP_ENV, "1")
    assert run_command(["c-index", REF]).status == 2
    monkeypatch.setenv(CAP_ENV, "nope")
    assert run_command(["c-index", REF]).status == 1


def test_error_goes_to_diagnostics():
    res = run_command(["betti", "ring x,y; (x*z)"])
    assert res.output == "" and "unknown variable" in res.diagnostics


def test_ideal_from_file(tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text(XY + "\n")
    assert run_command(["c-index", f"@{path}"]).output == "c_I = 2\n"


def test_batch_append(tmp_path):
    out = tmp_path / "runs.jsonl"
    args = ["batch", "--n", "3", "--max-deg", "3", "--count", "3", "--seed", "5", "--out", str(out)]
    assert run_command(args).status == 0
    assert run_command(args).status == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 6 and lines[:3] == lines[3:]
    rec = json.loads(lines[0])
    assert rec["schema"] == "bettishape/1" and rec["timings"] is None


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bettishape", "cwl", "(x + y^2)"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout == "" and "not homogeneous" in proc.stderr
