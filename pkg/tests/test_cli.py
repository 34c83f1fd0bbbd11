import csv
import io
import json
import subprocess
import sys

import pytest

from prepatlas.cli import _glue_signed, run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_glue_signed():
    assert _glue_signed(["decide", "--alpha", "-1", "--c", "-2-sqrt2"]) == ["decide", "--alpha=-1", "--c=-2-sqrt2"]
    assert _glue_signed(["render", "--alpha", "1", "-o", "x"]) == ["render", "--alpha", "1", "-o", "x"]


def test_decide_rational(capsys):
    code, out, _ = call(capsys, "decide", "--alpha", "1", "--c", "-3", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["result"]["m"] == 0 and d["result"]["n"] == 2 and d["orbit"] == ["1", "-2"]


def test_decide_algebraic(capsys):
    code, out, _ = call(capsys, "decide", "--alpha", "1", "--c", "-2-sqrt2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and len(d["conjugates"]) == 2


def test_degree_bound_table(capsys):
    code, out, _ = call(capsys, "degree-bound", "--interval", "-2-sqrt2,0")
    assert code == 0 and out.strip().splitlines()[-1] == "n0 = 11"


def test_degree_bound_inapplicable_exit_1(capsys):
    code, _, err = call(capsys, "degree-bound", "--interval", "-2,2")
    assert code == 1 and json.loads(err)["error"] == "CriterionInapplicable"


def test_classify_json_deterministic(capsys):
    code, a, _ = call(capsys, "classify", "--alpha", "1", "--format", "json")
    _, b, _ = call(capsys, "classify", "--alpha", "1", "--format", "json", "--threads", "3")
    assert code == 0 and a == b
    d = json.loads(a)
    assert len(d["accepted_parameters"]) == 6 and d["n0"] == 11


def test_classify_unsupported_alpha(capsys):
    code, _, err = call(capsys, "classify", "--alpha", "1/2")
    assert code == 1 and json.loads(err)["error"] == "UnsupportedAlpha"


def test_usage_errors_exit_2(capsys):
    assert call(capsys, "decide", "--alpha", "1e3", "--c", "0")[0] == 2
    assert call(capsys, "prep-roots", "--alpha", "0", "--m", "2", "--n", "2")[0] == 2
    assert call(capsys, "prep-roots", "--alpha", "0", "--m", "0", "--n", "30")[0] == 2
    assert call(capsys, "nonsense")[0] == 2
    assert call(capsys, "verify-paper", "--only", "99")[0] == 2


def test_render_pgm_file(tmp_path, capsys):
    path = tmp_path / "m.pgm"
    code, _, _ = call(capsys, "render", "--alpha", "0", "--res", "40x30", "--max-iter", "50", "-o", str(path))
    data = path.read_bytes()
    header = b"P5\n40 30\n50\n"          # maxval is min(max_iter, 255)
    assert code == 0 and data.startswith(header) and len(data) == len(header) + 1200


def test_render_csv(capsys):
    code, out, _ = call(capsys, "render", "--alpha", "-1", "--res", "4x3", "--max-iter", "20", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["re", "im", "count"] and len(rows) == 13


def test_prep_roots_csv(capsys):
    code, out, _ = call(capsys, "prep-roots", "--alpha", "0", "--m", "0", "--n", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][:3] == ["re", "im", "residual"] and len(rows) == 5


def test_prep_roots_failure_exit_1(capsys):
    code, out, err = call(capsys, "prep-roots", "--alpha", "1", "--m", "0", "--n", "9", "--format", "json")
    assert code == 1 and json.loads(err)["error"] == "RootFindingError"
    assert json.loads(out)["roots"]


def test_cantor_and_capacity(capsys):
    code, out, _ = call(capsys, "cantor", "--alpha", "5/2", "--depth", "3", "--format", "json", "--localize")
    d = json.loads(out)
    assert code == 0 and d["depth"] == 3 and len(d["intervals"]) == 4
    code, out, _ = call(capsys, "capacity", "--interval", "0,1", "--format", "json")
    assert code == 0 and "1/4" in out


def test_verify_paper_single(capsys):
    code, out, _ = call(capsys, "verify-paper", "--only", "1")
    assert code == 0 and out.startswith("[PASS] 1.")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "prepatlas.cli", "decide", "--alpha", "0", "--c", "-1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "verdict=preperiodic, m=0, n=2" in proc.stdout
