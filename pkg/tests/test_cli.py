import json
import subprocess
import sys

import pytest

from nullhom.arrowcat import homotopy_cokernel
from nullhom.cli import Result, emit_report, run
from nullhom.instance import parse_instance
from nullhom.report import Report
from nullhom.serialize import encode

INSTANCE = {
    "base": {"mat": {"prime": 2}},
    "morphisms": {"one": {"p": 2, "rows": 1, "cols": 1, "e": [[1]]}},
    "objects": {"A": {"top": 1, "bottom": 1, "a": "one"}},
    "graphs": {"G": {"A1": 2, "A0": 1,
                     "d": {"p": 2, "rows": 1, "cols": 2, "e": [[1, 0]]},
                     "c": {"p": 2, "rows": 1, "cols": 2, "e": [[1, 1]]},
                     "i": {"p": 2, "rows": 2, "cols": 1, "e": [[1], [0]]}}},
    "squares": {"m1": {"source": "A", "target": "A", "f": "one", "f0": "one"}},
    "nullhomotopies": {"z": {"on": "m1", "payload": "one"}},
}

FINSET = {
    "base": "finset",
    "objects": {"X": {"top": 2, "bottom": 1, "a": {"dom": 2, "cod": 1, "tab": [0, 0]}}},
    "squares": {"id": {"source": "X", "target": "X",
                       "f": {"dom": 2, "cod": 2, "tab": [0, 1]}, "f0": {"dom": 1, "cod": 1, "tab": [0]}}},
}


@pytest.fixture
def sq(tmp_path):
    path = tmp_path / "sq.json"
    path.write_text(json.dumps(INSTANCE))
    return str(path)


@pytest.fixture
def fs(tmp_path):
    path = tmp_path / "fs.json"
    path.write_text(json.dumps(FINSET))
    return str(path)


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_emit_report_envelope_and_text():
    meta = {"tool": "nullhom", "version": "0"}
    assert json.loads(emit_report([], "json", meta)) == {**meta, "checks": []}
    one = [Result(Report("x", True, 3))]
    assert emit_report(one, "text", meta) == b"PASS x (3 cases)\n"
    assert emit_report(one, "json", meta) == emit_report(one, "json", meta)


def test_validate(capsys, sq):
    code, out, _ = call(capsys, "validate", "--input", sq)
    doc = json.loads(out)
    assert code == 0 and doc["tool"] == "nullhom"
    assert doc["checks"][0]["output"]["counts"]["squares"] == 1


def test_cokernel_matches_library(capsys, sq):
    code, out, _ = call(capsys, "cokernel", "--input", sq, "--name", "m1")
    inst = parse_instance(open(sq, "rb").read())
    expected = encode(homotopy_cokernel(inst.squares["m1"]))
    assert code == 0
    assert json.loads(out)["checks"][0]["output"] == json.loads(json.dumps(expected))


def test_check_universal_and_text_format(capsys, fs):
    code, out, _ = call(capsys, "check-universal", "--input", fs, "--name", "id",
                        "--probe-max-size", "1", "--format", "text")
    assert code == 0 and out.startswith("PASS cokernel-universal (")


def test_dk_iso_golden(capsys, sq):
    code, out, _ = call(capsys, "dk-iso", "--input", sq, "--name", "G")
    iso = json.loads(out)["checks"][0]["output"]
    assert code == 0 and iso["delta"]["e"] == [[0, 1]]
    assert iso["forward"]["e"] == iso["backward"]["e"] == [[1, 0], [0, 1]]


def test_normalize_and_denormalize_are_inverse(capsys, sq):
    _, out, _ = call(capsys, "denormalize", "--input", sq, "--name", "A")
    graph = json.loads(out)["checks"][0]["output"]
    assert graph == INSTANCE["graphs"]["G"]
    _, out, _ = call(capsys, "normalize", "--input", sq, "--name", "G")
    assert json.loads(out)["checks"][0]["output"]["arrow"]["e"] == [[1]]


def test_two_cells(capsys, sq):
    code, out, _ = call(capsys, "two-cells", "--input", sq, "--name", "m1")
    details = json.loads(out)["checks"][0]["details"]
    assert code == 0 and details["diagonals"] == details["two_cells"] == 1


def test_extend_on_finset(capsys, fs):
    code, out, _ = call(capsys, "extend", "--input", fs, "--name", "X", "--probe-max-size", "1",
                        "--format", "text")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "PASS extend (1 cases)" and len(lines) == 6


def test_output_file(capsys, sq, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = call(capsys, "validate", "--input", sq, "--output", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["checks"]


@pytest.mark.parametrize("argv, fragment", [
    (["cokernel", "--name", "m1"], "needs --input"),
    (["cokernel", "--input", "SQ"], "needs --name"),
    (["cokernel", "--input", "SQ", "--name", "nope"], "no entry named"),
    (["cokernel", "--input", "SQ", "--name", "G"], "not a square"),
    (["normalize", "--input", "SQ", "--name", "m1"], "not a reflexive graph"),
    (["validate", "--input", "/no/such/file"], "cannot read"),
])
def test_usage_errors_exit_2(capsys, sq, argv, fragment):
    argv = [sq if a == "SQ" else a for a in argv]
    code, out, err = call(capsys, *argv)
    assert code == 2 and fragment in err
    assert json.loads(out)["checks"][0]["status"] == "error"


def test_bad_instance_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"base": {"mat": {"prime": 2}}, "morphisms": {"m": {"p": 2, "rows": 1, "cols": 1, "e": [[3]]}}}')
    code, _, err = call(capsys, "validate", "--input", str(path))
    assert code == 2 and "schema violation" in err


def test_unknown_flag_prints_usage_and_exits_2():
    proc = subprocess.run([sys.executable, "-m", "nullhom", "suite", "--bogus"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert proc.stderr.startswith("usage:") and proc.stdout == ""


def test_bad_prime_flag_exits_2(capsys):
    code, _, err = call(capsys, "suite", "--prime", "4")
    assert code == 2 and "not prime" in err


def test_graph_without_common_section_is_rejected(capsys, tmp_path):
    doc = dict(INSTANCE)
    doc["graphs"] = {"H": {"A1": 2, "A0": 1,
                           "d": {"p": 2, "rows": 1, "cols": 2, "e": [[1, 0]]},
                           "c": {"p": 2, "rows": 1, "cols": 2, "e": [[0, 1]]},
                           "i": {"p": 2, "rows": 2, "cols": 1, "e": [[1], [0]]}}}
    path = tmp_path / "h.json"
    path.write_text(json.dumps(doc))
    code, _, err = call(capsys, "validate", "--input", str(path))
    assert code == 2 and "common section" in err


def test_failing_check_exits_1(capsys, monkeypatch):
    from nullhom import cli

    failing = Report("broken", False, 1, {"reason": "planted"})
    monkeypatch.setattr(cli, "CRITERIA", (("broken", lambda cfg: failing),))
    monkeypatch.setattr(cli, "randomized_spot_checks", lambda cfg: Report("spot", True, 0))
    code, out, _ = call(capsys, "suite", "--format", "text")
    assert code == 1
    assert out.splitlines() == ["FAIL broken (1 cases)", '  witness: {"reason": "planted"}',
                                "PASS spot (0 cases)"]


def test_report_is_deterministic(capsys, sq):
    first = call(capsys, "two-cells", "--input", sq, "--name", "m1")
    second = call(capsys, "two-cells", "--input", sq, "--name", "m1")
    assert first == second
