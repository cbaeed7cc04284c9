import json

import pytest

from misere.cli import main


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as e:
        code = e.code
    out = capsys.readouterr()
    return code, out.out


def test_outcome(capsys):
    code, out = run(capsys, "outcome", "*+*+1")
    assert code == 0 and out.strip() == "P"


def test_tp(capsys):
    code, out = run(capsys, "tp", "0")
    assert code == 0 and out.strip() == "ltp=1 ntp=0 rtp=1"


def test_member(capsys):
    code, out = run(capsys, "member", "--universe", "b", "{|{{{1|{0|1}}|}|}}")
    assert code == 0 and out.strip() == "false"


def test_parse_error_exits_2(capsys):
    code, _ = run(capsys, "outcome", "{0|")
    assert code == 2


def test_cmp_exit_codes(capsys):
    code, out = run(capsys, "cmp", "1+-1", "0")
    assert code == 0 and "equivalent=true" in out
    code, out = run(capsys, "cmp", "*+*", "0")
    assert code == 1


def test_pfree(capsys):
    code, out = run(capsys, "pfree", "{#,0|}")
    assert code == 0 and "strictly_p_free=true" in out
    code, out = run(capsys, "pfree", "--modulo-b", "--max-birthday", "2", "*")
    assert "modulo_b=unknown" in out


def test_strong(capsys):
    code, out = run(capsys, "strong", "*")
    assert code == 0
    assert "left_b_strong=false" in out and "right_b_strong=false" in out


def test_invertible(capsys):
    code, out = run(capsys, "invertible", "1")
    assert code == 0 and out.splitlines()[0] == "true"


def test_enumerate_text(capsys):
    code, out = run(capsys, "enumerate", "--max-birthday", "1", "--max-width", "1")
    assert code == 0
    assert "# 4 forms" in out
    assert any(line.startswith("*\t") for line in out.splitlines())


def test_structured_output(capsys):
    code, out = run(capsys, "outcome", "--format", "structured", "*")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "outcome"
    assert doc["result"]["outcome"] == "P"
    assert "elapsed_seconds" in doc and "config" in doc


def test_out_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out = run(capsys, "tp", "--format", "structured", "--out", str(path), "*+*")
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["result"] == {"form": "{*|*}", "ltp": 3, "ntp": 0, "rtp": 3}


def test_verify_pass_and_fail(capsys):
    code, out = run(
        capsys, "verify", "pfree_closure", "--max-birthday", "2", "--max-width", "2"
    )
    assert code == 0 and "pfree_closure: PASS" in out
    code, out = run(
        capsys,
        "verify",
        "invertibility",
        "--max-birthday", "2",
        "--max-width", "2",
        "--inject", "*",
    )
    assert code == 1 and "FAIL" in out


def test_verify_structured(capsys):
    code, out = run(
        capsys,
        "verify", "b_lemmas",
        "--max-birthday", "2",
        "--max-width", "2",
        "--format", "structured",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["passed"] is True
    rep = doc["result"]["reports"][0]
    assert rep["suite"] == "b_lemmas" and rep["population"]["max_birthday"] == 2


def test_structured_result_stable_across_runs_and_jobs(capsys):
    args = ["verify", "table_11_14", "--max-birthday", "2", "--max-width", "2",
            "--format", "structured"]
    _, out1 = run(capsys, *args, "--jobs", "1")
    _, out2 = run(capsys, *args, "--jobs", "2")
    r1 = json.loads(out1)["result"]
    r2 = json.loads(out2)["result"]
    assert r1["reports"] == r2["reports"]
    assert r1["passed"] == r2["passed"]


def test_unknown_command_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
