from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from schemebounds import __version__, cyclotomic, format_scheme, johnson
from schemebounds.cli import RunConfig, corpus_run, default_manifest, main, make_scheme


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture(scope="module")
def c31_5_text():
    code, out, _ = run(["generate", "cyclotomic", "31", "5"])
    assert code == 0
    return out


def test_generate_emits_scheme_text(c31_5_text):
    lines = [l for l in c31_5_text.splitlines() if not l.startswith("#")]
    assert lines[0] == "31 7"
    assert len(lines) == 32
    assert c31_5_text == format_scheme(cyclotomic(31, 5))


def test_check_t1_equality(c31_5_text):
    code, out, err = run(["check", "t1", "--field", "2"], stdin=c31_5_text)
    assert code == 0
    (rec,) = records(out)
    assert rec["kind"] == "report" and rec["version"] == __version__
    assert rec["theorem"] == "t180707b" and rec["verdict"] == "holds"
    assert rec["computed"]["rkmin"] == 5 and rec["computed"]["equality"] is True
    assert rec["inputs"]["scheme_sha256"] == cyclotomic(31, 5).digest()
    assert "equality" in err


def test_check_theorem_flag_and_file(tmp_path, c31_5_text):
    path = tmp_path / "c.scm"
    path.write_text(c31_5_text)
    code, out, _ = run(["check", "--theorem", "t200707b", "--field", "2", str(path)])
    assert code == 0 and records(out)[0]["verdict"] == "holds"


def test_info_johnson():
    code, out, _ = run(["info"], stdin=format_scheme(johnson(5, 2)))
    assert code == 0
    (rec,) = records(out)
    assert rec["frame"] == 900 and rec["m_min"] == 4 and rec["rational"] is True
    assert rec["valencies"] == [1, 6, 3] and rec["primitive"] is True


def test_validate_and_rkmin():
    code, out, _ = run(["validate", "--gen", "hamming:3:2"])
    assert code == 0 and records(out)[0]["primitive"] is False
    code, out, _ = run(["rkmin", "--field", "11", "--gen", "cyclic:5"])
    rec = records(out)[0]
    assert code == 0 and rec["rkmin"] == 1 and rec["exhaustive"] is True


def test_rkmin_budget_reports_truncation():
    code, out, err = run(["rkmin", "--field", "3", "--gen", "cyclotomic:31:5", "--budget", "7"])
    assert code == 0 and records(out)[0]["exhaustive"] is False
    assert "truncated" in err


@pytest.mark.parametrize("argv", [
    ["check", "t2", "--prime", "3", "--gen", "johnson:5:2"],
    ["check", "ha003", "--prime", "3", "--gen", "johnson:5:2"],
    ["check", "ha003", "--prime", "2", "--gen", "cyclic:5"],
])
def test_guard_cases_are_not_applicable(argv):
    code, out, _ = run(argv)
    assert code == 0 and records(out)[0]["verdict"] == "not-applicable"


def test_t110707c_over_Q():
    code, out, _ = run(["check", "t110707c", "--field", "Q", "--trials", "20", "--gen", "hamming:3:2"])
    assert code == 0 and records(out)[0]["inputs"]["field"] == "Q"


@pytest.mark.parametrize("argv,stdin", [
    (["check", "t1", "--field", "2"], "2 2\n0 1\n0 0\n"),            # invalid scheme
    (["check", "t1"], format_scheme(johnson(5, 2))),                  # missing field
    (["check", "t2", "--gen", "johnson:5:2"], ""),                    # missing prime
    (["check", "--gen", "johnson:5:2"], ""),                          # missing theorem
    (["check", "t9", "--field", "2"], ""),                            # unknown theorem
    (["rkmin", "--field", "6", "--gen", "cyclic:5"], ""),             # not a prime power
    (["info", "--gen", "nosuch:3"], ""),
    (["info", "--gen", "cyclotomic:31:4"], ""),
    (["frobnicate"], ""),
    ([], ""),
])
def test_usage_and_validation_errors_exit_2(argv, stdin):
    code, _, err = run(argv, stdin)
    assert code == 2
    assert err


def test_violated_exits_1(monkeypatch, tmp_path):
    from schemebounds import bounds
    from schemebounds.gf.search import RkMinReport

    monkeypatch.setattr(bounds, "rkmin_search",
                        lambda sch, field, budget=None, threads=1:
                        RkMinReport(field, 2, (0, 1, 0, 0, 0, 0, 0), 1, True, 1))
    code, out, err = run(["check", "t1", "--field", "2", "--gen", "cyclotomic:31:5",
                          "--witness-dir", str(tmp_path)])
    assert code == 1
    assert records(out)[0]["verdict"] == "violated"
    assert list(tmp_path.glob("violation-t180707b-*.json"))


def test_identical_runs_are_byte_identical():
    argv = ["check", "t110707c", "--field", "4", "--seed", "7", "--trials", "30",
            "--gen", "johnson:5:2"]
    assert run(argv)[1] == run(argv)[1]
    argv = ["info", "--gen", "cyclic:7"]
    assert run(argv)[1] == run(argv)[1]


def test_output_file(tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = run(["-o", str(path), "info", "--gen", "complete:4"])
    assert code == 0 and out == ""
    assert records(path.read_text())[0]["frame"] == 16


def test_make_scheme_specs():
    assert make_scheme("cyclotomic:31:5").s == 7
    assert make_scheme("symmetric:3").n == 6
    with pytest.raises(ValueError):
        make_scheme("johnson:5")


def test_run_config_invariants():
    with pytest.raises(ValueError):
        RunConfig("check", scheme_path="a", generator="cyclic:5")
    with pytest.raises(ValueError):
        RunConfig("rkmin", budget=0)
    with pytest.raises(ValueError):
        RunConfig("rkmin", threads=0)


# ---- corpus runs -------------------------------------------------------------------


def test_default_corpus_all_hold():
    code, out, _ = run(["corpus", "--default"])
    assert code == 0
    recs = records(out)
    summary = recs[-1]
    assert summary["kind"] == "summary"
    assert summary["entries"] == len(default_manifest())
    assert summary["verdicts"]["violated"] == 0 and summary["verdicts"]["error"] == 0
    assert summary["verdicts"]["holds"] > 0
    reports = [r for r in recs if r["kind"] == "report"]
    assert all("scheme_sha256" in r["inputs"] and r["version"] == __version__ for r in reports)


def test_manifest_with_invalid_scheme_continues(tmp_path):
    bad = tmp_path / "bad.scm"
    bad.write_text("2 2\n0 1\n0 0\n")
    manifest = tmp_path / "m.jsonl"
    manifest.write_text(
        json.dumps({"source": str(bad), "checks": [{"theorem": "t1", "field": "2"}]}) + "\n"
        + json.dumps({"source": "cyclic:5", "checks": [{"theorem": "t1", "field": "11"},
                                                       {"theorem": "t1"}]}) + "\n")
    code, out, _ = run(["corpus", str(manifest)])
    assert code == 0
    recs = records(out)
    assert recs[0]["kind"] == "error" and "NotTransposeClosed" in recs[0]["error"]
    assert recs[1]["kind"] == "report" and recs[1]["verdict"] == "holds"
    assert recs[2]["kind"] == "error"
    assert recs[-1]["verdicts"] == {"error": 2, "holds": 1, "not-applicable": 0, "violated": 0}


def test_empty_manifest(tmp_path):
    manifest = tmp_path / "empty.jsonl"
    manifest.write_text("# nothing here\n\n")
    code, out, _ = run(["corpus", str(manifest)])
    assert code == 0
    (summary,) = records(out)
    assert summary["entries"] == 0
    assert sum(summary["verdicts"].values()) == 0


def test_malformed_manifest(tmp_path):
    manifest = tmp_path / "m.jsonl"
    manifest.write_text("{not json\n")
    assert run(["corpus", str(manifest)])[0] == 2
    assert run(["corpus"])[0] == 2


def test_corpus_run_api():
    out, err = io.StringIO(), io.StringIO()
    summary = corpus_run([], RunConfig("corpus"), out, err)
    assert summary["verdicts"]["holds"] == 0


def test_console_entry_point(c31_5_text):
    proc = subprocess.run([sys.executable, "-m", "schemebounds", "check", "t1", "--field", "2"],
                          input=c31_5_text, capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["computed"]["rkmin"] == 5
    assert "holds" in proc.stderr
