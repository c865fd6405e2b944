import csv
import io
import json
import subprocess
import sys

import pytest

from permgen import cli


def run(*args):
    out = io.StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = cli.main(list(args))
    finally:
        sys.stdout = old
    return code, out.getvalue()


@pytest.mark.parametrize("args,code,needle", [
    (("classify", "6", "6", "+1"), 3, "excluded/six_six"),
    (("classify", "3", "3", "+1"), 0, "d_equals_one"),
    (("classify", "17", "5", "-1"), 3, "excluded/k_odd_requires_plus"),
    (("classify", "17", "5", "odd"), 3, "k_odd_requires_plus"),
    (("classify", "9", "4", "even"), 0, "member"),
])
def test_classify(args, code, needle):
    c, out = run(*args)
    assert c == code and needle in out


def test_classify_json():
    c, out = run("classify", "5", "4", "+1", "--format", "json")
    rec = json.loads(out)
    assert c == 3 and rec["exclusion_reason"] == "power_of_two_top" and not rec["member"]


@pytest.mark.parametrize("args", [("classify", "6", "x", "+1"), ("classify", "6", "3", "2"),
                                  ("sweep", "--n", "2..5"), ("sweep", "--n", "9..5"), ()])
def test_usage_errors(args, capsys):
    assert cli.main(list(args)) == 2


def test_generate():
    c, out = run("generate", "8", "3", "+1")
    assert c == 0
    assert out.splitlines() == ["a=(1,2,3)(4,5,6)", "b=(1,6,7)(2,5,8)", "case=Special_8_3"]
    c, out = run("generate", "6", "4", "-1")
    assert "a=(1,2,3,4)" in out and "b=(1,3,5,6)" in out and "A_kcycle_6_4" in out
    c, out = run("generate", "11", "4", "+1", "--format", "json")
    rec = json.loads(out)
    assert rec["case"] == "SmallK_i" and rec["b"] == "(4,5,6,7)(8,9,10,11)"


def test_generate_excluded(capsys):
    assert cli.main(["generate", "6", "6", "+1"]) == 3
    assert "six_six" in capsys.readouterr().err


def test_verify():
    c, out = run("verify", "7", "6", "+1")
    assert c == 0 and "verdict=Alternating" in out and "group_order=2520" in out
    c, out = run("verify", "9", "4", "+1", "--format", "json")
    rec = json.loads(out)
    assert rec["case"] == "SmallK_ii" and rec["verdict"] == "Alternating"
    assert "(4,6,7,5)" in rec["b"]
    c, out = run("verify", "5", "4", "-1")
    assert c == 0 and "Symmetric" in out and "group_order=120" in out


def test_verify_excluded():
    assert run("verify", "6", "6", "1")[0] == 3


def test_verify_contradiction_exit(monkeypatch):
    from permgen.certify import CriterionContradictsGroundTruth

    def boom(*a, **k):
        raise CriterionContradictsGroundTruth("forced")

    monkeypatch.setattr(cli, "certify", boom)
    assert run("verify", "7", "6", "+1")[0] == 4


def test_verify_mismatch_exit(monkeypatch):
    from permgen.certify import Verdict

    real = cli.certify

    def wrong(*a, **k):
        r = real(*a, **k)
        r.verdict = Verdict.OTHER
        return r

    monkeypatch.setattr(cli, "certify", wrong)
    assert run("verify", "7", "6", "+1")[0] == 1


def test_sweep_json_schema():
    c, out = run("sweep", "--n", "3..8", "--format", "json", "--oracle", "--jobs", "1")
    assert c == 0
    lines = [json.loads(x) for x in out.splitlines()]
    triples, summary = lines[:-1], lines[-1]
    assert summary["kind"] == "summary" and summary["failed"] == 0
    assert summary["verified"] == len(triples)
    keys = [tuple(r["triple"].values()) for r in triples]
    assert keys == sorted(keys)
    for r in triples:
        assert r["schema_version"] == 1 and r["kind"] == "triple"
        assert {"case", "a", "b", "facts", "verdict", "criteria"} <= set(r)
        assert r["oracle_order"] == r["group_order"]
    # (6,6,+1), (4,4,+1), (5,4,+1), ... are skipped, not failed
    assert summary["excluded"] > 0


def test_sweep_parallel_matches_serial():
    serial = run("sweep", "--n", "3..11", "--format", "json", "--jobs", "1")
    parallel = run("sweep", "--n", "3..11", "--format", "json", "--jobs", "2")
    assert serial == parallel


def test_sweep_filters_and_csv():
    c, out = run("sweep", "--n", "10..12", "--k", "4,6", "--sign", "+1", "--format", "csv",
                 "--jobs", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert c == 0 and rows
    assert {r["k"] for r in rows} == {"4", "6"} and {r["sign"] for r in rows} == {"+1"}


def test_sweep_claims_only():
    c, out = run("sweep", "--n", "90..92", "--claims-only", "--format", "json", "--jobs", "1")
    recs = [json.loads(x) for x in out.splitlines()]
    assert c == 0
    small = [r for r in recs[:-1] if r["case"].startswith("SmallK")]
    assert small and all(r["checks"]["fixed_point_bound"] for r in small)


def test_out_file(tmp_path):
    target = tmp_path / "o.jsonl"
    c, out = run("sweep", "--n", "3..5", "--format", "json", "--out", str(target), "--jobs", "1")
    assert c == 0 and out == ""
    assert target.read_text().count("\n") == 7  # 6 triples + summary


def test_jobs_env(monkeypatch):
    monkeypatch.setenv("PERMGEN_JOBS", "3")
    assert cli._default_jobs() == 3
    monkeypatch.setenv("PERMGEN_JOBS", "nope")
    assert cli._default_jobs() >= 1


def test_sign_aliases():
    assert cli.parse_sign("even") == 1 and cli.parse_sign("odd") == -1
    assert cli.parse_signs("both") == (-1, 1)
    assert cli.parse_ks("3..5,8") == (3, 4, 5, 8)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "permgen", "classify", "3", "3", "+1"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "member" in out.stdout
