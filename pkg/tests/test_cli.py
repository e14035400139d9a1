"""Command line driver: exit codes, report layout and determinism."""

from __future__ import annotations

import io
import json
import os
import subprocess
import sys

import pytest

from zhecke.cli import Report, emit, run

INSTANCE_KEYS = {"type", "command", "instance", "checks", "summary", "elapsed_ms"}


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def docs(text):
    return [json.loads(line) for line in text.splitlines()]


def check_schema(doc):
    """Structural validation of one NDJSON document."""
    assert doc["type"] in ("instance", "summary")
    assert isinstance(doc["elapsed_ms"], int)
    assert set(doc["summary"]) == {"pass", "fail", "skip"}
    if doc["type"] == "summary":
        assert isinstance(doc["instances"], int)
        return
    assert INSTANCE_KEYS <= set(doc)
    assert isinstance(doc["instance"], dict)
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for c in doc["checks"]:
        assert isinstance(c["name"], str)
        counts[c["status"]] += 1
        if c["status"] != "pass":
            assert c["witness"]
    assert counts == doc["summary"]


def test_enumerate_spct_instance():
    code, out, _ = call("enumerate", "--family", "spct", "--shape", "2,2,1", "--sigma", "132")
    assert code == 0
    first, summary = docs(out)
    assert first["count"] == 3 and len(first["tableaux"]) == 3
    assert summary["type"] == "summary" and summary["instances"] == 1
    for d in docs(out):
        check_schema(d)


def test_cover_two_block_class():
    code, out, _ = call("cover", "--shape", "1,4,4", "--sigma", "123", "--all-classes")
    assert code == 0
    found = [d for d in docs(out) if d["type"] == "instance"]
    assert len(found) == 4
    assert any(d["certificate"]["alpha_E"] == "1|1,2,1,1,2,1" for d in found)
    for d in docs(out):
        check_schema(d)


def test_cover_class_index():
    code, out, _ = call("cover", "--shape", "2,2,1", "--sigma", "132", "--class-index", "2")
    assert code == 0
    (d, _s) = docs(out)
    assert d["instance"]["class_id"] == "132.21"
    code, _, err = call("cover", "--shape", "2,2,1", "--sigma", "132", "--class-index", "3")
    assert code == 2 and err.startswith("error:")


def test_module_and_ch():
    code, out, _ = call("module", "--kind", "X", "--shape", "2,1,2", "--dump")
    assert code == 0
    d = docs(out)[0]
    assert d["dim"] == 3 and d["module"]["dim"] == 3
    code, out, _ = call("ch", "--kind", "F", "--shape", "2,1")
    assert code == 0
    d = docs(out)[0]
    assert d["ch"]["terms"] == [{"comp": "2,1", "coeff": 1}]


def test_incompatible_pair_is_skip_not_fail():
    code, out, _ = call("module", "--kind", "S", "--shape", "1,2", "--sigma", "21")
    assert code == 0
    d = docs(out)[0]
    assert d["dim"] == 0 and d["summary"]["skip"] == 1


@pytest.mark.parametrize("argv", [
    ("enumerate", "--family", "spct", "--shape", "2,x,1", "--sigma", "132"),
    ("enumerate", "--family", "spct", "--shape", "2,2,1", "--sigma", "122"),
    ("enumerate", "--family", "nope", "--shape", "2,1"),
    ("module", "--kind", "S", "--shape", "2,1"),
    ("verify", "--suite", "phi", "--max-n", "7"),
    ("verify", "--suite", "phi", "--max-n", "8", "--extended"),
    ("verify", "--suite", "phi", "--max-n", "0"),
    ("verify", "--suite", "nope"),
    ("bogus",),
])
def test_usage_errors_exit_2(argv):
    code, out, _ = call(*argv)
    assert code == 2
    assert out == ""


def test_verify_exit_codes():
    code, out, _ = call("verify", "--suite", "covers", "--max-n", "4")
    assert code == 0
    for d in docs(out):
        check_schema(d)
    # the literal adjacent-column kernel description fails at (2,1,2)
    code, out, _ = call("verify", "--suite", "gamma", "--max-n", "5")
    assert code == 1
    fails = [d for d in docs(out) if d["type"] == "instance" and d["summary"]["fail"]]
    assert [d["instance"]["shape"] for d in fails] == ["2,1,2"]
    assert {c["name"] for c in fails[0]["checks"] if c["status"] == "fail"} == {"kernel_adjacent"}


def test_verify_single_shape():
    code, out, _ = call("verify", "--suite", "upsilon", "--max-n", "5", "--shape", "1,2,2")
    assert code == 0
    inst = [d for d in docs(out) if d["type"] == "instance"]
    assert inst and all(d["instance"]["shape"] == "1,2,2" for d in inst)


def test_deterministic_and_sorted():
    a = call("verify", "--suite", "relations", "--max-n", "4")[1]
    b = call("verify", "--suite", "relations", "--max-n", "4")[1]
    assert a == b
    ns = [d["instance"]["n"] for d in docs(a) if d["type"] == "instance"]
    assert ns == sorted(ns)


def test_jobs_do_not_change_output():
    serial = call("verify", "--suite", "eta", "--max-n", "4", "--jobs", "1")[1]
    parallel = call("verify", "--suite", "eta", "--max-n", "4", "--jobs", "3")[1]
    assert serial == parallel


def test_table_and_json_agree():
    argv = ("verify", "--suite", "phi", "--max-n", "4")
    js = docs(call(*argv)[1])[-1]["summary"]
    table = call(*argv, "--format", "table")[1].splitlines()
    assert table[0].split()[:4] == ["instance", "pass", "fail", "skip"]
    assert table[-1] == (f"total: {docs(call(*argv)[1])[-1]['instances']} instances, "
                         f"{js['pass']} pass, {js['fail']} fail, {js['skip']} skip")


def test_timing_flag():
    _, out, _ = call("enumerate", "--family", "srt", "--shape", "2,1")
    assert all(d["elapsed_ms"] == 0 for d in docs(out))
    code, out, _ = call("enumerate", "--family", "srt", "--shape", "2,1", "--timing")
    assert code == 0


def test_empty_report():
    out = io.StringIO()
    summ = emit([Report("x", {})], "json", out, "x")
    assert summ["summary"] == {"pass": 0, "fail": 0, "skip": 0}
    for d in docs(out.getvalue()):
        check_schema(d)


def test_console_script_runs():
    env = dict(os.environ, ZH_JOBS="2")
    res = subprocess.run([sys.executable, "-m", "zhecke.cli", "enumerate", "--family", "sit",
                          "--shape", "2,1", "--format", "table"],
                         capture_output=True, text=True, env=env)
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1].startswith("total: 1 instances")
