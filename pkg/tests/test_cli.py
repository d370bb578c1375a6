import gzip
import json
import subprocess
import sys

import pytest

from tracemine import parse_xes, read_xes
from tracemine.conformance import fitness, token_replay
from tracemine.petri import import_pnml

from .conftest import FIXTURES

L1 = str(FIXTURES / "l1.xes")


def run(*args, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "tracemine", *map(str, args)],
        capture_output=True,
        input=stdin,
    )


def test_stats_json():
    res = run("stats", L1, "--format", "json")
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["start_activities"] == {"a": 5}
    assert rep["end_activities"] == {"d": 5}
    assert rep["num_traces"] == 5


def test_stats_empty_log():
    res = run("stats", FIXTURES / "empty.xes", "--format", "json")
    assert res.returncode == 0
    rep = json.loads(res.stdout)
    assert rep["num_traces"] == 0 and rep["start_activities"] == {}


def test_stats_reads_stdin_gzip():
    res = run("stats", "-", "--format", "json", stdin=gzip.compress((FIXTURES / "l1.xes").read_bytes()))
    assert res.returncode == 0
    assert json.loads(res.stdout)["num_events"] == 15


def test_variants_rows():
    res = run("variants", L1)
    assert res.returncode == 0
    lines = res.stdout.decode().splitlines()
    assert [ln.split("\t")[:2] for ln in lines] == [["a,b,d", "3"], ["a,c,d", "2"]]


def test_variants_count_and_top():
    assert run("variants", L1, "--count-only").stdout == b"2\n"
    top = json.loads(run("variants", L1, "--top", "1", "--format", "json").stdout)
    assert top == [{"sequence": ["a", "b", "d"], "count": 3, "share": 0.6}]


def test_variants_write(tmp_path):
    out = tmp_path / "top.xes.gz"
    res = run("variants", L1, "--top", "1", "--write", out)
    assert res.returncode == 0
    assert len(read_xes(out)) == 3


def test_variants_bad_k():
    assert run("variants", L1, "--top", "0").returncode == 2


def test_discover_dot():
    res = run("discover", L1, "--miner", "alpha", "--out", "dot")
    assert res.returncode == 0
    lines = res.stdout.decode().splitlines()
    assert sum("shape=box" in ln for ln in lines) == 4
    assert sum("circle" in ln for ln in lines) == 4


def test_discover_inductive_pnml(tmp_path, l1):
    out = tmp_path / "model.pnml"
    assert run("discover", L1, "--miner", "inductive", "--out", "pnml", "-o", out).returncode == 0
    apn = import_pnml(out.read_bytes())
    assert fitness(token_replay(l1, apn)) == 1.0


def test_discover_unknown_miner():
    res = run("discover", L1, "--miner", "genetic")
    assert res.returncode == 2
    assert b"alpha-plus" in res.stderr


def test_evaluate_l1_alpha():
    res = run("evaluate", L1, "--miners", "alpha", "--format", "json")
    assert res.returncode == 0
    row = json.loads(res.stdout)["rows"][0]
    assert (row["fitness"], row["precision"], row["simplicity"]) == (1.0, 1.0, 1.0)


def test_evaluate_metric_subset():
    res = run("evaluate", L1, "--metrics", "simplicity,precision", "--format", "json")
    rows = json.loads(res.stdout)["rows"]
    assert [r["miner"] for r in rows] == ["alpha", "alpha-plus", "inductive", "heuristic"]
    assert all(set(r) >= {"simplicity", "precision"} and "fitness" not in r for r in rows)


@pytest.mark.parametrize("miners", ["none", "", "alpha,genetic"])
def test_evaluate_bad_miners(miners):
    assert run("evaluate", L1, "--miners", miners).returncode == 2


def test_evaluate_all_miners_failing(tmp_path):
    bad = tmp_path / "bad.xes"
    bad.write_text(
        '<log xes.version="1.0"><trace><string key="concept:name" value="1"/></trace></log>'
    )
    res = run("evaluate", bad, "--miners", "alpha,heuristic")
    assert res.returncode == 1
    assert b"error" in res.stdout


@pytest.mark.parametrize("cmd", ["stats", "variants", "evaluate"])
def test_input_failures_exit_1(cmd, tmp_path):
    broken = tmp_path / "broken.xes"
    broken.write_text("<log><trace>")
    assert run(cmd, broken).returncode == 1
    assert run(cmd, tmp_path / "missing.xes").returncode == 1


def test_strict_flag(tmp_path):
    dirty = tmp_path / "dirty.xes"
    dirty.write_text(
        '<log xes.version="1.0"><trace><string key="concept:name" value="1"/>'
        '<event><string key="concept:name" value="a"/><date key="time:timestamp" value="soon"/></event>'
        "</trace></log>"
    )
    assert run("stats", dirty).returncode == 0
    res = run("stats", dirty, "--strict")
    assert res.returncode == 1
    assert b"soon" in res.stderr


def test_classifier_option():
    res = run("stats", FIXTURES / "rich.xes", "--classifier", "Activity and lifecycle", "--format", "json")
    acts = json.loads(res.stdout)["activities"]
    assert set(acts) == {"Create Fine+complete", "Create Fine+start", "Send Fine+complete"}
    res = run("stats", FIXTURES / "rich.xes", "--classifier", "org:resource")
    assert res.returncode == 1
    assert b"Traceback" not in res.stderr and b"org:resource" in res.stderr


def test_convert_round_trips(tmp_path):
    gz = tmp_path / "l1.xes.gz"
    assert run("convert", L1, "-o", gz).returncode == 0
    assert gz.read_bytes()[:2] == b"\x1f\x8b"
    back = tmp_path / "l1.xes"
    assert run("convert", gz, "-o", back).returncode == 0
    assert read_xes(back) == read_xes(L1)
    js = run("convert", L1, "--to", "json")
    assert json.loads(js.stdout)["traces"][0]["attributes"]["concept:name"]["value"] == "1"


def test_convert_pnml_to_dot():
    res = run("convert", FIXTURES / "silent.pnml", "--to", "dot")
    assert res.returncode == 0
    assert res.stdout.startswith(b"digraph")
    assert run("convert", FIXTURES / "silent.pnml", "--to", "xes").returncode == 2
    assert run("convert", L1).returncode == 2


def test_no_color_and_utf8():
    res = subprocess.run(
        [sys.executable, "-m", "tracemine", "stats", str(FIXTURES / "rich.xes")],
        capture_output=True,
        env={"NO_COLOR": "1", "PATH": ""},
    )
    assert res.returncode == 0
    assert b"\x1b[" not in res.stdout
    res.stdout.decode("utf-8")


def test_usage_without_command():
    assert run().returncode == 2
