import json
import os
import subprocess

import pytest

BIN = os.environ.get("HDFLOW_BIN")

pytestmark = pytest.mark.skipif(not BIN, reason="HDFLOW_BIN not set")


def run(*args, env=None):
    merged = dict(os.environ)
    if env:
        merged.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=merged)


def test_selfmap_examples():
    r = run("selfmap", "--preset", "paper-f81", "--lambda", "6", "--z", "27")
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"phi": "6"}

    r = run("selfmap", "--p", "3", "--f", "1", "--modulus", "0,1", "--lambda", "2", "--z", "2")
    assert r.returncode == 0
    assert json.loads(r.stdout) == {"phi": "2"}

    r = run("selfmap", "--preset", "paper-f81", "--lambda", "6", "--z", "inf")
    assert json.loads(r.stdout) == {"phi": "inf"}


def test_orbit_examples():
    r = run("orbit", "--preset", "paper-f81", "--lambda", "11", "--start", "21")
    assert json.loads(r.stdout) == {
        "tail": [],
        "cycle": ["21", "64", "48", "53", "24", "37", "78", "77"],
    }
    r = run("orbit", "--preset", "paper-f81", "--lambda", "11", "--start", "47")
    assert json.loads(r.stdout) == {"tail": ["47"], "cycle": ["15", "31"]}


def test_graph_output():
    r = run("graph", "--preset", "paper-f81", "--lambda", "6", "--format", "json")
    doc = json.loads(r.stdout)
    assert {"period": 1, "nodes": ["6"]} in doc["cycles"]
    assert {"period": 1, "nodes": ["65"]} in doc["cycles"]

    r = run("graph", "--preset", "paper-f81", "--lambda", "6", "--format", "dot")
    assert '"27" -> "6";' in r.stdout


def test_graph_jobs_deterministic():
    runs = [
        run("graph", "--preset", "paper-f81", "--lambda", "11", "--jobs", str(j)).stdout
        for j in (1, 4)
    ]
    assert runs[0] == runs[1]


def test_graph_out_file(tmp_path):
    out = tmp_path / "g.json"
    r = run("graph", "--preset", "paper-f81", "--lambda", "6", "--out", str(out))
    assert r.returncode == 0
    assert r.stdout == ""
    assert json.loads(out.read_text())["edges"]["27"] == "6"


def test_node_bound_env():
    r = run("graph", "--preset", "paper-f81", "--lambda", "6", env={"HDFLOW_MAX_NODES": "10"})
    assert r.returncode == 2
    assert json.loads(r.stdout)["code"] == "FieldTooLarge"


def test_ec():
    r = run("ec", "mulp", "--p", "3", "--f", "2", "--lambda", "2", "--a", "5")
    doc = json.loads(r.stdout)
    assert doc["agree"] is True and doc["det"] == doc["group_law"] == "5"

    r = run("ec", "order", "--p", "3", "--f", "2", "--lambda", "2", "--x", "2", "--y", "0")
    assert json.loads(r.stdout)["order"] == 2

    r = run("ec", "check-fact", "--p", "3", "--f", "2", "--lambda", "2", "--x", "3", "--y", "5")
    doc = json.loads(r.stdout)
    assert doc["ok"] is True and doc["residual"] == "0"

    r = run("ec", "order", "--p", "3", "--f", "2", "--lambda", "2", "--x", "5", "--y", "1")
    assert r.returncode == 2
    assert json.loads(r.stdout)["code"] == "PointNotOnCurve"


def test_conj_exit_codes():
    r = run("conj", "var", "--p", "3", "--mode", "symbolic")
    assert r.returncode == 0
    assert json.loads(r.stdout)["verdict"] == "holds"

    r = run("conj", "commute", "--preset", "paper-f81", "--lambda", "6")
    assert r.returncode == 0

    r = run("conj", "symmetry", "--preset", "paper-f81", "--lambda", "6", "--a", "2")
    assert r.returncode == 3
    assert json.loads(r.stdout)["verdict"] == "indeterminate"

    r = run("conj", "var", "--p", "4", "--mode", "symbolic")
    assert r.returncode == 2

    r = run("conj", "var", "--p", "47", "--mode", "random", "--trials", "20", "--seed", "1")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["verdict"] == "holds"
    assert doc["stats"]["failure_bound"] == "4^-20"


def test_seeded_determinism():
    a = run("conj", "var", "--p", "11", "--mode", "random", "--trials", "10", "--seed", "5")
    b = run("conj", "var", "--p", "11", "--mode", "random", "--trials", "10", "--seed", "5")
    assert a.stdout == b.stdout
