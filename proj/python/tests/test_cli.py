import json
import os
import subprocess

import pytest

CLI = os.environ.get("HARMONIA_CLI", "harmonia")


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)


@pytest.fixture
def circle_sample(tmp_path):
    p = tmp_path / "E.json"
    p.write_text(json.dumps({"n": 1, "points": [[1], [[0, 1]]]}))
    return p


def test_parseval_band_limited(tmp_path):
    f = tmp_path / "f.json"
    # samples of 1 + e^{i theta} on four points
    f.write_text(json.dumps({"dim": 1, "N": 4, "values": [2, [1, 1], 0, [1, -1]]}))
    r = run("torus", "parseval", "--in", f)
    assert r.returncode == 0, r.stderr
    header, row = r.stdout.strip().splitlines()
    assert header == "sum_of_squares,energy_integral"
    a, b = map(float, row.split(","))
    assert a == pytest.approx(2.0, abs=1e-12)
    assert b == pytest.approx(a, abs=1e-12)


def test_demo_volterra():
    r = run("demo", "volterra", "--n", 4, "--grid", 1000)
    assert r.returncode == 0, r.stderr
    rows = r.stdout.strip().splitlines()[1:]
    assert len(rows) == 4
    for row in rows:
        n, sigma, inv, rel = map(float, row.split(","))
        assert rel <= 1e-2


def test_exit_codes(tmp_path, circle_sample):
    assert run("seq", "norm", "--in", tmp_path / "missing.json").returncode == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("seq", "norm", "--in", bad).returncode == 2
    assert run("seq", "conj", "--p", 0.5).returncode == 3
    assert run("alg", "volterra", "--n", 0).returncode == 3

    cert = run("hull", "pol", "--sample", circle_sample, "--z", "[3]")
    assert cert.returncode == 0
    c = json.loads(cert.stdout)
    assert c["kind"] == "MonomialWitness"
    c["z"] = [{"re": 0.5, "im": 0.0}]
    forged = tmp_path / "forged.json"
    forged.write_text(json.dumps(c))
    assert run("hull", "check-cert", forged, circle_sample).returncode == 4


def test_check_cert_round_trip(tmp_path, circle_sample):
    for z in ("[3]", "[0.5]", "[[0, -1]]"):
        r = run("hull", "pol", "--sample", circle_sample, "--z", z)
        assert r.returncode == 0, r.stderr
        cert = tmp_path / "cert.json"
        cert.write_text(r.stdout)
        v = run("hull", "check-cert", cert, circle_sample)
        assert v.returncode == 0, v.stderr
        assert v.stdout.startswith("verified")


def test_byte_identical_reruns(circle_sample):
    cmds = [
        ("demo", "volterra", "--n", 3, "--grid", 500),
        ("demo", "pol-torus", "--grid", 5, "--samples", 8),
        ("hull", "eb", "--b", 1.4142135623730951, "--degree", 4),
        ("hull", "pol", "--sample", circle_sample, "--z", "[2]", "--exp"),
    ]
    for cmd in cmds:
        a, b = run(*cmd), run(*cmd)
        assert a.returncode == 0, a.stderr
        assert a.stdout == b.stdout
