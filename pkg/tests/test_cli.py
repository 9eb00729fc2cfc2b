import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from heappoly.cli import main
from heappoly.series import EdgePolynomial, TruncatedSeries

HOSTS = {
    "k4.hg": "2 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n",
    "k3.hg": "# triangle\n2 3\n1 2\n2 3\n1 3\n",
    "edge3.hg": "3 3\n1 2 3\n",
    "two.hg": "3 4\n1 2 3\n1 2 4\n",
    "bad.hg": "2 3\n1 2 3\n",
}


@pytest.fixture
def hosts(tmp_path):
    for name, text in HOSTS.items():
        (tmp_path / name).write_text(text)
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_charpoly_k4(hosts, capsys):
    code, out, _ = run(capsys, "charpoly", hosts / "k4.hg", "--codegree", 4)
    assert code == 0
    data = json.loads(out)
    assert data["degree"] == 4
    assert data["coeffs"] == {"0": "1", "2": "-6", "3": "-8", "4": "-3"}


def test_charpoly_all_methods(hosts, capsys):
    code, out, _ = run(capsys, "charpoly", hosts / "edge3.hg", "--codegree", 12, "--method", "all")
    data = json.loads(out)
    assert code == 0 and data["agreement"] is True
    assert data["coeffs"] == {"0": "1", "3": "-3", "6": "3", "9": "-1"}


@pytest.mark.parametrize("method", ["hs", "kocay", "heaps"])
def test_charpoly_each_method(hosts, capsys, method):
    code, out, _ = run(capsys, "charpoly", hosts / "two.hg", "--codegree", 6, "--method", method)
    assert code == 0
    assert json.loads(out)["coeffs"] == {"0": "1", "3": "-12", "6": "48"}


def test_charpoly_edge_vars(hosts, capsys):
    code, out, _ = run(capsys, "charpoly", hosts / "edge3.hg", "--edge-vars", "--codegree", 3)
    data = json.loads(out)
    assert code == 0
    assert data["edge_vars"] == {"3": {"e1^3": "-3"}}
    assert EdgePolynomial.from_json(1, data["edge_vars"]["3"]) == EdgePolynomial(1, {(3,): -3})


def test_jacobi_vertex(hosts, capsys):
    code, out, _ = run(capsys, "jacobi", hosts / "k3.hg", "--vertex", 1, "--order", 4)
    data = json.loads(out)
    assert code == 0 and data["match"] is True
    s = TruncatedSeries.from_json(data)
    assert [s[d] for d in range(5)] == [1, 0, 2, 2, 6]
    assert data["walks"] == [1, 0, 2, 2, 6]


def test_jacobi_edge(hosts, capsys):
    code, out, _ = run(capsys, "jacobi", hosts / "k3.hg", "--edge", 1, "--order", 4)
    s = TruncatedSeries.from_json(json.loads(out))
    assert code == 0
    assert [s[d] for d in range(5)] == [1, 0, 1, 2, 3]


@pytest.mark.parametrize("argv,code,msg", [
    (["jacobi", "k3.hg", "--vertex", "9"], 2, "anchor not in host"),
    (["jacobi", "k3.hg", "--edge", "4"], 2, "anchor not in host"),
    (["jacobi", "edge3.hg", "--vertex", "1"], 2, "rank-2"),
    (["charpoly", "two.hg"], 2, "feasible"),
    (["charpoly", "k4.hg", "--codegree", "-1"], 2, "non-negative"),
    (["charpoly", "bad.hg"], 1, "expected 2 vertices"),
    (["charpoly", "missing.hg"], 1, "missing.hg"),
    (["verify", "no-such-suite"], 1, "unknown suite"),
])
def test_error_exit_codes(hosts, capsys, argv, code, msg):
    argv = [str(hosts / a) if a.endswith(".hg") else a for a in argv]
    got, out, err = run(capsys, *argv)
    assert got == code
    assert msg in err
    assert out == ""


def test_unknown_flag_is_rejected(hosts, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["charpoly", str(hosts / "k4.hg"), "--frobnicate"])
    assert exc.value.code == 1


def test_walks_and_text_output(hosts, capsys):
    code, out, _ = run(capsys, "walks", hosts / "k3.hg", "--order", 4)
    assert code == 0 and json.loads(out)["walks"] == [3, 0, 6, 6, 18]
    code, out, _ = run(capsys, "walks", hosts / "k3.hg", "--edge", 1, "--order", 4, "--text")
    assert out.splitlines() == ["pyramids on e1: 1 0 1 2 3", "closed walks ending on e1: 1 0 2 2 6"]


def test_trace(hosts, capsys):
    code, out, _ = run(capsys, "trace", hosts / "edge3.hg", "--order", 6)
    data = json.loads(out)
    assert code == 0 and data["log_match"] is True
    assert data["traces"] == {"3": "9", "6": "9"}


def test_root_series(hosts, capsys):
    code, out, _ = run(capsys, "root-series", hosts / "edge3.hg", "--order", 9)
    data = json.loads(out)
    assert code == 0 and data["agreement"] is True
    assert TruncatedSeries.from_json(data)[3] == Fraction(-3, 8)
    assert data["coeffs"]["3"] == "-3/8"


@pytest.mark.parametrize("suite", ["k4-ledger", "single-edge", "viennot"])
def test_verify_suites(capsys, suite):
    code, out, _ = run(capsys, "verify", suite)
    assert code == 0
    lines = out.splitlines()
    assert lines and all(line.startswith("PASS") for line in lines)


def _cli(args, threads):
    env = dict(os.environ, HEAPPOLY_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "heappoly.cli", *args], capture_output=True, env=env, check=True).stdout


def test_output_is_byte_stable_across_thread_counts(hosts):
    for args in (["charpoly", str(hosts / "two.hg"), "--codegree", "9", "--method", "all"],
                 ["root-series", str(hosts / "two.hg"), "--order", "9"],
                 ["charpoly", str(hosts / "k4.hg"), "--edge-vars"]):
        outs = {_cli(args, t) for t in (1, 1, 4)}
        assert len(outs) == 1
