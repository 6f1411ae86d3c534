import json

import pytest

from combzero.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_zeros_json(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "hermite", "--rho", "pow2", "--gamma", "1,1,1", "--n", "20")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "combzero/1"
    assert doc["reports"][0]["real_zero_count"] == 20


def test_zeros_laguerre_values(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "laguerre:0", "--rho", "ones", "--gamma", "1,4", "--n", "2")
    z = json.loads(out)["reports"][0]["zeros"]
    assert code == 0 and z == pytest.approx([-(2**0.5), 2**0.5], abs=1e-10)


def test_zeros_failure_exit(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "hermite", "--gamma", "1,0,60", "--n", "2")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["zeros", "--gamma", "1,0", "--n", "3"],
        ["zeros", "--gamma", "2,1", "--n", "3"],
        ["zeros", "--family", "legendre", "--n", "3"],
        ["zeros", "--n", "3:1"],
        ["zeros", "--rho", "geometric:x", "--n", "3"],
        ["nonsense"],
        ["threshold", "--family", "hermite", "--gamma", "1,1", "--nu", "0.5"],
    ],
)
def test_bad_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_threshold_values(capsys):
    assert json.loads(run(capsys, "threshold", "--family", "hermite", "--gamma", "1,1,1,1")[1])["n0"] == 16
    assert json.loads(run(capsys, "threshold", "--family", "prob-hermite", "--gamma", "1,0,0.1")[1])["n0"] == 11
    out = run(capsys, "threshold", "--family", "jacobi", "--rho", "factorial", "--gamma", "1,0,1")[1]
    assert json.loads(out)["n0"] == 37


def test_construct_rho_csv(capsys):
    code, out, _ = run(capsys, "construct-rho", "--family", "laguerre:0.5", "--N", "40", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("n,theta,tau") and len(lines) == 42


def test_counterexamples(capsys):
    code, out, _ = run(capsys, "counterexample", "laguerre_interlacing")
    assert code == 0 and json.loads(out)["interlaces"] is False
    code, out, _ = run(capsys, "counterexample", "nonorthogonal_xn", "--gamma2", "1")
    assert code == 0 and all(r["nonreal"] == 2 for r in json.loads(out)["rows"])
    code, out, _ = run(capsys, "counterexample", "nonorthogonal_xn", "--gamma2", "-1")
    assert code == 0 and all(r["nonreal"] == 0 for r in json.loads(out)["rows"])


def test_asymptotics_decreasing(capsys):
    code, out, _ = run(capsys, "asymptotics", "--family", "hermite", "--mode", "central", "--n-ladder", "20,50,100,200")
    doc = json.loads(out)
    assert code == 0 and doc["decreasing"]
    code, out, _ = run(capsys, "asymptotics", "--family", "laguerre:0", "--mode", "edge", "--format", "csv")
    assert code == 0 and out.startswith("n,observed,target,abs_error")


def test_enze(capsys):
    code, out, _ = run(
        capsys, "enze", "--family", "hermite-orthonormal", "--B", "1,-0.7", "--theta-grid", "-3:3:0.25", "--n", "10:60"
    )
    doc = json.loads(out)
    assert code == 0 and doc["all_real"] and doc["consistent"]
    assert len(doc["thetas"]) == 25


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["zeros", "--family", "jacobi:0.5:0.5", "--rho", "factorial", "--gamma", "1,2,3", "--n", "5:30:5", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("2:6:2") == [2, 4, 6]
    assert parse_range("-1:1:0.5", float) == [-1.0, -0.5, 0.0, 0.5, 1.0]
    assert parse_range("4,9") == [4, 9]
