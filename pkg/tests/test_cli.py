import json
import subprocess
import sys

import pytest

from shibasis.bernoulli import BernoulliKey, UniPoly, bernoulli
from shibasis.cli import main
from shibasis.derivation import Derivation, basis
from shibasis.poly import Poly


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_verify_rank_one(capsys):
    code, out = run(capsys, "verify", "--family", "B", "--rank", "1", "--mode", "exact")
    assert code == 0
    assert "status: PASS" in out and "c = 1\n" in out


def test_verify_json(capsys):
    code, out = run(capsys, "verify", "--family", "C", "--rank", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "PASS" and doc["saito"]["c"] == "-1/12"


def test_bernoulli_text(capsys):
    assert run(capsys, "bernoulli", "--family", "C", "--r", "1", "--s", "0") == (0, "2x\n")
    assert run(capsys, "bernoulli", "--family", "B", "--r", "3", "--s", "0", "--homogeneous")[1] == "x^3/3 + 2x*z^2/3\n"


def test_bernoulli_json_round_trips(capsys):
    _, out = run(capsys, "bernoulli", "--family", "B", "--r", "5", "--s", "2", "--format", "json")
    assert UniPoly.from_json(json.loads(out)) == bernoulli(BernoulliKey("B", 5, 2))
    _, out = run(capsys, "bernoulli", "--family", "C", "--r", "4", "--s", "1", "--homogeneous", "--format", "json")
    p = Poly.from_json(json.loads(out))
    assert p.is_homogeneous(6)


def test_basis_json_round_trips(capsys):
    _, out = run(capsys, "basis", "--family", "B", "--rank", "3", "--format", "json")
    doc = json.loads(out)
    rows = [Derivation.from_json(d) for d in doc["derivations"]]
    assert rows == basis("B", 3)


def test_basis_latex(capsys):
    code, out = run(capsys, "basis", "--family", "C", "--rank", "1", "--format", "latex")
    assert code == 0
    assert "\\varphi_{1}^{C} = \\left(2 x_{1}^{2} - x_{1} z\\right)\\partial_{1}" in out


def test_congruence_command(capsys):
    code, out = run(capsys, "congruence", "--family", "B", "--rank", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "PASS" and doc["checked"] > 0 and doc["r_max"] == 6


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--family", "B", "--rank", "0"],
        ["verify", "--family", "D", "--rank", "1"],
        ["verify", "--rank", "1", "--trials", "0"],
        ["bernoulli", "--r", "0", "--s", "0"],
        ["congruence", "--rank", "1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_output_is_deterministic_and_out_flag(tmp_path):
    argv = ["verify", "--family", "C", "--rank", "2", "--mode", "probabilistic", "--seed", "5", "--format", "json"]
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["saito"]["seed"] == 5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "shibasis", "verify", "--family", "B", "--rank", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2 and "usage" in proc.stderr


def test_verify_failure_exits_1(capsys, monkeypatch):
    from oracles import sample_mutations
    from shibasis import cli
    from shibasis.verifier import full_verify

    _, mutated = next(sample_mutations(basis("B", 2), 1))
    monkeypatch.setattr(cli, "full_verify", lambda *a, **k: full_verify(*a, basis=mutated, **k))
    code, out = run(capsys, "verify", "--family", "B", "--rank", "2")
    assert code == 1 and "status: FAIL" in out
