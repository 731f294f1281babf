import io
import json
from importlib import resources

import pytest

from fracchern.cli import main


def fixture_path(name):
    return str(resources.files("fracchern").joinpath("fixtures").joinpath(name))


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_frac_chern_oracle(capsys):
    code, out, _ = run(capsys, "frac-chern", "--n", "4", "--l", "2", "--k", "2", "--oracle")
    assert code == 0
    assert out == "e2 - 3/2*a*e1 + 3/2*a^2\ne2 - 3/2*a*e1 + 3/2*a^2\nMATCH\n"


def test_frac_chern_integral_marker(capsys):
    code, out, _ = run(capsys, "frac-chern", "--n", "2", "--l", "1", "--k", "2")
    assert code == 0
    assert out.strip() == "e2 - a*e1 + a^2 (integral)"


def test_frac_chern_roots_basis(capsys):
    code, out, _ = run(capsys, "frac-chern", "--n", "2", "--l", "2", "--k", "1", "--basis", "roots")
    assert code == 0
    assert out.strip() == "x2 + x1 - a (integral)"


def test_universal_phi(capsys):
    code, out, _ = run(capsys, "universal", "--map", "phi", "--n", "2", "--l", "2", "--k", "1")
    assert code == 0
    assert out.strip() == "c1 - g"


def test_universal_lphi2(capsys):
    code, out, _ = run(capsys, "universal", "--map", "lphi2", "--n", "4", "--l", "2", "--k", "2")
    assert code == 0
    assert out.strip() == "z2 + zb1*cb1"


def test_universal_precondition(capsys):
    code, _, err = run(capsys, "universal", "--map", "phi2", "--n", "3", "--l", "3", "--k", "1")
    assert code == 2
    assert "precondition" in err


def test_change_triv(capsys):
    code, out, _ = run(capsys, "change-triv", "--n", "4", "--l", "2", "--k", "1")
    assert code == 0
    assert out.strip() == "f1 - 2*x"


def test_transgress(capsys):
    code, out, _ = run(capsys, "transgress", "--space", "BUn", "--expr", "c1^2", "--n", "2")
    assert code == 0
    assert out.strip() == "2*z1*c1"
    code, out, _ = run(capsys, "transgress", "--space", "BSpinc", "--expr", "q1")
    assert code == 0
    assert out.strip() == "mu - sp1*t"


def test_count(capsys):
    code, out, _ = run(
        capsys, "count", "--level", "fracU6", "--descriptor", fixture_path("symbolic_n4l2.json")
    )
    assert code == 0
    assert out.strip() == "Z"


def test_count_from_stdin(capsys, monkeypatch):
    with open(fixture_path("symbolic_n4l2.json")) as fh:
        payload = fh.read()
    monkeypatch.setattr("sys.stdin", io.StringIO(payload))
    code, out, _ = run(capsys, "count", "--level", "fracSU", "--descriptor", "-")
    assert code == 0
    assert out.strip() == "Z^2"


def test_obstruction(capsys):
    code, out, _ = run(
        capsys, "obstruction", "--level", "loopSU", "--descriptor", fixture_path("su_n4l2.json")
    )
    assert code == 0
    assert "upstairs   = z2 + af*a" in out
    assert "vanishes: no" in out


def test_obstruction_undecidable_note(capsys):
    code, out, _ = run(
        capsys, "obstruction", "--level", "loopU", "--descriptor", fixture_path("u6_n4l2.json")
    )
    assert code == 0
    assert "vanishes: yes" in out
    assert "undecidable at ring level" in out


def test_gch_descend(capsys, monkeypatch):
    monkeypatch.setenv("FRACCHERN_DEGREE_CAP", "4")
    code, out, _ = run(
        capsys,
        "gch", "--kind", "theta3", "--n", "1", "--l", "1",
        "--q-order", "2", "--descend", "--method", "both",
    )
    assert code == 0
    assert out == "q^0: 1\nq^1/2: 2 + f1^2\nq^2: 2 + 4*f1^2\n"


def test_degree_cap_env_changes_truncation(capsys, monkeypatch):
    monkeypatch.setenv("FRACCHERN_DEGREE_CAP", "8")
    _, deep, _ = run(capsys, "gch", "--kind", "theta3", "--n", "1", "--l", "1", "--q-order", "1", "--descend")
    monkeypatch.setenv("FRACCHERN_DEGREE_CAP", "4")
    _, shallow, _ = run(capsys, "gch", "--kind", "theta3", "--n", "1", "--l", "1", "--q-order", "1", "--descend")
    assert "1/12*f1^4" in deep
    assert "f1^4" not in shallow


def test_deterministic_output(capsys):
    first = run(capsys, "universal", "--map", "phi", "--n", "6", "--l", "3", "--k", "4")
    second = run(capsys, "universal", "--map", "phi", "--n", "6", "--l", "3", "--k", "4")
    assert first == second


def test_bad_json_exit_code(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": ')
    code, _, err = run(capsys, "count", "--level", "fracSU", "--descriptor", str(bad))
    assert code == 1
    assert "parse error" in err


def test_bad_expression_exit_code(capsys):
    code, _, err = run(capsys, "transgress", "--space", "BUn", "--expr", "c1 +", "--n", "2")
    assert code == 1


def test_missing_file_exit_code(capsys):
    code, _, _ = run(capsys, "count", "--level", "fracSU", "--descriptor", "/nonexistent.json")
    assert code == 1


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frac-chern", "--n", "4"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 1


def test_verify_fast(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", "4", "--q-order", "2")
    assert code == 0
    lines = [line for line in out.splitlines() if line.startswith("[")]
    assert len(lines) == 10
    assert all(line.startswith("[PASS]") for line in lines)
