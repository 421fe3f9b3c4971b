import json

import pytest

from reflectcg.cli import build_parser, main, resolve


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_r_text(capsys):
    code, out, _ = run(capsys, "build-r", "--cleared")
    assert code == 0 and out.strip()


def test_check_r_passes(capsys):
    code, out, _ = run(capsys, "check-r", "--reps", "2")
    assert code == 0 and "overall: pass" in out


def test_build_k_latex(capsys, tmp_path):
    f = tmp_path / "k.json"
    f.write_text(json.dumps({"family": "I", "B": ["0", "1"], "D": ["1", "0"], "E": ["1", "0", "1"]}))
    code, out, _ = run(capsys, "build-k", "--params", str(f), "--out", "latex")
    assert code == 0
    assert "-z^{4} & 0 & z^{6} - z^{2}" in out


def test_check_k_json_is_deterministic(capsys):
    first = run(capsys, "check-k", "--family", "II", "--seed", "4", "--out", "json")
    second = run(capsys, "check-k", "--family", "II", "--seed", "4", "--out", "json")
    assert first[0] == 0 and first[1] == second[1]
    assert json.loads(first[1])["status"] == "pass"


def test_membership_failure_exits_one(capsys):
    code, out, _ = run(capsys, "varieties", "check", "--kind", "vii", "--coords", "[1,1,1,0,0,0,0]", "--out", "json")
    assert code == 1
    assert json.loads(out)["verdicts"][0]["detail"]["failing"] == ["II1"]


def test_membership_success(capsys):
    code, _, _ = run(capsys, "varieties", "check", "--kind", "vi", "--coords", json.dumps([1] * 10))
    assert code == 0


def test_bad_params_file_names_the_field(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"family": "I", "B": ["1", "0"], "D": ["1"], "E": ["1", "0", "0"]}))
    code, _, err = run(capsys, "check-k", "--params", str(f))
    assert code == 2
    assert "bad.json" in err and "'D'" in err


def test_missing_params_file(capsys, tmp_path):
    code, _, err = run(capsys, "check-k", "--params", str(tmp_path / "nope.json"))
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [
    ["no-such-command"],
    ["check-re", "--mode", "modp", "--prime", "1000001"],
    ["sample", "--family", "I", "--count", "0"],
    ["check-k", "--out", "yaml"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_environment_precedence(monkeypatch):
    parser = build_parser()
    monkeypatch.setenv("REFLECTCG_SEED", "9")
    monkeypatch.setenv("REFLECTCG_PRIME", "1000033")
    cfg = resolve(parser.parse_args(["check-re"]))
    assert (cfg.seed, cfg.prime) == (9, 1000033)
    cfg = resolve(parser.parse_args(["check-re", "--seed", "3"]))
    assert cfg.seed == 3
    monkeypatch.delenv("REFLECTCG_SEED")
    assert resolve(parser.parse_args(["check-re"])).seed == 0


def test_bad_environment_value(capsys, monkeypatch):
    monkeypatch.setenv("REFLECTCG_SEED", "x")
    assert run(capsys, "check-r")[0] == 2


def test_reps_default_depends_on_command():
    parser = build_parser()
    assert resolve(parser.parse_args(["appendix-b"])).reps == 50
    assert resolve(parser.parse_args(["check-re"])).reps == 7


def test_sample_command(capsys):
    code, out, _ = run(capsys, "sample", "--family", "diag", "--count", "3", "--seed", "1", "--out", "json")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_certify_command(capsys):
    code, _, _ = run(capsys, "certify", "--target", "A6'", "--basis", "A6,A1,B4,TB4", "--mode", "exact")
    assert code == 0


def test_certify_outside_span_exits_one(capsys):
    code, _, _ = run(capsys, "certify", "--target", "A6'", "--basis", "A1,B4,TB4", "--mode", "exact")
    assert code == 1
