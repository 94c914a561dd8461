import json

import pytest

from shidcone.cli import RunConfig, main, parse_args, run
from shidcone.shi_basis import basis, derivation_from_dict
from shidcone.verify import saito_verify


def invoke(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_verify_ok(capsys):
    status, out, _ = invoke(capsys, "verify", "--ell", "2")
    assert status == 0
    assert "saito_ok: True" in out


def test_verify_bad_ell_usage_error(capsys):
    status, _, err = invoke(capsys, "verify", "--ell", "1")
    assert status == 2
    assert "error" in err.lower()


def test_verify_check_failure_exit_code(capsys, monkeypatch):
    import shidcone.cli as cli_mod

    real = saito_verify

    def broken(ell, method="auto"):
        report = real(ell, method=method)
        report.saito_ok = False
        return report

    monkeypatch.setattr(cli_mod, "saito_verify", broken)
    status, _, _ = invoke(capsys, "verify", "--ell", "2")
    assert status == 1


def test_bernoulli_golden(capsys):
    status, out, _ = invoke(capsys, "bernoulli", "--p", "3", "--q", "0")
    assert status == 0
    assert "1/3*x^3 + 2/3*x" in out


def test_bernoulli_flagged_case(capsys):
    status, out, _ = invoke(capsys, "bernoulli", "--p", "-1", "--q", "0")
    assert status == 0
    assert "-1/x" in out


def test_bernoulli_invalid_usage(capsys):
    status, _, _ = invoke(capsys, "bernoulli", "--p", "-3", "--q", "0")
    assert status == 2


def test_det_golden_text(capsys):
    status, out, _ = invoke(capsys, "det", "--ell", "2")
    assert status == 0
    # (x1+x2)(x1-x2)(x1+x2-z)(x1-x2-z) expanded, canonical rendering
    assert out.strip() == (
        "x1^4 - 2*x1^3*z - 2*x1^2*x2^2 + x1^2*z^2 + 2*x1*x2^2*z + x2^4 - x2^2*z^2"
    )


def test_det_algorithms_agree(capsys):
    _, out_minors, _ = invoke(capsys, "det", "--ell", "3")
    _, out_bareiss, _ = invoke(capsys, "det", "--ell", "3", "--algorithm", "bareiss")
    assert out_minors == out_bareiss


def test_json_deterministic(capsys):
    _, out1, _ = invoke(capsys, "verify", "--ell", "2", "--format", "json")
    _, out2, _ = invoke(capsys, "verify", "--ell", "2", "--format", "json")
    assert out1.encode() == out2.encode()
    payload = json.loads(out1)
    assert payload["saito_ok"] is True
    assert payload["det_constant"] == {"num": "1", "den": "1"}
    assert "timing" not in payload


def test_json_round_trips_through_parser(capsys):
    _, out, _ = invoke(capsys, "basis", "--ell", "2", "--format", "json")
    payload = json.loads(out)
    assert [d["name"] for d in payload] == ["euler", "phi_1", "phi_2"]
    assert payload[0]["coeffs"]["x1"] == [[[1, 0, 0], "1", "1"]]


def test_basis_reparsed_verifies_identically(capsys):
    _, out, _ = invoke(capsys, "basis", "--ell", "2", "--format", "json")
    parsed = [derivation_from_dict(d) for d in json.loads(out)]
    assert parsed == basis(2)
    direct = saito_verify(2).summary_dict()
    reparsed = saito_verify(2, derivs=parsed).summary_dict()
    assert direct == reparsed


def test_lemmas_command(capsys):
    status, out, _ = invoke(capsys, "lemmas", "--ell", "2")
    assert status == 0
    assert "all_ok: True" in out


def test_oracle_dims_command(capsys):
    status, out, _ = invoke(capsys, "oracle", "dims", "--ell", "2", "--max-degree", "3")
    assert status == 0
    assert "MISMATCH" not in out


def test_oracle_charpoly_command(capsys):
    status, out, _ = invoke(capsys, "oracle", "charpoly", "--ell", "2", "--q", "5")
    assert status == 0
    assert "count=36 expected=36" in out


def test_oracle_charpoly_bad_prime(capsys):
    status, _, _ = invoke(capsys, "oracle", "charpoly", "--ell", "2", "--q", "4")
    assert status == 2


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    status, out, _ = invoke(
        capsys, "verify", "--ell", "2", "--format", "json", "--out", str(path)
    )
    assert status == 0
    assert out == ""
    assert json.loads(path.read_text())["saito_ok"] is True


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_parse_args_normalizes_oracle_commands():
    cfg = parse_args(["oracle", "charpoly", "--ell", "3", "--q", "7"])
    assert cfg.command == "oracle-charpoly"
    assert cfg.prime == 7 and cfg.q is None
    cfg = parse_args(["oracle", "dims", "--ell", "2", "--max-degree", "4"])
    assert cfg.command == "oracle-dims"
    assert cfg.d == 4


def test_run_unknown_command(capsys):
    assert run(RunConfig(command="nope")) == 2
