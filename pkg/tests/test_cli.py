"""Command-line client: output shapes, exit codes, determinism."""

import json

from asymhecke.cli import main


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse and error paths
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(["expand", "0", "--basis", "T", "--q", "3", "--L", "8"],
                       capsys)
    assert code == 0
    assert "1/4" in out
    assert "t_0 in basis T" in out


def test_expand_json_roundtrip(capsys):
    code, out, _ = run(["expand", "01", "--L", "10", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["element"] == "t_01"
    assert {t["w"] for t in data["terms"]} >= {"1", "01"}


def test_expand_empty_word_exit_2(capsys):
    code, _, err = run(["expand", "", "--L", "8"], capsys)
    assert code == 2
    assert "empty word" in err


def test_expand_small_cutoff_exit_3(capsys):
    code, _, err = run(["expand", "0101", "--L", "3"], capsys)
    assert code == 3
    assert "cutoff" in err


def test_act_projector(capsys):
    code, out, _ = run(["act", "--t", "0", "--on", "phibar(0)"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "phibar(0)"


def test_act_standard_word(capsys):
    code, out, _ = run(["act", "--T", "01", "--on", "phi(3)"], capsys)
    assert code == 0
    assert "phi(2)" in out


def test_act_identity_t(capsys):
    code, out, _ = run(["act", "--t", "", "--on", "psi(0)"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "0"


def test_act_stabilization_exit_4(capsys):
    code, _, err = run(["act", "--t", "0", "--on", "phibar(0)",
                        "--L", "5", "--N", "6"], capsys)
    assert code == 4
    assert "settle" in err or "stabil" in err


def test_verify_gamma(capsys):
    code, out, _ = run(["verify", "gamma", "--L", "6"], capsys)
    assert code == 0
    assert "suite gamma: pass" in out


def test_verify_images(capsys):
    code, out, _ = run(["verify", "images", "--L", "12", "--N", "16"], capsys)
    assert code == 0
    assert "[PASS]" in out


def test_gamma_table(capsys):
    code, out, _ = run(["gamma-table", "--L", "2"], capsys)
    assert code == 0
    assert "gamma(0, 0, 0) = 1" in out


def test_deterministic_output(capsys):
    argv = ["expand", "01", "--L", "10", "--format", "json"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_flag_position_equivalence(capsys):
    _, a, _ = run(["expand", "01", "--L", "10", "--format", "json"], capsys)
    _, b, _ = run(["--format", "json", "expand", "01", "--L", "10"], capsys)
    assert a == b


def test_unknown_subcommand_exit_2(capsys):
    code, _, _ = run(["frobnicate"], capsys)
    assert code == 2
