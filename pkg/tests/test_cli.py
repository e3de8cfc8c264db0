import json
import re

import numpy as np
import pytest
from importlib import resources

from minqc import cli


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def data_path(name):
    return str(resources.files("minqc").joinpath(f"data/{name}"))


def test_verify_endnote_suite(capsys):
    code, out, _ = run_cli(capsys, ["verify", "endnote-a"])
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == "1"
    assert report["overall_pass"]
    assert all(c["residual"] < c["tolerance"] for c in report["checks"])
    assert report["checks"][0]["residual"] < 1e-12


def test_verify_all_passes(capsys):
    code, out, _ = run_cli(capsys, ["verify", "all", "--seed", "7", "--trials", "25"])
    assert code == 0
    report = json.loads(out)
    assert report["overall_pass"]
    suites = {c["suite"] for c in report["checks"]}
    assert suites == {"k", "l", "hamiltonian", "appendix-a", "endnote-a"}


def test_verify_zero_trials_vacuous_pass(capsys):
    code, out, _ = run_cli(capsys, ["verify", "k", "--trials", "0"])
    assert code == 0
    report = json.loads(out)
    assert report["overall_pass"]
    assert report["checks"] == []
    assert any("vacuous" in w for w in report["warnings"])


def test_verify_reports_are_deterministic(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, ["verify", "l", "--seed", "3", "--trials", "10"])
        assert code == 0
        outs.append(re.sub(r'"wall_time_s": [0-9.e-]+', '"wall_time_s": 0', out))
    assert outs[0] == outs[1]


def test_verify_suite_checks_match_all_run(capsys):
    _, solo, _ = run_cli(capsys, ["verify", "hamiltonian", "--seed", "5", "--trials", "10"])
    _, combined, _ = run_cli(capsys, ["verify", "all", "--seed", "5", "--trials", "10"])
    solo_checks = json.loads(solo)["checks"]
    combined_checks = [c for c in json.loads(combined)["checks"] if c["suite"] == "hamiltonian"]
    assert solo_checks == combined_checks


def test_synth_hadamard_word(capsys):
    code, out, _ = run_cli(capsys, ["synth", "--gens", "T,HT", "--target", "H", "--eps", "1e-10"])
    assert code == 0
    report = json.loads(out)
    assert report["length"] <= 8
    assert report["distance"] < 1e-10
    assert report["universality_verdict"] == "plausibly-universal"


def test_synth_single_letter_word(capsys):
    code, out, _ = run_cli(capsys, ["synth", "--gens", "H,THT", "--target", "THT", "--eps", "1e-10"])
    assert code == 0
    assert json.loads(out)["word"] == [1]


def test_synth_commuting_generators_exhausts(capsys):
    code, out, _ = run_cli(capsys, ["synth", "--gens", "Z,T", "--target", "X", "--eps", "0.01"])
    assert code == 3
    report = json.loads(out)
    assert "error" in report and "word" not in report


def test_synth_bad_gate_expression(capsys):
    code, _, err = run_cli(capsys, ["synth", "--gens", "T,FROB", "--target", "H", "--eps", "0.1"])
    assert code == 2
    assert "FROB" in err


def test_synth_matrix_literal_target(capsys):
    code, out, _ = run_cli(
        capsys,
        ["synth", "--gens", "T,HT", "--target", "1,0,0,0,0,0,1,0", "--eps", "1e-6"],
    )
    assert code == 0
    assert json.loads(out)["length"] == 0  # identity target: empty word


def test_schedule_bundled_files_pass(capsys):
    code, out, _ = run_cli(
        capsys,
        ["schedule", data_path("cz_t_two_qubit.sched"), "--claimed", data_path("cz_t_entangler.mat")],
    )
    assert code == 0
    report = json.loads(out)
    assert report["pass"] and report["ancillas"] == 15 and report["interactions"] == 18

    code, out, _ = run_cli(
        capsys,
        ["schedule", data_path("sct_two_qubit.sched"), "--claimed", data_path("sct_entangler.mat")],
    )
    assert code == 0
    assert json.loads(out)["pass"]

    code, out, _ = run_cli(
        capsys,
        ["schedule", data_path("sct_single_qubit_1.sched"), "--claimed", "THT"],
    )
    assert code == 0
    assert json.loads(out)["pass"]


def test_schedule_wrong_claim_fails(capsys):
    code, out, _ = run_cli(
        capsys, ["schedule", data_path("sct_single_qubit_1.sched"), "--claimed", "H"]
    )
    assert code == 1
    report = json.loads(out)
    assert not report["pass"]
    assert report["residual"] > 0.1


def test_schedule_corrupted_file_is_a_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.sched"
    bad.write_text("REGISTER 1\nPREP a 0\nINT cz_t zero a\n")
    code, _, err = run_cli(capsys, ["schedule", str(bad), "--claimed", "H"])
    assert code == 2
    assert "line 3" in err


def test_schedule_missing_file(capsys):
    code, _, err = run_cli(capsys, ["schedule", "/nonexistent.sched", "--claimed", "H"])
    assert code == 2
    assert err


def test_schedule_env_tolerance_override(capsys, monkeypatch):
    monkeypatch.setenv("MINQC_TOL", "10.0")
    code, out, _ = run_cli(
        capsys, ["schedule", data_path("sct_single_qubit_1.sched"), "--claimed", "H"]
    )
    assert code == 0  # absurdly loose tolerance makes the wrong claim pass
    assert json.loads(out)["tolerance"] == 10.0


def test_invalid_arguments_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "k", "--trials", "-3"])
    assert exc.value.code == 2


def test_exit_codes_documented_in_module():
    assert "Exit codes" in cli.__doc__
