"""CLI contract: flags, exit codes, golden JSON output, determinism."""

import json
from pathlib import Path

import pytest

import beilinson_hh.cli as cli
from beilinson_hh.hochschild import InternalCheckError

DATA = Path(__file__).parent / "data"


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_agreement_exit_zero(capsys):
    code, out, _ = run(["compute", "--n", "2", "--alpha", "0", "--beta", "1"], capsys)
    assert code == 0
    assert "agree: yes" in out
    assert "case: GENERIC" in out


def test_compute_rejects_zero_beta(capsys):
    code, _, err = run(["compute", "--n", "2", "--alpha", "1", "--beta", "0"], capsys)
    assert code == 2
    assert "AS-regular" in err


def test_compute_rejects_malformed_scalar(capsys):
    code, _, err = run(["compute", "--n", "2", "--alpha", "1//2", "--beta", "1"], capsys)
    assert code == 2
    assert "error" in err


def test_compute_rejects_mismatched_sqrt(capsys):
    code, _, err = run(
        ["compute", "--n", "2", "--alpha", "sqrt(3)", "--beta", "1", "--d", "5"], capsys
    )
    assert code == 2


def test_usage_error_exit_two(capsys):
    assert cli.main(["compute"]) == 2  # missing --n
    capsys.readouterr()
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_internal_error_exit_three(capsys, monkeypatch):
    def boom(p):
        raise InternalCheckError("forced")

    monkeypatch.setattr(cli, "hochschild_report", boom)
    code, _, err = run(["compute", "--n", "2", "--alpha", "0", "--beta", "1"], capsys)
    assert code == 3
    assert "internal error" in err


@pytest.mark.parametrize(
    "name,argv",
    [
        ("compute_n2_generic.json", ["compute", "--n", "2", "--alpha", "0", "--beta", "1"]),
        ("compute_n1_disc_zero.json", ["compute", "--n", "1", "--alpha", "2", "--beta", "-1"]),
        (
            "compute_n4_delta_zero_sqrt5.json",
            ["compute", "--n", "4", "--alpha", "1", "--beta", "(-3+1*sqrt(5))/2", "--d", "5"],
        ),
    ],
)
def test_compute_golden_json(name, argv, tmp_path, capsys):
    out_file = tmp_path / "out.json"
    code, _, _ = run(argv + ["--format", "json", "--out", str(out_file)], capsys)
    assert code == 0
    golden = (DATA / name).read_bytes()
    assert out_file.read_bytes() == golden
    # reruns are byte-identical
    out_file2 = tmp_path / "out2.json"
    run(argv + ["--format", "json", "--out", str(out_file2)], capsys)
    assert out_file2.read_bytes() == golden


def test_compute_json_roundtrips(capsys):
    code, out, _ = run(
        ["compute", "--n", "3", "--alpha", "2", "--beta", "-1", "--format", "json"], capsys
    )
    assert code == 0
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data
    assert data["brute"] == data["closed"] == [1, 2, 6]
    assert data["case"] == "DISC_ZERO"


def test_sweep_row_counts(capsys):
    code, out, _ = run(["sweep", "--n-min", "2", "--n-max", "3", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["rows"]) == 7
    assert data["all_agree"] is True
    assert data["unexercised"] == []

    code, out, _ = run(["sweep", "--n-min", "1", "--n-max", "1", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["rows"]) == 3
    cases = [row["case"] for row in data["rows"]]
    assert cases == ["ALPHA_ZERO", "DISC_ZERO", "GENERIC"]


def test_sweep_euler_constant_per_n(capsys):
    code, out, _ = run(["sweep", "--n-min", "1", "--n-max", "4", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    for row in data["rows"]:
        if row["exercised"]:
            expected = {1: 4, 2: 6}.get(row["n"], row["n"] + 2)
            assert row["euler"] == expected


def test_sweep_range_capped_by_env(capsys, monkeypatch):
    monkeypatch.setenv("BEILINSON_HH_MAX_N", "3")
    code, _, err = run(["sweep", "--n-min", "1", "--n-max", "4"], capsys)
    assert code == 2
    assert "n-max" in err

    monkeypatch.setenv("BEILINSON_HH_MAX_N", "not-an-int")
    code, _, _ = run(["sweep", "--n-min", "1", "--n-max", "2"], capsys)
    assert code == 2


def test_sweep_table_output(capsys):
    code, out, _ = run(["sweep", "--n-min", "2", "--n-max", "2"], capsys)
    assert code == 0
    assert "all agree: yes" in out
    assert out.count("yes") >= 3


def test_resolution_command(capsys):
    code, out, _ = run(
        ["resolution", "--n", "2", "--alpha", "1", "--beta", "1", "--format", "json"], capsys
    )
    assert code == 0
    data = json.loads(out)
    assert data["exact"] is True and data["minimal"] is True
    assert data["dims"]["Lambda"] == 41


def test_grothendieck_command(capsys):
    code, out, _ = run(["grothendieck", "--n", "3", "--alpha", "1", "--beta", "1"], capsys)
    assert code == 0
    assert "unipotent: no" in out
    assert "-tr coxeter: 5" in out

    code, out, _ = run(
        ["grothendieck", "--n", "1", "--alpha", "1", "--beta", "1", "--format", "json"], capsys
    )
    assert code == 0
    assert json.loads(out)["neg_trace_coxeter"] == "4"


def test_hilbert_command(capsys):
    code, out, _ = run(["hilbert", "--n", "2", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["agree"] is True
    assert data["dims"][0] == [1, 1, 2, 3, 4, 5]

    code, out, _ = run(["hilbert", "--n", "3", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["dims"][0][5] == 3  # block of degree n+2 from vertex 1


def test_sweep_marks_unreachable_branches(capsys, monkeypatch):
    # delta_6 = 0 has no point over Q or Q(sqrt(5)); the row is flagged, exit stays 0
    monkeypatch.setenv("BEILINSON_HH_MAX_N", "6")
    code, out, _ = run(["sweep", "--n-min", "6", "--n-max", "6", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["unexercised"] == [{"n": 6, "case": "DELTA_ZERO"}]
    exercised = [row for row in data["rows"] if row["exercised"]]
    assert all(row["agree"] for row in exercised)

    code, out, _ = run(["sweep", "--n-min", "6", "--n-max", "6"], capsys)
    assert code == 0
    assert "not exercised" in out


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        ["compute", "--n", "1", "--alpha", "1", "--beta", "1", "--format", "json",
         "--out", str(target)],
        capsys,
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["agree"] is True


def test_help_exits_zero(capsys):
    assert cli.main(["--help"]) == 0
    capsys.readouterr()
