from pathlib import Path

from click.testing import CliRunner

from cli import cli


def test_run_writes_a_trial_file(tmp_path: Path) -> None:
    result = CliRunner().invoke(cli, ["run", "--n", "5", "--seed", "3", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "hit optimum True" in result.output
    assert (tmp_path / "run-inv-single-perm-comb-s3.csv").exists()


def test_run_rejects_several_sizes(tmp_path: Path) -> None:
    result = CliRunner().invoke(cli, ["run", "--n-list", "4,5", "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_run_rejects_worst_case_init_below_three(tmp_path: Path) -> None:
    result = CliRunner().invoke(cli, ["run", "--n", "2", "--init", "w1", "--out", str(tmp_path)])
    assert result.exit_code == 2
    assert "Pattern needs n >= 3, got n=2" in result.output


def test_stagnate_rejects_mismatched_init(tmp_path: Path) -> None:
    result = CliRunner().invoke(
        cli, ["stagnate", "--n", "5", "--measure", "ham", "--init", "w1", "--out", str(tmp_path)]
    )
    assert result.exit_code == 2
    assert "not a worst case" in result.output


def test_stagnate_single(tmp_path: Path) -> None:
    result = CliRunner().invoke(cli, ["stagnate", "--n-list", "4,5", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "n=5: initial fitness 2, improvement probability 0" in result.output
    assert (tmp_path / "stagnate-run-single-w1-s0-improvement-probability.dat").exists()


def test_verify(tmp_path: Path) -> None:
    result = CliRunner().invoke(cli, ["verify", "--n-list", "3,4"])
    assert result.exit_code == 0, result.output
    assert "INV = 11 (commonly quoted as 10)" in result.output
    assert "optimal insertion positions (missing 1: 1, missing 2: 2, missing 3: 2)" in result.output
    assert "FAIL" not in result.output


def test_verify_rejects_out_of_range_sizes() -> None:
    result = CliRunner().invoke(cli, ["verify", "--n-list", "2"])
    assert result.exit_code == 2


def test_summary_lists_missing_cells(tmp_path: Path) -> None:
    CliRunner().invoke(cli, ["stagnate", "--n", "4", "--out", str(tmp_path)])
    result = CliRunner().invoke(cli, ["summary", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "exact stagnation (probability 0)" in result.output
    assert "missing: " in result.output
