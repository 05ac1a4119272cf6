"""Test the command line interface."""

import json
import pathlib

import pytest

from blockadepy import cli


def test_point_success(capsys: pytest.CaptureFixture) -> None:
    """Test the point command on the blockade point."""
    exit_code = cli.main(
        ["point", "--set", "delta=10", "--set", "J=6", "--set", "g=5.656854249492381"]
    )

    assert exit_code == cli.EXIT_OK
    assert "on analytic CPB condition" in capsys.readouterr().out


def test_point_config_file(
    tmp_path: pathlib.Path, capsys: pytest.CaptureFixture
) -> None:
    """Test reading parameters from a file."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"delta": 5.0, "J": 6.0}))

    exit_code = cli.main(["point", "--config", str(path), "--trunc-a", "3"])

    assert exit_code == cli.EXIT_OK
    assert "no real CPB solution" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["point", "--set", "n_th=-1"],
        ["point", "--trunc-b", "2"],
        ["point", "--config", "missing.json"],
        ["sweep"],
        ["sweep", "--axis", "g:0:1:2", "--axis", "J:0:1:2", "--axis", "F:0:1:2"],
        ["figure", "fig3a", "--out", "missing_directory"],
    ],
)
def test_config_errors(argv: list[str]) -> None:
    """Test that configuration problems exit with status 2."""
    assert cli.main(argv) == cli.EXIT_CONFIG


def test_solver_failure() -> None:
    """Test that a singular system exits with status 1."""
    exit_code = cli.main(
        [
            "point",
            "--set",
            "kappa_a=0",
            "--set",
            "kappa_b=0",
            "--set",
            "gamma=0",
            "--set",
            "F=0",
            "--trunc-a",
            "2",
            "--trunc-b",
            "3",
        ]
    )

    assert exit_code == cli.EXIT_FAILURE


def test_sweep_command(tmp_path: pathlib.Path) -> None:
    """Test a small sweep through the command line."""
    output = tmp_path / "sweep.csv"

    exit_code = cli.main(
        [
            "sweep",
            "--axis",
            "g:-5:5:3",
            "--set",
            "J=6",
            "--trunc-a",
            "3",
            "--trunc-b",
            "3",
            "--out",
            str(output),
            "--no-log-g2",
        ]
    )

    assert exit_code == cli.EXIT_OK
    assert "# log_g2: false" in output.read_text()


def test_figure_command(tmp_path: pathlib.Path, capsys: pytest.CaptureFixture) -> None:
    """Test a coarse figure preset through the command line."""
    exit_code = cli.main(
        [
            "figure",
            "fig3b",
            "--set",
            "points_1d=3",
            "--trunc-a",
            "3",
            "--trunc-b",
            "3",
            "--out",
            str(tmp_path),
        ]
    )

    assert exit_code == cli.EXIT_OK
    assert (tmp_path / "fig3b_g5.csv").exists()
    assert (tmp_path / "fig3b_plot.py").exists()
    assert "fig3b_g7.csv" in capsys.readouterr().out


def test_evolve_command(capsys: pytest.CaptureFixture) -> None:
    """Test the evolution oracle from the maximally mixed state."""
    exit_code = cli.main(
        ["evolve", "--start", "mixed", "--trunc-a", "2", "--trunc-b", "3"]
    )

    assert exit_code == cli.EXIT_OK
    assert "trace distance" in capsys.readouterr().out


def test_validate_command(capsys: pytest.CaptureFixture) -> None:
    """Test the invariant suite on the minimal space."""
    exit_code = cli.main(["validate", "--trunc-a", "2", "--trunc-b", "3"])

    assert exit_code == cli.EXIT_OK
    assert "[PASS] trace_preservation" in capsys.readouterr().out


def test_validate_command_negative_control() -> None:
    """Test that a loosened tolerance makes validation fail."""
    exit_code = cli.main(
        [
            "validate",
            "--set",
            "evolve_tolerance=0.01",
            "--trunc-a",
            "2",
            "--trunc-b",
            "3",
        ]
    )

    assert exit_code == cli.EXIT_FAILURE


def test_unknown_preset_rejected_by_parser() -> None:
    """Test that argparse refuses unknown presets."""
    with pytest.raises(SystemExit):
        cli.main(["figure", "fig9z"])


def test_figure_takes_parameters_from_config_and_set(tmp_path: pathlib.Path) -> None:
    """Test that file values and --set overrides reach the preset base."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"F": 0.05, "g": 3.0}))

    exit_code = cli.main(
        [
            "figure",
            "fig4b",
            "--config",
            str(path),
            "--set",
            "g=4",
            "--set",
            "points_1d=3",
            "--trunc-a",
            "3",
            "--trunc-b",
            "3",
            "--out",
            str(tmp_path),
            "--no-plot-script",
        ]
    )

    text = (tmp_path / "fig4b_nth0.01.csv").read_text()
    assert exit_code == cli.EXIT_OK
    assert "# F: 0.05" in text
    assert "# g: 4.0" in text
    assert "# delta_a: 8.0" in text
