"""Tests for CSV emission and the plot script."""

from pathlib import Path
from unittest.mock import patch

import pandas as pd
import pytest

from aw_rascle import harness
from aw_rascle.harness import ExperimentConfig, RunReport
from aw_rascle.tools import profiles
from aw_rascle.tools.profiles import PROFILE_COLUMNS
from aw_rascle.utils.errors import OutputError, ParameterError


def read_csv(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, float_precision="round_trip")


@pytest.fixture
def config(tmp_path: Path) -> ExperimentConfig:
    return harness.with_overrides(
        harness.preset_config("case-iii"), n_cells=60, outputs=tmp_path / "out"
    )


@pytest.fixture
def report(config: ExperimentConfig) -> RunReport:
    """Completed rarefaction run on a coarse grid."""
    return harness.run_experiment(config)


def test_profile_filename() -> None:
    assert profiles.profile_filename(0, 0.1) == "profile_0_0.1.csv"
    assert profiles.profile_filename(3, 0.05) == "profile_3_0.05.csv"


def test_summary_csv(report: RunReport, tmp_path: Path) -> None:
    """Test summary.csv has one row per pair."""
    path = profiles.emit_summary(report, tmp_path)
    frame = read_csv(path)
    assert len(frame) == 4
    assert list(frame.columns) == list(report.records[0].keys())
    assert list(frame["rho_star"]) == [r["rho_star"] for r in report.records]


def test_profiles_at_final_time(report: RunReport, config: ExperimentConfig, tmp_path: Path) -> None:
    """Test profiles at t_end reuse the stored scheme field."""
    paths = profiles.emit_profiles(report, [config.scheme.t_end], tmp_path)
    assert [p.name for p in paths] == [
        "profile_0_0.1.csv",
        "profile_1_0.1.csv",
        "profile_2_0.1.csv",
        "profile_3_0.1.csv",
        "plots.gnu",
    ]
    for index, path in enumerate(paths[:-1]):
        frame = read_csv(path)
        assert list(frame.columns) == PROFILE_COLUMNS
        assert len(frame) == config.grid.n_cells
        # far left cell lies ahead of the fan head
        assert frame["rho_exact"].iloc[0] == config.left.rho
        assert frame["v_exact"].iloc[-1] == config.right.v
        assert frame["rho_num"].max() == report.records[index]["max_density"]


def test_profiles_at_intermediate_time(report: RunReport, tmp_path: Path) -> None:
    """Test an earlier time reruns the scheme to that time."""
    paths = profiles.emit_profiles(report, [0.05], tmp_path)
    assert paths[0].name == "profile_0_0.05.csv"
    frame = read_csv(paths[0])
    assert (frame["rho_num"] > 0).all()


def test_profile_times_must_be_positive(report: RunReport, tmp_path: Path) -> None:
    """Test non-positive profile times are rejected."""
    with pytest.raises(ParameterError):
        profiles.emit_profiles(report, [0.0], tmp_path)


def test_failed_pairs_skipped(report: RunReport, tmp_path: Path) -> None:
    """Test failed pairs get no profile files."""
    del report.solutions[1]
    del report.fields[1]
    paths = profiles.emit_profiles(report, [0.1], tmp_path)
    assert "profile_1_0.1.csv" not in {p.name for p in paths}
    assert len(paths) == 4


def test_plot_script_references_profiles(report: RunReport, tmp_path: Path) -> None:
    """Test plots.gnu plots every profile and the phase plane."""
    phase_plane = profiles.emit_phase_plane(report, tmp_path)
    paths = profiles.emit_profiles(report, [0.1], tmp_path, phase_plane)
    script = paths[-1].read_text()
    assert 'set datafile separator ","' in script
    for path in paths[:-1]:
        assert f'"{path.name}"' in script
    assert '"phase_plane.csv"' in script
    assert script.count("set multiplot layout") == 4
    assert script.count('title "A = 0 limit"') == 2 * 4 + 1


def test_plot_script_ignores_stale_phase_plane(report: RunReport, tmp_path: Path) -> None:
    """Test a phase_plane.csv left in the directory is not plotted unless passed in."""
    profiles.emit_phase_plane(report, tmp_path)
    paths = profiles.emit_profiles(report, [0.1], tmp_path)
    assert "phase_plane" not in paths[-1].read_text()


def test_profile_limit_columns(report: RunReport) -> None:
    """Test the A = 0 limit columns: left state, intermediate state, right state."""
    frame = profiles.profile_frame(report, 0, 0.1)
    # limit fan spans 0.45 < x < 0.55 and the contact sits at x = 0.7
    ahead = frame[frame["x"] < 0.4]
    assert (ahead["rho_limit"] == 1.0).all()
    assert (ahead["v_limit"] == 5.0).all()
    middle = frame[(frame["x"] > 0.56) & (frame["x"] < 0.69)]
    assert len(middle) > 0
    assert middle["rho_limit"].to_numpy() == pytest.approx(1.0 / 9.0, rel=1e-9)
    behind = frame[frame["x"] > 0.71]
    assert (behind["rho_limit"] == 2.0).all()
    assert (behind["v_limit"] == 7.0).all()


def test_phase_plane(report: RunReport, config: ExperimentConfig) -> None:
    """Test the phase-plane columns and the decreasing wave curve."""
    frame = profiles.phase_plane_frame(report)
    assert list(frame.columns) == ["rho", "v_wave_curve", "v_limit_curve", "p"]
    assert frame["rho"].is_monotonic_increasing
    assert frame["v_wave_curve"].is_monotonic_decreasing
    assert frame["rho"].max() < config.params(config.pairs[0]).rho_max


def test_outputs_are_deterministic(config: ExperimentConfig, tmp_path: Path) -> None:
    """Test two runs write byte-identical files."""
    first = harness.run_experiment(config)
    second = harness.run_experiment(config)
    profiles.emit_summary(first, tmp_path / "a")
    profiles.emit_summary(second, tmp_path / "b")
    paths_a = profiles.emit_profiles(first, [0.1], tmp_path / "a")
    paths_b = profiles.emit_profiles(second, [0.1], tmp_path / "b")

    assert (tmp_path / "a" / "summary.csv").read_bytes() == (
        tmp_path / "b" / "summary.csv"
    ).read_bytes()
    for a, b in zip(paths_a, paths_b):
        assert a.read_bytes() == b.read_bytes()


def test_write_failure_raises_output_error(report: RunReport, tmp_path: Path) -> None:
    """Test an unwritable directory raises OutputError."""
    with patch.object(pd.DataFrame, "to_csv", side_effect=PermissionError(13, "Permission denied")):
        with pytest.raises(OutputError) as exc_info:
            profiles.emit_summary(report, tmp_path)
    assert exc_info.value.path.endswith("summary.csv")
