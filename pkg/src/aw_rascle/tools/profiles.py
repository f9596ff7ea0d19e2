"""CSV emission and the gnuplot script that renders density/velocity panels."""

import logging
from collections.abc import Sequence
from dataclasses import replace
from pathlib import Path
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd

from aw_rascle.tools import exact_riemann, limit_analysis, upwind_scheme
from aw_rascle.tools.eos import pressure
from aw_rascle.utils.config import CSV_FLOAT_FORMAT
from aw_rascle.utils.errors import OutputError, ParameterError

if TYPE_CHECKING:
    from aw_rascle.harness import RunReport

logger = logging.getLogger(__name__)

PROFILE_COLUMNS = ["x", "rho_exact", "rho_num", "v_exact", "v_num", "rho_limit", "v_limit"]
PHASE_PLANE_POINTS = 400


def _write_csv(frame: pd.DataFrame, path: Path) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise OutputError(str(path), e.strerror or str(e)) from e
    return path


def _write_text(text: str, path: Path) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as e:
        raise OutputError(str(path), e.strerror or str(e)) from e
    return path


def profile_filename(pair_index: int, t: float) -> str:
    return f"profile_{pair_index}_{t:g}.csv"


def emit_summary(report: "RunReport", directory: Path) -> Path:
    """summary.csv, one row per (A, a) pair."""
    frame = pd.DataFrame(report.records)
    return _write_csv(frame, directory / "summary.csv")


def profile_frame(report: "RunReport", pair_index: int, t: float) -> pd.DataFrame:
    """Exact, numerical and A = 0 limit profiles of one pair at time t."""
    config = report.config
    params = config.params(config.pairs[pair_index])
    sol = report.solutions[pair_index]

    stored = report.fields.get(pair_index)
    if stored is not None and stored.time == t:
        result = stored
    else:
        scheme = replace(config.scheme, t_end=t)
        result = upwind_scheme.run(params, config.left, config.right, config.grid, scheme)

    x = config.grid.centers
    rho_exact, v_exact = exact_riemann.sample_profile(params, sol, x, t)
    rho_limit, v_limit = limit_analysis.limit_profile(
        report.prediction, config.left, config.right, config.B, config.kappa, x, t
    )
    return pd.DataFrame(
        {
            "x": x,
            "rho_exact": rho_exact,
            "rho_num": result.rho,
            "v_exact": v_exact,
            "v_num": result.v,
            "rho_limit": rho_limit,
            "v_limit": v_limit,
        },
        columns=PROFILE_COLUMNS,
    )


def emit_profiles(
    report: "RunReport",
    times: Sequence[float],
    directory: Path,
    phase_plane: Path | None = None,
) -> list[Path]:
    """
    Write profile_<pairindex>_<time>.csv for every solved pair and time, then plots.gnu.

    Args:
        report: Completed run report
        times: Positive profile times
        directory: Output directory
        phase_plane: phase_plane.csv to include in plots.gnu, if one was written

    Returns:
        Paths of the profile CSVs followed by the plot script
    """
    for t in times:
        if not t > 0:
            raise ParameterError(f"profile times must be > 0, got {t}")

    paths: list[Path] = []
    for index, pair in enumerate(report.config.pairs):
        if index not in report.solutions:
            logger.warning("skipping profiles for failed pair %d (A=%g, a=%g)", index, *pair)
            continue
        for t in times:
            frame = profile_frame(report, index, t)
            paths.append(_write_csv(frame, directory / profile_filename(index, t)))

    paths.append(_write_text(plot_script(report, paths, phase_plane), directory / "plots.gnu"))
    return paths


def phase_plane_frame(report: "RunReport") -> pd.DataFrame:
    """Wave curve through the left state for the first pair, and the A = 0 limit curve."""
    config = report.config
    left, right = config.left, config.right
    params = config.params(config.pairs[0])

    sol = report.solutions.get(0)
    rho_hi = max(left.rho, right.rho, sol.star.rho if sol and sol.star else left.rho)
    rho_hi = min(3.0 * rho_hi, 0.99 * params.rho_max)
    rho = np.linspace(0.05 * min(left.rho, right.rho), rho_hi, PHASE_PLANE_POINTS)

    threshold = limit_analysis.limit_threshold(left, config.B, config.kappa)
    return pd.DataFrame(
        {
            "rho": rho,
            "v_wave_curve": exact_riemann.wave_curve_velocity(params, left, rho),
            "v_limit_curve": threshold + config.B / np.power(rho, config.kappa),
            "p": pressure(params, rho),
        }
    )


def emit_phase_plane(report: "RunReport", directory: Path) -> Path:
    return _write_csv(phase_plane_frame(report), directory / "phase_plane.csv")


def plot_script(
    report: "RunReport", profile_paths: Sequence[Path], phase_plane: Path | None
) -> str:
    """gnuplot script: one density and one velocity panel per profile file."""
    config = report.config
    lines = [
        "# generated by aw-rascle; run with: gnuplot plots.gnu",
        'set datafile separator ","',
        "set terminal pngcairo size 1200,480",
        "set grid",
        "set key top right",
    ]
    for path in profile_paths:
        _, index_text, time_text = path.stem.split("_", 2)
        A, a = config.pairs[int(index_text)]
        lines += [
            "",
            f'set output "{path.stem}.png"',
            f'set multiplot layout 1,2 title "{config.preset}: A={A:g}, a={a:g}, t={time_text}"',
            'set title "density"; set xlabel "x"; set ylabel "rho"',
            f'plot "{path.name}" using 1:2 skip 1 with lines lw 2 title "exact", \\',
            '     "" using 1:3 skip 1 with points pt 7 ps 0.3 title "upwind", \\',
            '     "" using 1:6 skip 1 with lines dt 2 title "A = 0 limit"',
            'set title "velocity"; set ylabel "v"',
            f'plot "{path.name}" using 1:4 skip 1 with lines lw 2 title "exact", \\',
            '     "" using 1:5 skip 1 with points pt 7 ps 0.3 title "upwind", \\',
            '     "" using 1:7 skip 1 with lines dt 2 title "A = 0 limit"',
            "unset multiplot",
        ]
    if phase_plane is not None:
        lines += [
            "",
            'set output "phase_plane.png"',
            'set title "wave curves"; set xlabel "rho"; set ylabel "v"',
            f'plot "{phase_plane.name}" using 1:2 skip 1 with lines lw 2 title "S/R curve", \\',
            '     "" using 1:3 skip 1 with lines dt 2 title "A = 0 limit"',
        ]
    lines.append("unset output")
    return "\n".join(lines) + "\n"
