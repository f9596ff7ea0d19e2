"""Command-line interface: solve, sweep, simulate, report, converge."""

import logging
import math
from enum import Enum
from pathlib import Path
from typing import Annotated

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from aw_rascle import harness
from aw_rascle.harness import ExperimentConfig
from aw_rascle.tools import exact_riemann, limit_analysis, upwind_scheme
from aw_rascle.utils.config import LOG_LEVEL
from aw_rascle.utils.errors import RiemannToolkitError

app = typer.Typer(
    help="Exact and numerical Riemann solutions of the Aw-Rascle model with an "
    "extended Chaplygin pressure, and their a, A -> 0 delta-shock limit.",
    no_args_is_help=True,
)
console = Console()

EXIT_PASS, EXIT_ASSERTION, EXIT_ERROR = 0, 1, 2

ConfigOption = Annotated[
    Path | None, typer.Option("--config", help="Configuration file", exists=True, dir_okay=False)
]
PresetOption = Annotated[
    str | None, typer.Option("--preset", help="case-i, case-ii or case-iii")
]
VariantOption = Annotated[int, typer.Option("--variant", help="Preset parameter set (1 or 2)")]
OutOption = Annotated[Path | None, typer.Option("--out", help="Output directory")]
NCellsOption = Annotated[int | None, typer.Option("--n-cells", help="Number of grid cells")]
CflOption = Annotated[float | None, typer.Option("--cfl", help="CFL number in (0, 1]")]
TEndOption = Annotated[float | None, typer.Option("--t-end", help="Final time")]
PairsOption = Annotated[
    str | None, typer.Option("--pairs", help="(A, a) pairs as A1:a1,A2:a2,...")
]
WorkersOption = Annotated[int, typer.Option("--workers", help="Threads for independent pairs")]


class LogLevel(str, Enum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


# an unrecognised AW_RASCLE_LOG_LEVEL falls back to WARNING
DEFAULT_LOG_LEVEL = LogLevel.__members__.get(LOG_LEVEL.upper(), LogLevel.WARNING)


@app.callback()
def main(
    log_level: Annotated[
        LogLevel, typer.Option("--log-level", help="Logging level", case_sensitive=False)
    ] = DEFAULT_LOG_LEVEL,
) -> None:
    logging.basicConfig(
        level=log_level.value,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def _load(
    config_path: Path | None,
    preset: str | None,
    variant: int,
    out: Path | None = None,
    n_cells: int | None = None,
    cfl: float | None = None,
    t_end: float | None = None,
    pairs: str | None = None,
) -> ExperimentConfig:
    try:
        if config_path is not None:
            config = harness.load_config(config_path)
        elif preset is not None:
            config = harness.preset_config(preset, variant)
        else:
            raise typer.BadParameter("either --config or --preset is required")
        return harness.with_overrides(
            config,
            n_cells=n_cells,
            cfl=cfl,
            t_end=t_end,
            pairs=harness.parse_pairs(pairs) if pairs else None,
            outputs=out,
        )
    except RiemannToolkitError as e:
        console.print(f"[red]configuration error:[/red] {e}")
        raise typer.Exit(code=EXIT_ERROR) from e


def _fmt(value: float | None) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return f"{value:.6g}"


@app.command()
def solve(
    config_path: ConfigOption = None,
    preset: PresetOption = None,
    variant: VariantOption = 1,
    pairs: PairsOption = None,
) -> None:
    """Exact Riemann solve for each (A, a) pair: classification, star state, speeds."""
    config = _load(config_path, preset, variant, pairs=pairs)
    table = Table(title=f"Exact Riemann solutions ({config.preset})")
    for column in ("A", "a", "region", "kind", "rho*", "v*", "sigma1", "fan", "sigma2"):
        table.add_column(column, justify="right")

    status = EXIT_PASS
    region = exact_riemann.classify(config.left, config.right)
    for pair in config.pairs:
        try:
            sol = exact_riemann.solve(config.params(pair), config.left, config.right)
        except RiemannToolkitError as e:
            table.add_row(_fmt(pair[0]), _fmt(pair[1]), region.value, f"[red]{e}[/red]")
            status = EXIT_ERROR
            continue
        summary = sol.summary()
        fan = (
            f"[{_fmt(sol.fan_head)}, {_fmt(sol.fan_tail)}]" if sol.fan_head is not None else "-"
        )
        table.add_row(
            _fmt(pair[0]),
            _fmt(pair[1]),
            region.value,
            summary["kind"],
            _fmt(summary["rho_star"]),
            _fmt(summary["v_star"]),
            _fmt(sol.sigma1),
            fan,
            _fmt(sol.sigma2),
        )
    console.print(table)
    _print_prediction(config)
    raise typer.Exit(code=status)


def _print_prediction(config: ExperimentConfig) -> None:
    prediction = config.prediction()
    console.print(f"limit region: [bold]{prediction.region.value}[/bold]")
    if prediction.has_delta:
        console.print(
            f"delta shock on x = {_fmt(prediction.delta_speed)} t, "
            f"weight {_fmt(prediction.weight_coefficient)} t, "
            f"pressure limit {_fmt(prediction.pressure_limit)}"
        )
    else:
        limit = limit_analysis.limit_star_density(
            config.left, config.right, config.B, config.kappa
        )
        console.print(f"bounded limit, A = 0 intermediate density {_fmt(limit)}")


@app.command()
def sweep(
    config_path: ConfigOption = None,
    preset: PresetOption = None,
    variant: VariantOption = 1,
    pairs: PairsOption = None,
    workers: WorkersOption = 1,
) -> None:
    """Limit sweep table over the (A, a) pairs."""
    config = _load(config_path, preset, variant, pairs=pairs)
    base = config.params(config.pairs[0])
    try:
        rows = limit_analysis.sweep(
            config.left, config.right, base, list(config.pairs), workers=workers
        )
    except RiemannToolkitError as e:
        console.print(f"[red]sweep failed:[/red] {e}")
        raise typer.Exit(code=EXIT_ERROR) from e

    table = Table(title=f"Limit sweep ({config.preset})")
    for column in ("A", "a", "rho*", "sigma1", "sigma2", "eos term", "rho*(s2-s1)", "error"):
        table.add_column(column, justify="right")
    for row in rows:
        table.add_row(
            _fmt(row.A),
            _fmt(row.a),
            _fmt(row.rho_star),
            _fmt(row.sigma1),
            _fmt(row.sigma2),
            _fmt(row.eos_term),
            _fmt(row.rh_mass),
            row.error,
        )
    console.print(table)
    _print_prediction(config)
    raise typer.Exit(code=EXIT_ERROR if any(not row.ok for row in rows) else EXIT_PASS)


@app.command()
def simulate(
    config_path: ConfigOption = None,
    preset: PresetOption = None,
    variant: VariantOption = 1,
    n_cells: NCellsOption = None,
    cfl: CflOption = None,
    t_end: TEndOption = None,
    pairs: PairsOption = None,
) -> None:
    """Run the upwind scheme for each (A, a) pair."""
    config = _load(config_path, preset, variant, None, n_cells, cfl, t_end, pairs)
    table = Table(title=f"Upwind scheme, N={config.grid.n_cells}, t={config.scheme.t_end:g}")
    for column in ("A", "a", "max rho", "steepest dv at x", "excess mass"):
        table.add_column(column, justify="right")

    status = EXIT_PASS
    for pair in config.pairs:
        try:
            result = upwind_scheme.run(
                config.params(pair), config.left, config.right, config.grid, config.scheme
            )
        except RiemannToolkitError as e:
            table.add_row(_fmt(pair[0]), _fmt(pair[1]), f"[red]{e}[/red]")
            status = EXIT_ERROR
            continue
        table.add_row(
            _fmt(pair[0]),
            _fmt(pair[1]),
            _fmt(result.max_density),
            _fmt(upwind_scheme.steepest_velocity_gradient(result)),
            _fmt(upwind_scheme.excess_mass(result, config.left, config.right)),
        )
    console.print(table)
    raise typer.Exit(code=status)


@app.command()
def report(
    config_path: ConfigOption = None,
    preset: PresetOption = None,
    variant: VariantOption = 1,
    out: OutOption = None,
    n_cells: NCellsOption = None,
    cfl: CflOption = None,
    t_end: TEndOption = None,
    pairs: PairsOption = None,
    times: Annotated[
        str | None, typer.Option("--times", help="Profile times t1,t2,... (default t_end)")
    ] = None,
    workers: WorkersOption = 1,
) -> None:
    """Full experiment: summary.csv, profiles, plots.gnu, JSON report and checks."""
    config = _load(config_path, preset, variant, out, n_cells, cfl, t_end, pairs)
    runner = harness.create_experiment_runner(config, workers=workers)
    try:
        result = runner.run()
        profile_times = [float(t) for t in times.split(",")] if times else None
        paths = runner.emit(profile_times)
        paths.append(runner.export_report())
    except (RiemannToolkitError, ValueError) as e:
        console.print(f"[red]report failed:[/red] {e}")
        raise typer.Exit(code=EXIT_ERROR) from e

    table = Table(title=f"Report ({config.preset}, variant {config.variant})")
    for column in ("A", "a", "kind", "rho*", "sigma1", "sigma2", "max rho", "L1(rho)", "error"):
        table.add_column(column, justify="right")
    for record in result.records:
        table.add_row(
            _fmt(record["A"]),
            _fmt(record["a"]),
            record["kind"],
            _fmt(record["rho_star"]),
            _fmt(record["sigma1"]),
            _fmt(record["sigma2"]),
            _fmt(record["max_density"]),
            _fmt(record["l1_error"]),
            record["error"],
        )
    console.print(table)
    _print_prediction(config)
    for name, ok in result.checks.items():
        console.print(f"{'[green]PASS[/green]' if ok else '[red]FAIL[/red]'} {name}")
    console.print(f"wrote {len(paths)} files to {config.outputs}")
    raise typer.Exit(code=result.exit_code)


@app.command()
def converge(
    config_path: ConfigOption = None,
    preset: PresetOption = None,
    variant: VariantOption = 1,
    n_values: Annotated[str, typer.Option("--n-values", help="Grid sizes")] = "200,400,800",
    cfl: CflOption = None,
    t_end: TEndOption = None,
) -> None:
    """Grid convergence of L1(rho) against the exact solution for the first pair."""
    config = _load(config_path, preset, variant, None, None, cfl, t_end)
    try:
        study = harness.convergence_study(config, [int(n) for n in n_values.split(",")])
    except RiemannToolkitError as e:
        console.print(f"[red]convergence study failed:[/red] {e}")
        raise typer.Exit(code=EXIT_ERROR) from e

    table = Table(title="L1(rho) convergence")
    table.add_column("N", justify="right")
    table.add_column("L1 error", justify="right")
    table.add_column("ratio", justify="right")
    ratios: list[float | None] = [None, *study.ratios]
    for n, error, ratio in zip(study.n_values, study.errors, ratios):
        table.add_row(str(n), _fmt(error), _fmt(ratio))
    console.print(table)
    decreasing = all(r < 1.0 for r in study.ratios)
    raise typer.Exit(code=EXIT_PASS if decreasing else EXIT_ASSERTION)


if __name__ == "__main__":
    app()
