"""Command-line interface for solgeo."""

import functools
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.table import Table

from .. import __version__
from ..catalog import build_family, build_immersion, family_table
from ..config.settings import settings
from ..data.schemas import (
    CheckResult,
    FamilyName,
    GridSpec,
    JobConfig,
    Report,
    VerifyScope,
)
from ..geometry import (
    Point,
    TangentVector,
    classify,
    curvature_apply,
    metric_eval,
    run_suite,
    sectional_curvature,
)
from ..utils.exceptions import SolGeoError
from ..utils.logging import get_logger, setup_logging
from .reports import emit, render_report, render_table

console = Console(stderr=True)
logger = get_logger("cli")

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

OutPath = click.Path(dir_okay=False, writable=True, path_type=Path)


def handle_errors(command: Callable[..., Any]) -> Callable[..., Any]:
    """Report library errors on stderr and exit with the usage code."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except (SolGeoError, ValueError) as e:
            logger.debug(f"{command.__name__} failed", exc_info=True)
            console.print(f"[red]Error: {e}[/red]")
            sys.exit(EXIT_USAGE)

    return wrapper


def print_checks(title: str, checks: list[CheckResult]) -> None:
    """Rich summary table of check rows."""
    table = Table(title=title)
    table.add_column("Check", style="cyan")
    table.add_column("Residual", justify="right")
    table.add_column("Tolerance", justify="right")
    table.add_column("Status")
    for check in checks:
        status = "[green]pass[/green]" if check.passed else "[red]FAIL[/red]"
        table.add_row(check.name, f"{check.residual:.3e}", f"{check.tolerance:.1e}", status)
    console.print(table)


@click.group()
@click.option(
    "--jobs",
    type=click.IntRange(min=1),
    default=None,
    help="Worker threads for grid sweeps (default: SOLGEO_JOBS or 1).",
)
@click.option("--seed", type=int, default=None, help="Seed for randomized oracle samples.")
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
)
@click.version_option(__version__, prog_name="solgeo")
@click.pass_context
def cli(ctx: click.Context, jobs: int | None, seed: int | None, log_level: str | None) -> None:
    """Verify Sol^4_0 geometry and classify its hypersurfaces."""
    if log_level:
        setup_logging(level=log_level.upper())
    ctx.obj = {
        "jobs": settings.jobs if jobs is None else jobs,
        "seed": settings.seed if seed is None else seed,
    }


@cli.command()
@click.argument(
    "scope", type=click.Choice([s.value for s in VerifyScope]), default=VerifyScope.ALL.value
)
@click.option("--out", type=OutPath, default=None, help="Report file (stdout when omitted).")
@click.pass_context
@handle_errors
def verify(ctx: click.Context, scope: str, out: Path | None) -> None:
    """Run oracle suites; exit 1 if any check fails."""
    seed = ctx.obj["seed"]
    rows = run_suite(scope, seed=seed)
    report = Report(
        job={"command": "verify", "scope": scope, "seed": seed},
        checks=[
            CheckResult(
                name=r.name, residual=r.max_residual, tolerance=r.tolerance, passed=r.passed
            )
            for r in rows
        ],
    )
    emit(render_report(report), out)
    print_checks(f"verify {scope}", report.checks)
    if not report.passed:
        console.print("[red]Some checks failed[/red]")
        sys.exit(EXIT_CHECK_FAILED)
    console.print(f"[green]✓[/green] {len(report.checks)} checks passed")


@cli.command()
@click.option(
    "--point", nargs=4, type=float, default=(0.0, 0.0, 0.0, 0.0), help="Base point x y z t."
)
@click.option("--u", "u_comps", nargs=4, type=float, required=True, help="Frame components.")
@click.option("--v", "v_comps", nargs=4, type=float, required=True, help="Frame components.")
@click.option("--out", type=OutPath, default=None)
@handle_errors
def curvature(
    point: tuple[float, ...],
    u_comps: tuple[float, ...],
    v_comps: tuple[float, ...],
    out: Path | None,
) -> None:
    """Sectional curvature of span{u, v} at a point."""
    p = Point(*point)
    u, v = TangentVector(p, u_comps), TangentVector(p, v_comps)
    value = sectional_curvature(p, u, v)
    riemann = curvature_apply(u, v, v)
    values = {"sectional_curvature": value, "g(R(u,v)v,u)": metric_eval(p, riemann, u)}
    values.update({f"R(u,v)v.{i}": float(c) for i, c in enumerate(riemann.comps, start=1)})
    report = Report(
        job={"command": "curvature", "point": list(point), "u": list(u_comps), "v": list(v_comps)},
        values=values,
    )
    emit(render_report(report), out)
    console.print(f"K(u, v) = [bold]{value:.17g}[/bold]")


@cli.command()
@click.argument("name", type=click.Choice([f.value for f in FamilyName]))
@click.option("--c", type=float, default=0.0, help="Level or offset constant.")
@click.option("--a", type=float, default=None, help="x coefficient of a vertical plane.")
@click.option("--b", type=float, default=None, help="y coefficient of a vertical plane.")
@click.option("--beta0", type=float, default=None, help="Initial profile angle (radians).")
@click.option("--interval", nargs=2, type=float, default=None, help="Curve interval LO HI.")
@click.option("--step", type=float, default=None, help="Profile integration step.")
@click.option("--gamma1", default=None, help="First curve component, e.g. 'cos(u)'.")
@click.option("--gamma2", default=None, help="Second curve component.")
@click.option("--extent", type=float, default=None, help="Half-width of free parameters.")
@click.option("--points", type=click.IntRange(min=1), default=None, help="Samples per axis.")
@click.option("--out", type=OutPath, default=None)
@click.pass_context
@handle_errors
def family(ctx: click.Context, name: str, out: Path | None, **params: Any) -> None:
    """Sample a hypersurface family into a data file."""
    fields = {key: value for key, value in params.items() if value is not None}
    if "points" in fields:
        fields["grid"] = GridSpec(points=fields.pop("points"))
    job = JobConfig(command="family", family=FamilyName(name), out=out, **fields)
    built = build_family(job)
    frame = family_table(built, job.grid, jobs=ctx.obj["jobs"])
    header = {"tool": settings.app_name, "version": __version__}
    header.update({f"job.{key}": value for key, value in job.echo().items()})
    header["rows"] = len(frame)
    emit(render_table(header, frame), job.out)
    console.print(
        f"[green]✓[/green] {built.immersion.name}: {len(frame)} samples, "
        f"lambda in [{frame['lambda'].min():.6g}, {frame['lambda'].max():.6g}]"
    )


@cli.command("classify")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="YAML job file.",
)
@click.option("--out", type=OutPath, default=None)
@click.pass_context
@handle_errors
def classify_command(ctx: click.Context, config_path: Path, out: Path | None) -> None:
    """Classify the hypersurface a config file describes (verdicts never fail the run)."""
    job = JobConfig.from_file(config_path)
    immersion = build_immersion(job)
    result = classify(immersion, job.grid, job.tolerances, jobs=ctx.obj["jobs"])
    values = {f"residual.{kind.value}": value for kind, value in result.residuals.items()}
    values.update(
        {
            "gauss_residual": result.gauss_residual,
            "codazzi_eq_residual": result.codazzi_eq_residual,
            "weingarten_residual": result.weingarten_residual,
            "lambda_min": result.mean_curvature_range[0],
            "lambda_max": result.mean_curvature_range[1],
            "samples": float(result.samples),
        }
    )
    report = Report(job=job.echo(), values=values, checks=result.to_checks())
    extra = {f"{kind.value}": verdict for kind, verdict in result.verdicts.items()}
    extra["normal_forms"] = ",".join(result.normal_forms)
    emit(render_report(report, extra=extra), out or job.out)
    print_checks(f"classify {immersion.name}", report.checks)


def main() -> None:
    """Run the CLI interface."""
    cli(prog_name="solgeo")


if __name__ == "__main__":
    main()
