"""Command line application.

Exit codes: 0 on success, 1 when a one shot query has no solution, 2 on usage, syntax and engine errors.
"""

from pathlib import Path

import typer
from loguru import logger

from app.core.config import settings
from app.core.errors import PrologError
from app.domain.schemas.types import ReportFormat
from app.domain.services.converter import HostConverter
from app.domain.services.printer import TermPrinter
from app.infrastructure.bench.harness import format_report, run_suite
from app.infrastructure.resolution.engine import PrologEngine
from app.interfaces.cli.repl import PrologRepl, format_solution

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

cli = typer.Typer(
    name=settings.APP_NAME,
    help="Embeddable Prolog engine: interactive shell, one shot queries and benchmarks.",
    no_args_is_help=True,
    add_completion=False,
)


def _fail(message: str, code: int = EXIT_USAGE) -> typer.Exit:
    typer.echo(message, err=True)
    return typer.Exit(code)


@cli.callback()
def main_callback(
    log_level: str | None = typer.Option(None, "--log-level", help="trace, debug, info, warn or error"),
):
    """Configure the logger before running a command."""
    if log_level is not None:
        try:
            settings.LOGGER.setup_logger(log_level)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--log-level") from e


@cli.command()
def repl(goals: bool = typer.Option(False, "--goals", help="Read bare statements as goals")):
    """Start the interactive shell on an empty engine."""
    raise typer.Exit(PrologRepl(PrologEngine(), goals=goals).run())


@cli.command()
def consult(
    file: Path = typer.Argument(..., help="Program file"),
    goals: bool = typer.Option(False, "--goals", help="Read bare statements as goals"),
):
    """Consult a program and start the interactive shell on it."""
    engine = PrologEngine()
    try:
        engine.consult(file)
    except PrologError as e:
        raise _fail(f"Error: {e}") from e
    raise typer.Exit(PrologRepl(engine, goals=goals).run())


@cli.command()
def query(
    goal: str = typer.Argument(..., help="Goal text, e.g. \"dark(X)\""),
    every: bool = typer.Option(False, "--all", help="Print every solution"),
    count: int | None = typer.Option(None, "-n", min=0, help="Print at most this many solutions"),
    host: bool = typer.Option(False, "--host", help="Print the bindings as host values"),
    files: list[Path] = typer.Option([], "--consult", "-c", help="Program file to load, repeatable"),
):
    """Run one goal and print its solutions, exit code 1 when it has none."""
    engine = PrologEngine()
    try:
        for file in files:
            engine.include(file)
        with engine.query(goal) as cursor:
            if every:
                solutions = cursor.all()
            else:
                solutions = cursor.n_variables_solutions(1 if count is None else count)
        lines = _render(engine, solutions, host)
    except PrologError as e:
        raise _fail(f"Error: {e}") from e
    if not solutions:
        raise _fail("false.", EXIT_FAILURE)
    for line in lines:
        typer.echo(line)


def _render(engine: PrologEngine, solutions: list, host: bool) -> list[str]:
    if not host:
        printer = TermPrinter(engine.operators)
        return [format_solution(solution, printer) for solution in solutions]
    converter = HostConverter()
    lines = []
    for solution in converter.to_object_maps(solutions):
        lines.append(", ".join(f"{name} = {value!r}" for name, value in solution.items()) or "true")
    return lines


@cli.command()
def bench(
    names: str | None = typer.Option(None, "--names", help="Comma separated benchmark names, all when absent"),
    iterations: int | None = typer.Option(None, "--iterations", min=1, help="Measured iterations"),
    warmup: int | None = typer.Option(None, "--warmup", min=0, help="Unmeasured iterations"),
    report_format: str = typer.Option(settings.BENCH.BENCH_FORMAT.value, "--format", help="table or csv"),
    indexing: bool = typer.Option(True, "--indexing/--no-indexing", help="First argument indexing"),
):
    """Run the benchmark suite and print the timing report in milliseconds per goal."""
    if report_format not in ReportFormat.values():
        raise typer.BadParameter(f"Expected one of {', '.join(ReportFormat.values())}", param_hint="--format")
    selected = [name.strip() for name in names.split(",") if name.strip()] if names else None
    try:
        results = run_suite(selected, iterations, warmup, indexing)
    except PrologError as e:
        raise _fail(f"Error: {e}") from e
    logger.info(f"Benchmarked {len(results)} programs")
    typer.echo(format_report(results, ReportFormat(report_format)), nl=False)
