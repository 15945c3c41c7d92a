"""Benchmark harness: timing of the suite programs and the report of their statistics."""

import time
from collections.abc import Iterable
from io import StringIO

import numpy as np
import pandas as pd

from app.core.config import settings
from app.core.errors import PrologError
from app.core.utils.logs import Profiler
from app.domain.schemas.bench import BenchmarkSpec, BenchResult
from app.domain.schemas.types import ReportFormat
from app.infrastructure.bench.programs import select
from app.infrastructure.resolution.engine import PrologEngine
from app.infrastructure.resolution.machine import MachineStats

# two sided 95% normal quantile
CONFIDENCE = 1.96

COLUMNS = ["Benchmark", "Min", "Ave", "Max", "Error", "Stdev"]


def statistics(samples: Iterable[float]) -> dict[str, float]:
    """Minimum, mean, maximum, sample standard deviation and 95% error of the mean.

    Args:
        samples (Iterable[float]): one value per iteration

    Returns:
        dict[str, float]: keys min, avg, max, stdev and error
    """
    values = np.asarray(list(samples), dtype=np.float64)
    if values.size == 0:
        raise PrologError("No samples to summarize")
    low, high = float(values.min()), float(values.max())
    stdev = float(values.std(ddof=1)) if values.size > 1 else 0.0
    return {
        "min": low,
        # the float mean of equal samples can overshoot them by an ulp
        "avg": float(np.clip(values.mean(), low, high)),
        "max": high,
        "stdev": stdev,
        "error": CONFIDENCE * stdev / float(np.sqrt(values.size)),
    }


def _execute(engine: PrologEngine, spec: BenchmarkSpec, goal: object) -> tuple[int, list, MachineStats]:
    start = time.perf_counter_ns()
    with engine.query(goal) as query:  # type: ignore[arg-type]
        solutions = query.all() if spec.all_solutions else query.n_variables_solutions(1)
        elapsed = time.perf_counter_ns() - start
        stats = query.stats
    if not solutions:
        raise PrologError(f"Benchmark {spec.name.value}: the goal {spec.goal} failed")
    outcome = [{name: str(value) for name, value in solution.items()} for solution in solutions]
    return max(elapsed, 1), outcome, stats


def run_benchmark(
    spec: BenchmarkSpec,
    iterations: int | None = None,
    warmup: int | None = None,
    indexing: bool = True,
) -> BenchResult:
    """Load the program in a fresh engine and time its goal.

    Args:
        spec (BenchmarkSpec): benchmark to run
        iterations (int, optional): measured iterations. Defaults to the bench settings.
        warmup (int, optional): unmeasured iterations run first. Defaults to the bench settings.
        indexing (bool, optional): first argument indexing. Defaults to True.

    Raises:
        PrologError: when the goal fails, or gives a different result on some iteration

    Returns:
        BenchResult: milliseconds per goal execution
    """
    iterations = settings.BENCH.BENCH_ITERATIONS if iterations is None else iterations
    warmup = settings.BENCH.BENCH_WARMUP if warmup is None else warmup
    if iterations < 1 or warmup < 0:
        raise PrologError(f"Benchmark {spec.name.value}: expected iterations >= 1 and warmup >= 0")
    profiler = Profiler(spec.name.value)
    engine = PrologEngine(indexing=indexing)
    engine.include(StringIO(spec.program))
    goal = engine.parser.parse_term(spec.goal)
    profiler.debug(f"Loaded {engine.get_program_size()} clauses")

    expected = None
    samples = []
    stats = MachineStats()
    for iteration in range(warmup + iterations):
        elapsed, outcome, stats = _execute(engine, spec, goal)
        if expected is None:
            expected = outcome
        elif outcome != expected:
            raise PrologError(f"Benchmark {spec.name.value}: iteration {iteration} gave a different result")
        if iteration >= warmup:
            samples.append(elapsed / 1e6)
    summary = statistics(samples)
    profiler.debug(
        f"{iterations} iterations, {stats.inferences} inferences, {stats.cuts} cuts per iteration,"
        f" avg {summary['avg']:.4f} ms"
    )
    return BenchResult(
        name=spec.name,
        iterations=iterations,
        indexing=indexing,
        inferences=stats.inferences,
        cuts=stats.cuts,
        **summary,
    )


def run_suite(
    names: list[str] | None = None,
    iterations: int | None = None,
    warmup: int | None = None,
    indexing: bool = True,
) -> list[BenchResult]:
    """Run the selected benchmarks in order, every benchmark when no name is given.

    Raises:
        PrologError: on an unknown name or a failing benchmark
    """
    specs = select(names)
    profiler = Profiler("bench")
    results = []
    for spec in specs:
        results.append(run_benchmark(spec, iterations, warmup, indexing))
        profiler.info(f"Benchmark {spec.name.value} done")
    return results


def report_frame(results: list[BenchResult]) -> pd.DataFrame:
    """One row per benchmark with the statistics columns in milliseconds per operation."""
    rows = [[result.name.value, result.min, result.avg, result.max, result.error, result.stdev] for result in results]
    return pd.DataFrame(rows, columns=COLUMNS)


def format_report(results: list[BenchResult], report_format: ReportFormat = ReportFormat.TABLE) -> str:
    """Render the results as an aligned table or as comma separated values with a header row."""
    frame = report_frame(results)
    if report_format is ReportFormat.CSV:
        return frame.rename(columns=str.lower).to_csv(index=False, float_format="%.6f", lineterminator="\n")
    return frame.to_string(index=False, float_format=lambda value: f"{value:.4f}") + "\n"
