from app.infrastructure.bench.harness import format_report, run_benchmark, run_suite
from app.infrastructure.bench.programs import SUITE, select

__all__ = ["SUITE", "format_report", "run_benchmark", "run_suite", "select"]
