from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.domain.schemas.types import ReportFormat


class BenchSettings(BaseSettings):
    """Benchmark harness settings."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    BENCH_ITERATIONS: int = Field(default=30, ge=1, description="Measured iterations per benchmark")
    BENCH_WARMUP: int = Field(default=5, ge=0, description="Unmeasured iterations run before measuring")
    BENCH_FORMAT: ReportFormat = Field(default=ReportFormat.TABLE, description="Report format: table or csv")
