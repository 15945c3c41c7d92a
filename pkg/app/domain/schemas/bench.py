from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.domain.schemas.types import BenchmarkName


class BenchmarkSpec(BaseModel):
    """Benchmark program: a source loaded in a fresh engine and a goal timed on it."""

    model_config = ConfigDict(frozen=True)

    name: BenchmarkName = Field(description="Benchmark name")
    description: str = Field(description="What the program stresses")
    program: str = Field(description="Program source text")
    goal: str = Field(description="Goal text run once per iteration")
    all_solutions: bool = Field(default=False, description="Collect every solution instead of the first one")


class BenchResult(BaseModel):
    """Timing statistics of one benchmark, in milliseconds per goal execution."""

    model_config = ConfigDict(frozen=True)

    name: BenchmarkName = Field(description="Benchmark name")
    min: float = Field(gt=0, description="Fastest iteration")
    avg: float = Field(gt=0, description="Mean of the iterations")
    max: float = Field(gt=0, description="Slowest iteration")
    error: float = Field(ge=0, description="Half width of the 95% confidence interval of the mean")
    stdev: float = Field(ge=0, description="Sample standard deviation")
    iterations: int = Field(ge=1, description="Measured iterations")
    indexing: bool = Field(default=True, description="First argument indexing during the run")
    inferences: int = Field(default=0, ge=0, description="Inferences of one iteration")
    cuts: int = Field(default=0, ge=0, description="Cuts executed by one iteration")

    @model_validator(mode="after")
    def check_order(self) -> "BenchResult":
        """Reject statistics where the mean is out of the observed range."""
        if not self.min <= self.avg <= self.max:
            raise ValueError(f"Expected min <= avg <= max, found {self.min}, {self.avg}, {self.max}")
        return self
