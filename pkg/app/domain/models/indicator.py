from dataclasses import dataclass

from app.core.errors import IndicatorError


@dataclass(frozen=True, slots=True)
class Indicator:
    """Predicate signature, rendered ``functor/arity``."""

    functor: str
    arity: int

    def __post_init__(self):
        if self.arity < 0:
            raise IndicatorError(f"Indicator arity can not be negative: {self.functor}/{self.arity}")

    @classmethod
    def parse(cls, text: str) -> "Indicator":
        """Read an indicator from its ``functor/arity`` text."""
        functor, _, arity = text.rpartition("/")
        if not functor or not arity.isdigit():
            raise IndicatorError(f"Malformed indicator: {text}")
        return cls(functor, int(arity))

    @property
    def key(self) -> tuple[str, int]:
        """Tuple form used to index clause families."""
        return self.functor, self.arity

    def __str__(self) -> str:
        return f"{self.functor}/{self.arity}"
