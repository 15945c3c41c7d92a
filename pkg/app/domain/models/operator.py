from dataclasses import dataclass
from functools import total_ordering

from app.core.errors import PrologError
from app.domain.schemas.types import Specifier

MAX_PRIORITY = 1200
ARGUMENT_PRIORITY = 999


@total_ordering
@dataclass(frozen=True, slots=True, eq=True)
class Operator:
    """Operator definition: name, specifier and priority.

    Operators compare by priority, so sorting a table orders it from the tightest to the loosest binding.
    """

    priority: int
    specifier: Specifier
    name: str

    def __post_init__(self):
        if not 0 <= self.priority <= MAX_PRIORITY:
            raise PrologError(f"Operator priority must be between 0 and {MAX_PRIORITY}, got {self.priority}")
        if not isinstance(self.specifier, Specifier):
            raise PrologError(f"Invalid operator specifier: {self.specifier}, options: {Specifier.values()}")
        if not self.name:
            raise PrologError("Operator name can not be empty")

    def __lt__(self, other: "Operator") -> bool:
        if not isinstance(other, Operator):
            return NotImplemented
        return (self.priority, self.specifier.value, self.name) < (other.priority, other.specifier.value, other.name)

    @classmethod
    def of(cls, priority: int, specifier: str | Specifier, name: str) -> "Operator":
        """Build an operator from a textual specifier like ``xfx``."""
        if isinstance(specifier, str):
            try:
                specifier = Specifier(specifier.strip().lower())
            except ValueError as e:
                raise PrologError(f"Invalid operator specifier: {specifier}, options: {Specifier.values()}") from e
        return cls(priority, specifier, name)

    @property
    def arity(self) -> int:
        """Number of operands taken by the operator."""
        return 2 if self.specifier.is_infix else 1

    @property
    def left_max(self) -> int:
        """Maximum priority accepted by the left operand of an infix or postfix operator."""
        return self.priority if self.specifier in (Specifier.YFX, Specifier.YF) else self.priority - 1

    @property
    def right_max(self) -> int:
        """Maximum priority accepted by the right operand of an infix or prefix operator."""
        return self.priority if self.specifier in (Specifier.XFY, Specifier.FY) else self.priority - 1

    def __str__(self) -> str:
        return f"op({self.priority}, {self.specifier.value}, {self.name})"


ISO_OPERATORS: tuple[Operator, ...] = (
    Operator(1200, Specifier.XFX, ":-"),
    Operator(1200, Specifier.FX, ":-"),
    Operator(1200, Specifier.FX, "?-"),
    Operator(1100, Specifier.XFY, ";"),
    Operator(1050, Specifier.XFY, "->"),
    Operator(1000, Specifier.XFY, ","),
    Operator(900, Specifier.FY, "\\+"),
    *(
        Operator(700, Specifier.XFX, name)
        for name in ("=", "\\=", "==", "\\==", "@<", "@>", "@=<", "@>=", "=..", "is", "=:=", "=\\=", "<", ">", "=<", ">=")
    ),
    Operator(500, Specifier.YFX, "+"),
    Operator(500, Specifier.YFX, "-"),
    Operator(500, Specifier.YFX, "/\\"),
    Operator(500, Specifier.YFX, "\\/"),
    Operator(500, Specifier.YFX, "xor"),
    Operator(400, Specifier.YFX, "*"),
    Operator(400, Specifier.YFX, "/"),
    Operator(400, Specifier.YFX, "//"),
    Operator(400, Specifier.YFX, "rem"),
    Operator(400, Specifier.YFX, "mod"),
    Operator(400, Specifier.YFX, "<<"),
    Operator(400, Specifier.YFX, ">>"),
    Operator(200, Specifier.XFX, "**"),
    Operator(200, Specifier.XFY, "^"),
    Operator(200, Specifier.FY, "-"),
    Operator(200, Specifier.FY, "+"),
    Operator(200, Specifier.FY, "\\"),
)


class OperatorTable:
    """Mutable set of operators indexed by name and position.

    A name holds at most one prefix, one infix and one postfix definition. Defining an existing pair again
    replaces it, and priority 0 removes it.
    """

    def __init__(self, operators: tuple[Operator, ...] | list[Operator] = ISO_OPERATORS):
        self._prefix: dict[str, Operator] = {}
        self._infix: dict[str, Operator] = {}
        self._postfix: dict[str, Operator] = {}
        for operator in operators:
            self.add(operator)

    def _slot(self, specifier: Specifier) -> dict[str, Operator]:
        if specifier.is_prefix:
            return self._prefix
        if specifier.is_postfix:
            return self._postfix
        return self._infix

    def add(self, operator: Operator):
        """Define, replace or (priority 0) remove an operator."""
        slot = self._slot(operator.specifier)
        if operator.priority == 0:
            slot.pop(operator.name, None)
        else:
            slot[operator.name] = operator

    def define(self, priority: int, specifier: str | Specifier, name: str) -> Operator:
        """Define an operator from its textual parts."""
        operator = Operator.of(priority, specifier, name)
        self.add(operator)
        return operator

    def prefix(self, name: str) -> Operator | None:
        """Prefix definition of the name, if any."""
        return self._prefix.get(name)

    def infix(self, name: str) -> Operator | None:
        """Infix definition of the name, if any."""
        return self._infix.get(name)

    def postfix(self, name: str) -> Operator | None:
        """Postfix definition of the name, if any."""
        return self._postfix.get(name)

    def is_operator(self, name: str) -> bool:
        """Check if the name has any operator definition."""
        return name in self._prefix or name in self._infix or name in self._postfix

    def contains(self, priority: int, specifier: str | Specifier, name: str) -> bool:
        """Check if exactly this operator is defined."""
        try:
            operator = Operator.of(priority, specifier, name)
        except PrologError:
            return False
        return self._slot(operator.specifier).get(name) == operator

    def operators(self) -> set[Operator]:
        """All the defined operators."""
        return {*self._prefix.values(), *self._infix.values(), *self._postfix.values()}

    def copy(self) -> "OperatorTable":
        """Independent copy, used to parse a program without touching the live table."""
        return OperatorTable(tuple(self.operators()))

    def user_defined(self) -> list[Operator]:
        """Operators that differ from the default table, sorted."""
        return sorted(self.operators() - set(ISO_OPERATORS))

    def __len__(self) -> int:
        return len(self._prefix) + len(self._infix) + len(self._postfix)
