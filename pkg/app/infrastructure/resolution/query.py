"""Cursor over the solutions of a goal.

Every collector reads from the same cursor, so ``all()`` after two ``next_solution()`` calls returns the remaining
solutions only. A solution maps each named variable of the goal, in first occurrence order, to its value; an
unbound variable maps to itself, or to a ``_G`` variable when it is bound to another free variable.
"""

from collections.abc import Iterator
from typing import TYPE_CHECKING, Any

from app.core.errors import PrologError
from app.domain.models.term import Term, Variable
from app.domain.schemas.types import QueryState
from app.domain.services.converter import HostConverter
from app.domain.services.unification import variables_of
from app.infrastructure.resolution.machine import MachineStats
from app.infrastructure.resolution.runtime import Cell, deref, instantiate, resolve

if TYPE_CHECKING:
    from app.infrastructure.resolution.engine import PrologEngine

Solution = dict[str, Term]


class Query:
    """Open query over an engine.

    Args:
        engine (PrologEngine): engine the query runs on
        goal (Term): goal to solve
        converter (HostConverter, optional): converter of the host collectors. Defaults to a new one.
    """

    def __init__(self, engine: "PrologEngine", goal: Term, converter: HostConverter | None = None):
        self._engine = engine
        self.goal = goal
        self.variables = [variable for variable in variables_of([goal]) if not variable.is_anonymous()]
        cells: dict = {}
        runtime = instantiate(goal, cells)
        self._cells = [(variable.name, cells[variable.key]) for variable in self.variables]
        self._machine = engine.new_machine()
        self._stream = self._machine.solve(runtime)
        self._pending: Solution | None = None
        self._delivered = 0
        self._state = QueryState.OPEN
        self._converter = converter or HostConverter()

    # state
    def _check(self):
        if self._state is QueryState.DISPOSED:
            raise PrologError("The query is disposed")

    @property
    def state(self) -> QueryState:
        """Cursor state."""
        return self._state

    @property
    def stats(self) -> MachineStats:
        """Counters of the resolution run so far."""
        return self._machine.stats

    @property
    def variable_names(self) -> list[str]:
        """Names of the solution variables in first occurrence order."""
        return [name for name, _ in self._cells]

    def get_engine(self) -> "PrologEngine":
        """Engine the query runs on."""
        return self._engine

    def _advance(self) -> bool:
        if self._pending is not None:
            return True
        if self._state is not QueryState.OPEN:
            return False
        try:
            next(self._stream)
        except StopIteration:
            self._state = QueryState.EXHAUSTED
            return False
        except PrologError:
            self._state = QueryState.EXHAUSTED
            raise
        self._pending = self._snapshot()
        return True

    def _snapshot(self) -> Solution:
        names: dict = {}
        for name, cell in self._cells:
            value = deref(cell)
            if type(value) is Cell and value not in names:
                names[value] = Variable(name)
        return {name: resolve(cell, names) for name, cell in self._cells}

    # cursor
    def has_solution(self) -> bool:
        """Check that the goal has at least one solution."""
        self._check()
        return self._delivered > 0 or self._advance()

    def has_more_solutions(self) -> bool:
        """Check that another solution is available, the cursor does not move."""
        self._check()
        return self._advance()

    def next_variables_solution(self) -> Solution:
        """Next solution as a variable name to term map.

        Raises:
            PrologError: when the query is exhausted or disposed
        """
        self._check()
        if not self._advance():
            raise PrologError(f"The query {self.goal} has no more solutions")
        solution = self._pending
        self._pending = None
        self._delivered += 1
        return solution  # type: ignore[return-value]

    def next_solution(self) -> list[Term]:
        """Next solution as a term array in variable order."""
        return list(self.next_variables_solution().values())

    # term collectors
    def one(self) -> Solution:
        """Next solution, empty when there is none."""
        self._check()
        return self.next_variables_solution() if self._advance() else {}

    def one_variables_solution(self) -> Solution:
        """Next solution map, empty when there is none."""
        return self.one()

    def one_solution(self) -> list[Term]:
        """Next solution term array, empty when there is none."""
        return list(self.one().values())

    def n_variables_solutions(self, n: int) -> list[Solution]:
        """Up to n next solution maps."""
        self._check()
        if n < 0:
            raise PrologError(f"The solution count can not be negative: {n}")
        solutions: list[Solution] = []
        while len(solutions) < n and self._advance():
            solutions.append(self.next_variables_solution())
        return solutions

    def n_solutions(self, n: int) -> list[list[Term]]:
        """Up to n next solutions as an n by m term matrix."""
        return [list(solution.values()) for solution in self.n_variables_solutions(n)]

    def all(self) -> list[Solution]:
        """Every remaining solution map."""
        self._check()
        solutions: list[Solution] = []
        while self._advance():
            solutions.append(self.next_variables_solution())
        return solutions

    def all_solutions(self) -> list[list[Term]]:
        """Every remaining solution as a term matrix."""
        return [list(solution.values()) for solution in self.all()]

    def all_variables_solutions(self) -> tuple[Solution, ...]:
        """Every remaining solution map, packed in a tuple."""
        return tuple(self.all())

    # host collectors
    def one_result(self) -> list[Any]:
        """Next solution converted to host values."""
        return self._converter.from_term_array(self.one_solution())

    def all_results(self) -> list[list[Any]]:
        """Every remaining solution converted to host values."""
        return self._converter.to_object_lists(self.all_solutions())

    def one_variables_result(self) -> dict[str, Any]:
        """Next solution map converted to host values."""
        return self._converter.to_object_map(self.one())

    def all_variables_results(self) -> list[dict[str, Any]]:
        """Every remaining solution map converted to host values."""
        return self._converter.to_object_maps(self.all())

    # lifecycle
    def dispose(self):
        """Release the cursor, a second call does nothing."""
        if self._state is QueryState.DISPOSED:
            return
        self._stream.close()
        self._pending = None
        self._state = QueryState.DISPOSED

    def __iter__(self) -> Iterator[list[Term]]:
        while self.has_more_solutions():
            yield self.next_solution()

    def __enter__(self) -> "Query":
        return self

    def __exit__(self, *exc_info: object):
        self.dispose()

    def __repr__(self) -> str:
        return f"Query({self.goal}, state={self._state.value})"
