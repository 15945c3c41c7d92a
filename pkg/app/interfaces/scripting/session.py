"""Eval style scripting over an engine.

Text starting with ``?-`` is a goal: it is solved and the first solution is kept as the current bindings. Any other
text is program source merged into the knowledge base. Bindings are read back as host values with ``get``.
"""

from io import StringIO
from pathlib import Path
from typing import Any, TextIO

from loguru import logger

from app.domain.models.term import Term, Variable
from app.domain.services.converter import HostConverter
from app.domain.services.unification import substitute
from app.infrastructure.resolution.engine import PrologEngine

GOAL_PREFIX = "?-"


def is_goal_text(text: str) -> bool:
    """Check if the script text is a goal."""
    return text.lstrip().startswith(GOAL_PREFIX)


class ScriptSession:
    """Scripting session wrapping one engine.

    Args:
        engine (PrologEngine, optional): engine to script. Defaults to a new empty engine.
        converter (HostConverter, optional): converter of the bindings. Defaults to a new one.
    """

    def __init__(self, engine: PrologEngine | None = None, converter: HostConverter | None = None):
        self.engine = engine or PrologEngine()
        self.converter = converter or HostConverter()
        self._bindings: dict[str, Term] = {}
        self._preset: dict[Variable, Term] = {}

    @property
    def bindings(self) -> dict[str, Any]:
        """Host values of the last successful goal."""
        return {name: self.get(name) for name in self._bindings}

    def eval(self, script: str | Path | TextIO) -> bool:
        """Evaluate goal or clause text, or merge a program read from a path or a reader.

        Raises:
            PrologSyntaxError: when the text is malformed
            PrologError: when the goal raises an error
        """
        if isinstance(script, str):
            return self.eval_text(script)
        return self.eval_source(script)

    def eval_text(self, text: str) -> bool:
        """Solve ``?- G.`` text, or merge clause text.

        Returns:
            bool: for a goal, True when it has a solution; for clauses, True once they are stored
        """
        if is_goal_text(text):
            return self._solve(text.lstrip()[len(GOAL_PREFIX) :])
        return self.eval_source(StringIO(text))

    def eval_source(self, source: Path | TextIO) -> bool:
        """Merge a program into the engine, nothing is stored when it is malformed."""
        self.engine.include(source)
        return True

    def _solve(self, text: str) -> bool:
        goal = self.engine.parser.parse_term(text)
        if self._preset:
            goal = substitute(goal, self._preset)
            self._preset = {}
        with self.engine.query(goal) as query:
            solutions = query.n_variables_solutions(1)
        self._bindings = solutions[0] if solutions else {}
        logger.debug(f"Eval {goal}: {'true' if solutions else 'false'}")
        return bool(solutions)

    def get(self, name: str) -> Any:
        """Host value bound to the variable by the last successful goal, None when unbound or unknown."""
        term = self._bindings.get(name)
        if term is None or term.is_variable():
            return None
        return self.converter.from_term(term)

    def put(self, name: str, value: Any):
        """Bind a variable of the next goal to a host value or a term."""
        term = value if isinstance(value, Term) else self.converter.to_term(value)
        self._preset[Variable(name)] = term

    def query(self, text: str) -> list[dict[str, Any]]:
        """Every solution of a goal, with or without the ``?-`` prefix, as host value maps."""
        text = text.lstrip()
        if text.startswith(GOAL_PREFIX):
            text = text[len(GOAL_PREFIX) :]
        with self.engine.query(text) as query:
            return query.all_variables_results()

    def clear(self):
        """Drop the bindings and the preset variables."""
        self._bindings = {}
        self._preset = {}
