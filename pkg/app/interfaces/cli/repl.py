"""Interactive read eval print loop over an engine.

A statement is read until its terminating period, so it can span several lines. ``?- G.`` solves the goal and
prints its bindings, ``;`` asks for the next solution; any other statement is stored as program clauses.
``halt.`` leaves the loop.
"""

from collections.abc import Callable
from io import StringIO

import typer

from app.core.errors import PrologError
from app.domain.models.term import Term
from app.domain.services.printer import TermPrinter
from app.infrastructure.resolution.engine import PrologEngine
from app.interfaces.scripting.session import GOAL_PREFIX, is_goal_text

PROMPT = "?- "
CONTINUATION = "|    "
HALT = "halt."
NEXT = ";"

Reader = Callable[[str], str]
Writer = Callable[[str], None]


def format_solution(solution: dict[str, Term], printer: TermPrinter) -> str:
    """Render the bindings of one solution, ``true`` when the goal has no variables."""
    if not solution:
        return "true"
    return ", ".join(f"{name} = {printer.format(value, 699)}" for name, value in solution.items())


def _echo(text: str):
    typer.echo(text)


def _error(text: str):
    typer.echo(text, err=True)


class PrologRepl:
    """REPL bound to one engine.

    Args:
        engine (PrologEngine, optional): engine to work on. Defaults to a new empty engine.
        goals (bool, optional): read bare statements as goals instead of clauses. Defaults to False.
        reader (Callable[[str], str], optional): line reader taking the prompt. Defaults to ``input``.
        writer (Callable[[str], None], optional): line writer. Defaults to standard output.
    """

    def __init__(
        self,
        engine: PrologEngine | None = None,
        goals: bool = False,
        reader: Reader = input,
        writer: Writer = _echo,
    ):
        self.engine = engine or PrologEngine()
        self.goals = goals
        self.reader = reader
        self.writer = writer

    def read_statement(self) -> str | None:
        """Read lines until a period ends the statement, None at the end of the input."""
        lines: list[str] = []
        prompt = PROMPT
        while True:
            try:
                line = self.reader(prompt)
            except EOFError:
                return "\n".join(lines) if lines else None
            lines.append(line)
            text = "\n".join(lines).strip()
            if not text:
                lines = []
                continue
            if text.endswith("."):
                return text
            prompt = CONTINUATION

    def run(self) -> int:
        """Loop until ``halt.`` or the end of the input.

        Returns:
            int: exit code, always 0
        """
        self.writer(f"{self.engine.get_name()} {self.engine.get_version()}, type halt. to leave")
        while True:
            statement = self.read_statement()
            if statement is None or statement.strip() == HALT:
                return 0
            try:
                self.execute(statement)
            except PrologError as e:
                _error(f"Error: {e}")

    def execute(self, statement: str):
        """Solve a goal statement or store clause statements."""
        if is_goal_text(statement):
            self.solve(statement.lstrip()[len(GOAL_PREFIX) :])
        elif self.goals:
            self.solve(statement)
        else:
            self.engine.include(StringIO(statement))
            self.writer("true.")

    def solve(self, text: str):
        """Print the solutions of a goal one by one while the user answers ``;``."""
        printer = TermPrinter(self.engine.operators)
        with self.engine.query(text) as query:
            if not query.has_more_solutions():
                self.writer("false.")
                return
            while True:
                answer = format_solution(query.next_variables_solution(), printer)
                if not query.has_more_solutions():
                    self.writer(f"{answer}.")
                    return
                try:
                    action = self.reader(f"{answer} ").strip()
                except EOFError:
                    action = ""
                if action != NEXT:
                    self.writer(".")
                    return
