"""Depth first resolution machine with backtracking.

The machine walks a continuation, a linked tuple ``(goal, frame, barrier, next)``. A goal with a frame is a clause
body template still to be instantiated; the barrier is the choicepoint height a cut in that goal returns to.
Choicepoints are plain lists on a stack: clause alternatives of a call, or an alternative continuation pushed by
disjunction, if-then-else and negation.
"""

from collections.abc import Iterator
from dataclasses import dataclass
from typing import Any

from app.core.errors import PrologError
from app.core.logging import PrologLogger
from app.domain.models.indicator import Indicator
from app.domain.models.operator import OperatorTable
from app.domain.models.term import FAIL, Atom, ListTerm, Structure, new_list
from app.infrastructure.resolution.builtins import BUILTINS
from app.infrastructure.resolution.knowledge import KnowledgeBase
from app.infrastructure.resolution.runtime import (
    Cell,
    CompiledClause,
    Slot,
    build,
    deref,
    index_key,
    instantiate,
    resolve,
    unify,
    unify_head,
)

CLAUSES = 0
ALTERNATIVE = 1

_FAILED: Any = object()


class CutTo:
    """Internal goal removing the choicepoints above a height."""

    __slots__ = ("height",)

    def __init__(self, height: int):
        self.height = height


@dataclass(slots=True)
class MachineStats:
    """Counters of one resolution run."""

    inferences: int = 0
    cuts: int = 0
    backtracks: int = 0
    choicepoints: int = 0

    def merge(self, other: "MachineStats"):
        """Add the counters of a nested run."""
        self.inferences += other.inferences
        self.cuts += other.cuts
        self.backtracks += other.backtracks
        self.choicepoints += other.choicepoints


def add_arguments(goal: object, extra: tuple) -> object:
    """Goal of ``call/N``: the closure with extra arguments appended."""
    goal = deref(goal)
    if type(goal) is Atom:
        return Structure(goal.functor, extra)  # type: ignore[attr-defined]
    if type(goal) is Structure:
        return Structure(goal.functor, (*goal.arguments, *extra))  # type: ignore[attr-defined]
    if type(goal) is Cell:
        raise PrologError("Instantiation error: call/N with an unbound closure")
    raise PrologError(f"Type error: callable expected, found {goal}")


class Machine:
    """Solve one goal against a knowledge base.

    Args:
        knowledge (KnowledgeBase): clauses to resolve against
        operators (OperatorTable): table changed by the ``op/3`` built-in
        indexing (bool, optional): use first argument indexing. Defaults to True.
        occurs_check (bool, optional): reject cyclic bindings. Defaults to False.
        trim_trail (bool, optional): drop the trail when no choicepoint is left. Defaults to True.
        logger (PrologLogger, optional): logger for unknown procedures. Defaults to a new one.
    """

    def __init__(
        self,
        knowledge: KnowledgeBase,
        operators: OperatorTable,
        indexing: bool = True,
        occurs_check: bool = False,
        trim_trail: bool = True,
        logger: PrologLogger | None = None,
    ):
        self.knowledge = knowledge
        self.operators = operators
        self.indexing = indexing
        self.occurs_check = occurs_check
        self.trim_trail = trim_trail
        self.logger = logger or PrologLogger(self)
        self.trail: list[Cell] = []
        self.choicepoints: list[list] = []
        self.stats = MachineStats()
        self._indicators: dict[tuple[str, int], Indicator] = {}
        self._warned: set[Indicator] = set()
        self._control = {
            ("true", 0): self._true,
            ("fail", 0): self._fail,
            ("false", 0): self._fail,
            ("!", 0): self._cut,
            (",", 2): self._conjunction,
            (";", 2): self._disjunction,
            ("->", 2): self._if_then,
            ("\\+", 1): self._negation,
            ("not", 1): self._negation,
            ("findall", 3): self._findall,
            **{("call", arity): self._call for arity in range(1, 9)},
        }

    # bindings
    def unify(self, left: object, right: object) -> bool:
        """Unify two runtime terms, the bindings are trailed."""
        return unify(left, right, self.trail, self.occurs_check)

    def undo(self, mark: int):
        """Reset the bindings recorded after a trail mark."""
        trail = self.trail
        while len(trail) > mark:
            trail.pop().ref = None

    # main loop
    def solve(self, goal: object) -> Iterator[None]:
        """Run the goal, yielding once per solution with the bindings in place.

        Args:
            goal (object): runtime goal term

        Raises:
            PrologError: on instantiation, type and evaluation errors
        """
        choicepoints = self.choicepoints
        stats = self.stats
        control = self._control
        continuation: Any = (goal, None, 0, None)
        while True:
            if continuation is None:
                yield
                continuation = self._backtrack()
                if continuation is _FAILED:
                    return
                continue
            goal, frame, barrier, rest = continuation
            if frame is not None:
                if type(goal) is Slot:
                    barrier = len(choicepoints)
                goal = build(goal, frame)
            elif type(goal) is CutTo:
                del choicepoints[goal.height :]
                continuation = rest
                continue
            goal = deref(goal)
            kind = type(goal)
            if kind is Structure or kind is ListTerm:
                name, args = goal.functor, goal.arguments
            elif kind is Atom:
                name, args = goal.functor, ()
            elif kind is Cell:
                raise PrologError("Instantiation error: the goal is an unbound variable")
            else:
                raise PrologError(f"Type error: callable expected, found {goal}")
            stats.inferences += 1
            key = (name, len(args))
            handler = control.get(key)
            if handler is not None:
                continuation = handler(args, barrier, rest)
            else:
                builtin = BUILTINS.get(key)
                if builtin is not None:
                    continuation = rest if builtin(self, args) else _FAILED
                else:
                    continuation = self._call_predicate(key, goal, args, rest)
            if continuation is _FAILED:
                continuation = self._backtrack()
                if continuation is _FAILED:
                    return

    def _backtrack(self) -> Any:
        choicepoints = self.choicepoints
        while choicepoints:
            choicepoint = choicepoints[-1]
            self.undo(choicepoint[1])
            self.stats.backtracks += 1
            if choicepoint[0] == ALTERNATIVE:
                choicepoints.pop()
                return choicepoint[2]
            continuation = self._try(choicepoint[2], choicepoint[3], choicepoint[4], choicepoint[5], choicepoint)
            if continuation is not _FAILED:
                return continuation
        return _FAILED

    # user predicates
    def _call_predicate(self, key: tuple[str, int], goal: object, args: tuple, rest: Any) -> Any:
        indicator = self._indicators.get(key)
        if indicator is None:
            indicator = self._indicators[key] = Indicator(*key)
        family = self.knowledge.family(indicator)
        if family is None:
            if indicator not in self._warned:
                self._warned.add(indicator)
                self.logger.warn(self, f"Unknown procedure {indicator}, the goal fails")
            return _FAILED
        first = index_key(deref(args[0])) if args else None
        candidates = family.candidates(first, self.indexing)
        return self._try(goal, candidates, 0, rest, None)

    def _try(
        self,
        goal: object,
        candidates: tuple[CompiledClause, ...],
        start: int,
        rest: Any,
        choicepoint: list | None,
    ) -> Any:
        choicepoints = self.choicepoints
        trail = self.trail
        height = len(choicepoints) if choicepoint is None else len(choicepoints) - 1
        mark = len(trail)
        total = len(candidates)
        position = start
        while position < total:
            compiled = candidates[position]
            position += 1
            frame: list = [None] * compiled.size
            if unify_head(compiled.head, goal, frame, trail, self.occurs_check):
                if position < total:
                    if choicepoint is None:
                        choicepoints.append([CLAUSES, mark, goal, candidates, position, rest])
                        self.stats.choicepoints += 1
                    else:
                        choicepoint[4] = position
                elif choicepoint is not None:
                    choicepoints.pop()
                if not choicepoints and self.trim_trail:
                    trail.clear()
                continuation = rest
                for body_goal in reversed(compiled.body):
                    continuation = (body_goal, frame, height, continuation)
                return continuation
            self.undo(mark)
        if choicepoint is not None:
            choicepoints.pop()
        return _FAILED

    # control constructs
    def _true(self, args: tuple, barrier: int, rest: Any) -> Any:
        return rest

    def _fail(self, args: tuple, barrier: int, rest: Any) -> Any:
        return _FAILED

    def _cut(self, args: tuple, barrier: int, rest: Any) -> Any:
        self.stats.cuts += 1
        del self.choicepoints[barrier:]
        if not self.choicepoints and self.trim_trail:
            self.trail.clear()
        return rest

    def _conjunction(self, args: tuple, barrier: int, rest: Any) -> Any:
        return args[0], None, barrier, (args[1], None, barrier, rest)

    def _disjunction(self, args: tuple, barrier: int, rest: Any) -> Any:
        choicepoints = self.choicepoints
        height = len(choicepoints)
        choicepoints.append([ALTERNATIVE, len(self.trail), (args[1], None, barrier, rest)])
        left = deref(args[0])
        if type(left) is Structure and left.functor == "->" and left.arity == 2:  # type: ignore[attr-defined]
            condition, then = left.arguments  # type: ignore[attr-defined]
            return condition, None, height + 1, (CutTo(height), None, 0, (then, None, barrier, rest))
        return left, None, barrier, rest

    def _if_then(self, args: tuple, barrier: int, rest: Any) -> Any:
        height = len(self.choicepoints)
        return args[0], None, height, (CutTo(height), None, 0, (args[1], None, barrier, rest))

    def _negation(self, args: tuple, barrier: int, rest: Any) -> Any:
        choicepoints = self.choicepoints
        height = len(choicepoints)
        choicepoints.append([ALTERNATIVE, len(self.trail), rest])
        return args[0], None, height + 1, (CutTo(height), None, 0, (FAIL, None, 0, None))

    def _call(self, args: tuple, barrier: int, rest: Any) -> Any:
        goal = args[0] if len(args) == 1 else add_arguments(args[0], args[1:])
        return goal, None, len(self.choicepoints), rest

    def _findall(self, args: tuple, barrier: int, rest: Any) -> Any:
        results = self.find_all(args[0], args[1])
        return rest if self.unify(args[2], new_list(results)) else _FAILED  # type: ignore[arg-type]

    def find_all(self, template: object, goal: object) -> list:
        """Copies of the template for every solution of the goal, the goal bindings are reset afterwards."""
        nested = Machine(
            self.knowledge, self.operators, self.indexing, self.occurs_check, trim_trail=False, logger=self.logger
        )
        nested._warned = self._warned
        copies = []
        try:
            for _ in nested.solve(goal):
                copies.append(resolve(template, {}))
        finally:
            nested.undo(0)
            self.stats.merge(nested.stats)
        return [instantiate(copy) for copy in copies]
