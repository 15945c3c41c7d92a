"""Clause store of an engine.

Families are kept in insertion order of their indicators, clauses in assert order. Lookups hand out tuples of
candidates that are rebuilt after each modification, so a running call keeps the view it started with while the
store changes under it.
"""

from loguru import logger

from app.domain.models.clause import Clause
from app.domain.models.indicator import Indicator
from app.domain.models.term import Structure, Term
from app.domain.services.unification import rename, unify
from app.infrastructure.resolution.runtime import CompiledClause, IndexKey

# buckets kept per family before the cache is reset
_BUCKET_LIMIT = 4096


def _rule_form(clause: Clause) -> Term:
    """Clause as ``H :- B``, facts included with the ``true`` body."""
    return Structure(":-", (clause.head, clause.body))


class Family:
    """Clauses sharing one indicator, with a first argument index."""

    __slots__ = ("indicator", "clauses", "dynamic", "_variants", "_all", "_groups", "_buckets", "_open")

    def __init__(self, indicator: Indicator, dynamic: bool = False):
        self.indicator = indicator
        self.clauses: list[CompiledClause] = []
        self.dynamic = dynamic
        self._variants: set[tuple] = set()
        self._invalidate()

    def _invalidate(self):
        self._all: tuple[CompiledClause, ...] | None = None
        self._groups: dict[IndexKey, tuple[CompiledClause, ...]] | None = None
        self._buckets: dict[IndexKey, tuple[CompiledClause, ...]] = {}
        self._open = False

    def __len__(self) -> int:
        return len(self.clauses)

    def contains_variant(self, compiled: CompiledClause) -> bool:
        """Check if a variant of the clause is already stored."""
        return compiled.variant in self._variants

    def add(self, compiled: CompiledClause, front: bool = False) -> bool:
        """Store the clause unless a variant is already present."""
        if compiled.variant in self._variants:
            return False
        if front:
            self.clauses.insert(0, compiled)
        else:
            self.clauses.append(compiled)
        self._variants.add(compiled.variant)
        self._invalidate()
        return True

    def remove(self, position: int) -> CompiledClause:
        """Remove the clause at a position."""
        compiled = self.clauses.pop(position)
        self._variants.discard(compiled.variant)
        self._invalidate()
        return compiled

    def candidates(self, key: IndexKey, indexing: bool = True) -> tuple[CompiledClause, ...]:
        """Clauses whose first argument may match a call with the given key, in order.

        Args:
            key (IndexKey): index key of the call first argument, None when it is unbound
            indexing (bool, optional): use the first argument index. Defaults to True.
        """
        every = self._all
        if every is None:
            every = self._all = tuple(self.clauses)
        if key is None or not indexing:
            return every
        if self._groups is None:
            self._build_groups(every)
        if not self._open:
            return self._groups.get(key, ())  # type: ignore[union-attr]
        bucket = self._buckets.get(key)
        if bucket is None:
            if len(self._buckets) >= _BUCKET_LIMIT:
                self._buckets.clear()
            bucket = self._buckets[key] = tuple(clause for clause in every if clause.key is None or clause.key == key)
        return bucket

    def _build_groups(self, every: tuple[CompiledClause, ...]):
        groups: dict[IndexKey, list[CompiledClause]] = {}
        for clause in every:
            if clause.key is None:
                self._open = True
            else:
                groups.setdefault(clause.key, []).append(clause)
        self._groups = {key: tuple(group) for key, group in groups.items()}

    def copy(self) -> "Family":
        """Independent family sharing the compiled clauses."""
        family = Family(self.indicator, self.dynamic)
        family.clauses = list(self.clauses)
        family._variants = set(self._variants)
        return family


class KnowledgeBase:
    """Ordered map of indicator to clause family."""

    def __init__(self):
        self._families: dict[Indicator, Family] = {}

    def family(self, indicator: Indicator) -> Family | None:
        """Family of the indicator, None when it was never defined."""
        return self._families.get(indicator)

    def declare(self, indicator: Indicator) -> Family:
        """Define a family, possibly empty, that keeps existing when its last clause is removed."""
        family = self._families.get(indicator)
        if family is None:
            family = self._families[indicator] = Family(indicator, dynamic=True)
        family.dynamic = True
        return family

    def add(self, clause: Clause, front: bool = False) -> bool:
        """Store a clause at the front or back of its family.

        Returns:
            bool: False when a variant of the clause is already stored
        """
        compiled = CompiledClause(clause)
        indicator = clause.prolog_indicator
        family = self._families.get(indicator)
        if family is None:
            family = self._families[indicator] = Family(indicator)
        added = family.add(compiled, front)
        if not added:
            logger.debug(f"Clause {clause} already stored, skipped")
        return added

    def _matching(self, clause: Clause) -> tuple[Family | None, int]:
        family = self._families.get(clause.prolog_indicator)
        if family is None:
            return None, -1
        target = _rule_form(clause)
        for position, compiled in enumerate(family.clauses):
            if unify(rename(_rule_form(compiled.clause), {}), target) is not None:
                return family, position
        return family, -1

    def contains(self, clause: Clause) -> bool:
        """Check if a stored clause unifies with the given one, head and body."""
        return self._matching(clause)[1] >= 0

    def retract(self, clause: Clause) -> bool:
        """Remove the first stored clause that unifies with the given one."""
        family, position = self._matching(clause)
        if family is None or position < 0:
            return False
        family.remove(position)
        self._drop_if_empty(family)
        return True

    def remove(self, family: Family, compiled: CompiledClause) -> bool:
        """Remove a given compiled clause, used by the runtime retract."""
        for position, stored in enumerate(family.clauses):
            if stored is compiled:
                family.remove(position)
                self._drop_if_empty(family)
                return True
        return False

    def _drop_if_empty(self, family: Family):
        if not family.clauses and not family.dynamic:
            self._families.pop(family.indicator, None)

    def abolish(self, indicator: Indicator) -> bool:
        """Remove a whole family."""
        return self._families.pop(indicator, None) is not None

    def indicators(self) -> list[Indicator]:
        """Defined indicators in definition order."""
        return list(self._families)

    def families(self) -> list[Family]:
        """Defined families in definition order."""
        return list(self._families.values())

    def clauses(self, indicator: Indicator | None = None) -> list[Clause]:
        """Stored clauses of one family, or of the whole program in order."""
        if indicator is not None:
            family = self._families.get(indicator)
            return [compiled.clause for compiled in family.clauses] if family is not None else []
        return [compiled.clause for family in self._families.values() for compiled in family.clauses]

    def size(self) -> int:
        """Number of stored clauses."""
        return sum(len(family) for family in self._families.values())

    def is_empty(self) -> bool:
        """True when no clause is stored."""
        return all(not family.clauses for family in self._families.values())

    def clear(self):
        """Remove every family."""
        self._families.clear()

    def copy(self) -> "KnowledgeBase":
        """Independent copy, used to load a program atomically."""
        knowledge = KnowledgeBase()
        knowledge._families = {indicator: family.copy() for indicator, family in self._families.items()}
        return knowledge
