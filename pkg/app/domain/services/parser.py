"""Operator precedence parser for Prolog text.

The grammar is the ISO core subset: atoms, decimal numbers, variables, quoted atoms, lists with a ``|`` tail,
``%`` and ``/* */`` comments and a dynamic operator table. A name immediately followed by ``(`` is always a
functional term. A ``-`` immediately followed by a number, in operand position, is a negative number literal.
"""

import math
import re
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from loguru import logger

from app.core.errors import ListExpectedError, PrologSyntaxError, StructureExpectedError
from app.core.utils.files import read_source
from app.domain.models.clause import Clause, flatten_conjunction
from app.domain.models.operator import ARGUMENT_PRIORITY, MAX_PRIORITY, ISO_OPERATORS, OperatorTable
from app.domain.models.term import (
    EMPTY,
    LONG_RANGE,
    Atom,
    Double,
    ListTerm,
    Structure,
    Term,
    Variable,
    integral_term,
    lookup_reference,
    new_atom,
)
from app.domain.schemas.types import PathType

_LAYOUT = re.compile(r"\s+")
_HANDLE = re.compile(r"J#\d{17}")
_VARIABLE = re.compile(r"[A-Z_][A-Za-z0-9_]*")
_NAME = re.compile(r"[a-z][A-Za-z0-9_]*")
_NUMBER = re.compile(r"\d+(?:\.\d+(?:[eE][+-]?\d+)?)?")
_SYMBOL = re.compile(r"[+\-*/\\^<>=~:.?@#&$]+")

_SOLO = frozenset("!,;|")
_PUNCT = frozenset("()[]{}")
_ESCAPES = {"\\": "\\", "'": "'", '"': '"', "`": "`", "n": "\n", "t": "\t", "r": "\r", "a": "\a", "b": "\b",
            "f": "\f", "v": "\v", "0": "\0", "e": "\x1b", "s": " "}

# token kinds
NAME = "name"
QUOTED = "quoted"
VAR = "var"
INT = "int"
FLOAT = "float"
HANDLE = "handle"
PUNCT = "punct"
END = "end"
EOF = "eof"


@dataclass(frozen=True, slots=True)
class Token:
    """Lexical unit with its position and whether layout precedes it."""

    kind: str
    text: str
    line: int
    column: int
    layout: bool


@dataclass
class SourceProgram:
    """Clauses and directives of a program, in source order.

    ``items`` keeps both kinds interleaved as read, directives being headless clauses.
    """

    clauses: list[Clause] = field(default_factory=list)
    directives: list[Term] = field(default_factory=list)
    items: list[Clause] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.clauses)

    def is_empty(self) -> bool:
        """True when the program has neither clauses nor directives."""
        return not self.clauses and not self.directives


def tokenize(text: str) -> Iterator[Token]:
    """Split a text into tokens, ending with an ``eof`` token.

    Raises:
        PrologSyntaxError: on characters or quoted atoms that can not be read
    """
    position = 0
    line, line_start = 1, 0
    size = len(text)

    def location(at: int) -> tuple[int, int]:
        return line, at - line_start + 1

    while True:
        layout = False
        # layout and comments
        while position < size:
            match = _LAYOUT.match(text, position)
            if match:
                chunk = match.group()
                newlines = chunk.count("\n")
                if newlines:
                    line += newlines
                    line_start = position + chunk.rfind("\n") + 1
                position = match.end()
                layout = True
                continue
            if text.startswith("%", position):
                end = text.find("\n", position)
                position = size if end < 0 else end
                layout = True
                continue
            if text.startswith("/*", position):
                end = text.find("*/", position + 2)
                if end < 0:
                    raise PrologSyntaxError("Unterminated block comment", *location(position))
                chunk = text[position : end + 2]
                newlines = chunk.count("\n")
                if newlines:
                    line += newlines
                    line_start = position + chunk.rfind("\n") + 1
                position = end + 2
                layout = True
                continue
            break

        if position >= size:
            yield Token(EOF, "", *location(position), layout)
            return

        char = text[position]
        row, column = location(position)

        if match := _HANDLE.match(text, position):
            position = match.end()
            yield Token(HANDLE, match.group(), row, column, layout)
        elif match := _VARIABLE.match(text, position):
            position = match.end()
            yield Token(VAR, match.group(), row, column, layout)
        elif match := _NAME.match(text, position):
            position = match.end()
            yield Token(NAME, match.group(), row, column, layout)
        elif match := _NUMBER.match(text, position):
            position = match.end()
            kind = FLOAT if "." in match.group() else INT
            yield Token(kind, match.group(), row, column, layout)
        elif char == "'":
            value, position = _read_quoted(text, position, row, column)
            yield Token(QUOTED, value, row, column, layout)
        elif match := _SYMBOL.match(text, position):
            symbol = match.group()
            following = text[match.end() : match.end() + 1]
            if symbol == "." and (not following or following.isspace() or following == "%"):
                position = match.end()
                yield Token(END, ".", row, column, layout)
            else:
                position = match.end()
                yield Token(NAME, symbol, row, column, layout)
        elif char in _SOLO:
            position += 1
            yield Token(NAME, char, row, column, layout)
        elif char in _PUNCT:
            position += 1
            yield Token(PUNCT, char, row, column, layout)
        else:
            raise PrologSyntaxError(f"Unexpected character {char!r}", row, column)


def _read_quoted(text: str, position: int, line: int, column: int) -> tuple[str, int]:
    chars = []
    position += 1
    while position < len(text):
        char = text[position]
        if char == "'":
            if text.startswith("''", position):
                chars.append("'")
                position += 2
                continue
            return "".join(chars), position + 1
        if char == "\\":
            escape = text[position + 1 : position + 2]
            if escape == "\n":
                position += 2
                continue
            if escape not in _ESCAPES:
                raise PrologSyntaxError(f"Unknown escape sequence \\{escape}", line, column)
            chars.append(_ESCAPES[escape])
            position += 2
            continue
        chars.append(char)
        position += 1
    raise PrologSyntaxError("Unterminated quoted atom", line, column)


class _Reader:
    """Recursive descent over one token stream, one variable scope per clause."""

    def __init__(self, text: str, operators: OperatorTable):
        self.tokens = list(tokenize(text))
        self.index = 0
        self.operators = operators
        self.variables: dict[str, Variable] = {}
        self.position = 0

    # token helpers
    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != EOF:
            self.index += 1
        return token

    def error(self, message: str, token: Token | None = None) -> PrologSyntaxError:
        token = token or self.peek()
        found = "end of text" if token.kind == EOF else repr(token.text)
        return PrologSyntaxError(f"{message}, found {found}", token.line, token.column)

    def expect(self, kind: str, text: str | None = None) -> Token:
        token = self.peek()
        if token.kind != kind or (text is not None and token.text != text):
            raise self.error(f"Expected {text or kind}")
        return self.advance()

    def at_eof(self) -> bool:
        return self.peek().kind == EOF

    def reset_scope(self):
        self.variables = {}
        self.position = 0

    # grammar
    def read_clause_term(self, require_end: bool = True) -> Term:
        """Read one term at priority 1200 terminated by a period."""
        self.reset_scope()
        term, _ = self.parse(MAX_PRIORITY)
        if self.peek().kind == END:
            self.advance()
        elif require_end or not self.at_eof():
            raise self.error("Expected operator or end of clause")
        return term

    def variable(self, name: str) -> Variable:
        if name == "_":
            variable = Variable(None, self.position)
            self.position += 1
            return variable
        variable = self.variables.get(name)
        if variable is None:
            variable = self.variables[name] = Variable(name, self.position)
            self.position += 1
        return variable

    def starts_term(self, token: Token) -> bool:
        if token.kind in (VAR, INT, FLOAT, QUOTED, HANDLE):
            return True
        if token.kind == PUNCT:
            return token.text in "([{"
        if token.kind == NAME:
            return token.text not in (",", "|")
        return False

    def parse(self, max_priority: int) -> tuple[Term, int]:
        left, left_priority = self.primary(max_priority)
        while True:
            token = self.peek()
            if token.kind != NAME:
                break
            name = token.text
            infix = self.operators.infix(name)
            if infix is not None and infix.priority <= max_priority and left_priority <= infix.left_max:
                postfix = self.operators.postfix(name)
                if postfix is None or self.starts_term(self.peek(1)):
                    self.advance()
                    right, _ = self.parse(infix.right_max)
                    left, left_priority = Structure(name, (left, right)), infix.priority
                    continue
            postfix = self.operators.postfix(name)
            if postfix is not None and postfix.priority <= max_priority and left_priority <= postfix.left_max:
                self.advance()
                left, left_priority = Structure(name, (left,)), postfix.priority
                continue
            break
        return left, left_priority

    def primary(self, max_priority: int) -> tuple[Term, int]:
        token = self.advance()
        kind = token.kind

        if kind == INT:
            return self.integer(token.text, token), 0
        if kind == FLOAT:
            return self.floating(token.text, token), 0
        if kind == VAR:
            return self.variable(token.text), 0
        if kind == HANDLE:
            raise self.error("A reference handle is only valid inside @(...)", token)
        if kind == PUNCT:
            if token.text == "(":
                term, _ = self.parse(MAX_PRIORITY)
                self.expect(PUNCT, ")")
                return term, 0
            if token.text == "[":
                return self.list_term(), 0
            if token.text == "{":
                raise self.error("Curly bracket terms are not supported", token)
            raise self.error("Unexpected punctuation", token)
        if kind == QUOTED:
            return self.name_term(token.text, token, quoted=True, max_priority=max_priority)
        if kind == NAME:
            return self.name_term(token.text, token, quoted=False, max_priority=max_priority)
        if kind == END:
            raise self.error("Unexpected end of clause", token)
        raise self.error("Unexpected end of text", token)

    def integer(self, text: str, token: Token) -> Term:
        value = int(text)
        if not LONG_RANGE[0] <= value <= LONG_RANGE[1]:
            raise self.error("Integer literal does not fit in 64 bits", token)
        return integral_term(value)

    def floating(self, text: str, token: Token) -> Term:
        value = float(text)
        if not math.isfinite(value):
            raise self.error("Float literal does not fit in double precision", token)
        return Double(value)

    def name_term(self, name: str, token: Token, quoted: bool, max_priority: int) -> tuple[Term, int]:
        following = self.peek()
        if following.kind == PUNCT and following.text == "(" and not following.layout:
            self.advance()
            return self.compound(name, token), 0

        if quoted:
            return Atom(name), 0
        if name in (",", "|"):
            raise self.error("Unexpected separator", token)

        if name == "-" and following.kind in (INT, FLOAT) and not following.layout:
            self.advance()
            if following.kind == INT:
                return self.integer("-" + following.text, following), 0
            return self.floating("-" + following.text, following), 0

        prefix = self.operators.prefix(name)
        if prefix is not None and self.starts_term(following) and not self.infix_ahead(following):
            priority = prefix.priority
            if priority > max_priority:
                priority = ARGUMENT_PRIORITY
                if priority > max_priority:
                    raise self.error(f"Operator priority clash for prefix operator {name}", token)
            operand, _ = self.parse(min(prefix.right_max, priority))
            return Structure(name, (operand,)), priority

        return new_atom(name), 0

    def infix_ahead(self, token: Token) -> bool:
        """True when the token is an infix operator name used as such, e.g. ``- = x``."""
        if token.kind != NAME or self.operators.infix(token.text) is None:
            return False
        if self.operators.prefix(token.text) is not None:
            return False
        after = self.peek(1)
        return not (after.kind == PUNCT and after.text == "(" and not after.layout)

    def arguments(self) -> list[Term]:
        arguments = [self.parse(ARGUMENT_PRIORITY)[0]]
        while self.peek().kind == NAME and self.peek().text == ",":
            self.advance()
            arguments.append(self.parse(ARGUMENT_PRIORITY)[0])
        return arguments

    def compound(self, name: str, token: Token) -> Term:
        if name == "@" and self.peek().kind == HANDLE:
            handle = self.advance()
            self.expect(PUNCT, ")")
            return lookup_reference(handle.text)
        arguments = self.arguments()
        self.expect(PUNCT, ")")
        if name == "." and len(arguments) == 2:
            return ListTerm(arguments[0], arguments[1])
        return Structure(name, tuple(arguments))

    def list_term(self) -> Term:
        following = self.peek()
        if following.kind == PUNCT and following.text == "]":
            self.advance()
            return EMPTY
        items = self.arguments()
        tail: Term = EMPTY
        if self.peek().kind == NAME and self.peek().text == "|":
            self.advance()
            tail = self.parse(ARGUMENT_PRIORITY)[0]
        self.expect(PUNCT, "]")
        result = tail
        for item in reversed(items):
            result = ListTerm(item, result)
        return result


class PrologParser:
    """Parse terms, clauses and programs with an operator table.

    The table is read at every call, so operators defined on the engine are honored immediately.
    """

    def __init__(self, operators: OperatorTable | None = None):
        self.operators = operators if operators is not None else OperatorTable(ISO_OPERATORS)

    def parse_term(self, text: str) -> Term:
        """Parse one term, the trailing period is optional.

        Raises:
            PrologSyntaxError: on malformed text, with line and column
        """
        reader = _Reader(text, self.operators)
        term = reader.read_clause_term(require_end=False)
        if not reader.at_eof():
            raise reader.error("Expected a single term")
        return term

    def parse_terms(self, text: str) -> list[Term]:
        """Parse comma separated terms, splitting only at top level commas."""
        return flatten_conjunction(self.parse_term(text))

    def parse_clause(self, text: str) -> Clause:
        """Parse one clause terminated by a period."""
        reader = _Reader(text, self.operators)
        term = reader.read_clause_term(require_end=True)
        if not reader.at_eof():
            raise reader.error("Expected a single clause")
        try:
            return Clause.from_term(term)
        except PrologSyntaxError:
            raise
        except Exception as e:
            raise PrologSyntaxError(str(e)) from e

    def parse_list(self, text: str) -> Term:
        """Parse a list term.

        Raises:
            ListExpectedError: when the text is a term but not a list
        """
        term = self.parse_term(text)
        if not term.is_list():
            raise ListExpectedError(f"Expected a list, found {term}")
        return term

    def parse_structure(self, text: str) -> Structure:
        """Parse a structure term.

        Raises:
            StructureExpectedError: when the text is a term but not a structure
        """
        term = self.parse_term(text)
        if not isinstance(term, Structure):
            raise StructureExpectedError(f"Expected a structure, found {term}")
        return term

    def parse_program(self, source: str | Path | TextIO) -> SourceProgram:
        """Parse all the clauses and directives of a program.

        A ``str`` is program text, a ``Path`` is a file and anything with ``read`` is a reader. The directive
        ``op/3`` is applied to the table while reading, so later clauses see the new operator.

        Raises:
            PrologSyntaxError: on malformed text, with line and column
            PrologError: when the file can not be read
        """
        text = source if isinstance(source, str) else read_source(source)
        reader = _Reader(text, self.operators)
        program = SourceProgram()
        while not reader.at_eof():
            term = reader.read_clause_term(require_end=True)
            try:
                clause = Clause.from_term(term)
            except Exception as e:
                raise PrologSyntaxError(str(e)) from e
            program.items.append(clause)
            if clause.is_directive:
                program.directives.append(clause.body)
                self._apply_operator_directive(clause.body)
            else:
                program.clauses.append(clause)
        logger.debug(f"Parsed program with {len(program.clauses)} clauses and {len(program.directives)} directives")
        return program

    def parse_file(self, path: PathType) -> SourceProgram:
        """Parse the program stored at a path."""
        return self.parse_program(Path(path))

    def _apply_operator_directive(self, goal: Term):
        if not (isinstance(goal, Structure) and goal.functor == "op" and goal.arity == 3):
            return
        priority, specifier, names = goal.arguments
        if not priority.is_integer() or not specifier.is_atom():
            raise PrologSyntaxError(f"Malformed operator directive: {goal}")
        for name in names if isinstance(names, ListTerm) else (names,):
            if not name.is_atom():
                raise PrologSyntaxError(f"Malformed operator name in directive: {goal}")
            self.operators.define(priority.value, specifier.functor, name.functor)  # type: ignore[attr-defined]
