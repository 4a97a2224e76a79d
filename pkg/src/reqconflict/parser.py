"""Recursive-descent parser for Gherkin-style requirement blocks.

A requirements file holds blocks of the form::

    ID:Gherkin_1
    Given MMM is SJ
    And MOS_S is NOT DGFT
    Then SET MMM to NAV

Conditions run from ``Given`` up to ``Then`` (``When`` is accepted as a
synonym); operations follow.  Within a section items are joined by ``And``
or ``Or``; a flat chain must use a single connective and parentheses group
sub-chains to any depth.  Line breaks inside a section are insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

from .errors import DuplicateIdError, MissingThenError, MixedConnectiveError, RequirementSyntaxError

CONNECTIVES = ("And", "Or")
RESERVED = frozenset({"Given", "Then", "When", "And", "Or"})
MAX_DEPTH = 200

_IDENT = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.\-]*")
_TOKEN = re.compile(r"[()]|[^\s()]+")


@dataclass(frozen=True)
class ConditionAtom:
    data: str
    value: str
    negated: bool = False

    def render(self) -> str:
        return f"{self.data} is {'NOT ' if self.negated else ''}{self.value}"


@dataclass(frozen=True)
class OperationAtom:
    data: str
    value: str
    negated: bool = False
    set_keyword: bool = False

    def render(self) -> str:
        prefix = "SET " if self.set_keyword else ""
        return f"{prefix}{self.data} to {'NOT ' if self.negated else ''}{self.value}"


@dataclass(frozen=True)
class Leaf:
    atom: Union[ConditionAtom, OperationAtom]


@dataclass(frozen=True)
class Chain:
    connective: str
    children: tuple["ClauseTree", ...]

    def __post_init__(self):
        if self.connective not in CONNECTIVES:
            raise ValueError(f"bad connective {self.connective!r}")
        if len(self.children) < 2:
            raise ValueError("a chain needs at least two children")


ClauseTree = Union[Leaf, Chain]


@dataclass(frozen=True)
class RequirementAst:
    id: str
    condition: ClauseTree
    operations: ClauseTree
    line: int = field(default=0, compare=False)
    source: str = field(default="", compare=False)


def iter_atoms(tree: ClauseTree) -> Iterator[Union[ConditionAtom, OperationAtom]]:
    if isinstance(tree, Leaf):
        yield tree.atom
    else:
        for child in tree.children:
            yield from iter_atoms(child)


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


class _BlockParser:
    def __init__(self, tokens: list[_Tok], end_line: int):
        self.tokens = tokens
        self.pos = 0
        self.end_line = end_line

    def peek(self, offset: int = 0) -> _Tok | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def error(self, message: str, tok: _Tok | None, cls=RequirementSyntaxError):
        if tok is None:
            return cls(message + " (unexpected end of block)", self.end_line, 1)
        return cls(message, tok.line, tok.col, tok.text)

    def expect(self, word: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != word:
            raise self.error(f"expected {word!r}", tok)
        self.pos += 1
        return tok

    def is_ident(self, tok: _Tok | None) -> bool:
        return tok is not None and tok.text not in RESERVED and _IDENT.fullmatch(tok.text) is not None

    def ident(self, what: str) -> str:
        tok = self.peek()
        if not self.is_ident(tok):
            raise self.error(f"expected {what}", tok)
        self.pos += 1
        return tok.text

    def negation_and_value(self) -> tuple[bool, str]:
        tok = self.peek()
        if tok is not None and tok.text == "NOT" and self.is_ident(self.peek(1)):
            self.pos += 1
            return True, self.ident("value")
        return False, self.ident("value")

    def condition_atom(self) -> ConditionAtom:
        data = self.ident("data name")
        self.expect("is")
        negated, value = self.negation_and_value()
        return ConditionAtom(data, value, negated)

    def operation_atom(self) -> OperationAtom:
        tok = self.peek()
        if tok is not None and tok.text == "SET":
            # "SET" is either the keyword or a data item named SET; prefer the keyword
            start = self.pos
            self.pos += 1
            try:
                return self._operation_body(set_keyword=True)
            except RequirementSyntaxError:
                self.pos = start
        return self._operation_body(set_keyword=False)

    def _operation_body(self, set_keyword: bool) -> OperationAtom:
        data = self.ident("data name")
        self.expect("to")
        negated, value = self.negation_and_value()
        return OperationAtom(data, value, negated, set_keyword)

    def clause(self, atom: Callable[[], object], depth: int = 0) -> ClauseTree:
        items = [self.item(atom, depth)]
        connective = None
        while (tok := self.peek()) is not None and tok.text in CONNECTIVES:
            if connective is not None and tok.text != connective:
                raise self.error(
                    f"cannot mix {connective!r} and {tok.text!r} without parentheses", tok, MixedConnectiveError
                )
            connective = tok.text
            self.pos += 1
            items.append(self.item(atom, depth))
        if len(items) == 1:
            return items[0]
        return Chain(connective, tuple(items))

    def item(self, atom: Callable[[], object], depth: int) -> ClauseTree:
        tok = self.peek()
        if tok is not None and tok.text == "(":
            if depth >= MAX_DEPTH:
                raise self.error("parentheses nested too deeply", tok)
            self.pos += 1
            inner = self.clause(atom, depth + 1)
            self.expect(")")
            return inner
        return Leaf(atom())

    def requirement(self, req_id: str, line: int, source: str) -> RequirementAst:
        self.expect("Given")
        condition = self.clause(self.condition_atom)
        tok = self.peek()
        if tok is None:
            raise self.error("requirement has no 'Then' section", None, MissingThenError)
        if tok.text not in ("Then", "When"):
            raise self.error("expected 'And', 'Or' or 'Then'", tok)
        self.pos += 1
        operations = self.clause(self.operation_atom)
        tok = self.peek()
        if tok is not None:
            raise self.error("expected 'And', 'Or' or end of requirement", tok)
        return RequirementAst(req_id, condition, operations, line=line, source=source)


@dataclass
class _Block:
    id: str
    line: int
    end_line: int
    tokens: list[_Tok] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)


def _blocks(text: str) -> Iterator[_Block]:
    current: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("ID:"):
            if current is not None:
                yield current
            req_id = stripped[3:].strip()
            if not _IDENT.fullmatch(req_id):
                raise RequirementSyntaxError("invalid requirement ID", lineno, raw.index("ID:") + 1, req_id)
            current = _Block(req_id, lineno, lineno, lines=[stripped])
            continue
        if not stripped:
            continue
        if current is None:
            col = len(raw) - len(raw.lstrip()) + 1
            raise RequirementSyntaxError("text before the first 'ID:' line", lineno, col, stripped.split()[0])
        current.tokens.extend(_Tok(m.group(), lineno, m.start() + 1) for m in _TOKEN.finditer(raw))
        current.lines.append(stripped)
        current.end_line = lineno
    if current is not None:
        yield current


def parse_requirements(text: str) -> list[RequirementAst]:
    """Parse every ``ID:`` block of ``text`` in file order."""
    out: list[RequirementAst] = []
    seen: dict[str, int] = {}
    for block in _blocks(text):
        if block.id in seen:
            raise DuplicateIdError(
                f"requirement ID {block.id!r} already defined on line {seen[block.id]}", block.line, 1, block.id
            )
        seen[block.id] = block.line
        parser = _BlockParser(block.tokens, block.end_line)
        out.append(parser.requirement(block.id, block.line, "\n".join(block.lines)))
    return out


def parse_requirement(text: str) -> RequirementAst:
    reqs = parse_requirements(text)
    if len(reqs) != 1:
        raise RequirementSyntaxError(f"expected exactly one requirement, found {len(reqs)}", 1, 1)
    return reqs[0]


def render_clause(tree: ClauseTree, top_sep: str = " ") -> str:
    """Render a clause tree; ``top_sep`` separates top-level items (a newline for blocks)."""
    if isinstance(tree, Leaf):
        return tree.atom.render()
    parts = [_render_item(c) for c in tree.children]
    return f"{top_sep}{tree.connective} ".join(parts)


def _render_item(tree: ClauseTree) -> str:
    if isinstance(tree, Leaf):
        return tree.atom.render()
    return "(" + render_clause(tree) + ")"


def render_requirement(ast: RequirementAst, single_line: bool = False) -> str:
    """Canonical text for ``ast``; parsing it back yields an equal AST.

    ``single_line`` gives the compact one-line form used in report cells,
    which is for display only and does not re-parse.
    """
    sep = " " if single_line else "\n"
    return sep.join(
        [
            f"ID:{ast.id}",
            "Given " + render_clause(ast.condition, sep),
            "Then " + render_clause(ast.operations, sep),
        ]
    )
