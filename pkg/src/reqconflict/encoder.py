"""Translate parsed requirements into implications over atoms.

Every ``(data, value)`` pair becomes one :class:`~reqconflict.logic.Atom`,
shared between conditions and operations so that an operation of one
requirement can match a condition of another.  Boolean data items are
collapsed onto a single ``TRUE`` atom::

    X is TRUE       -> X
    X is FALSE      -> Not(X)
    X is NOT TRUE   -> Not(X)
    X is NOT FALSE  -> X

Display letters are assigned on first appearance: atoms first seen in a
condition take A, B, C, ... and atoms first seen in an operation take
X, Y, Z, then continue with A1, B1, ... (skipping letters already taken).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .dictionary import DataDictionary
from .errors import UnknownData, ValidationFailed, ValueOutOfRange
from .logic import And, Atom, BoolExpr, Not, Or, Var, conj, order_key, to_notation
from .parser import ClauseTree, Leaf, RequirementAst, iter_atoms, render_requirement

CONDITION = "condition"
OPERATION = "operation"
_ROLE_START = {CONDITION: 0, OPERATION: 23}


def letter_at(index: int) -> str:
    """``0 -> A``, ``25 -> Z``, ``26 -> A1``, ``52 -> A2`` ..."""
    cycle, pos = divmod(index, 26)
    return chr(ord("A") + pos) + (str(cycle) if cycle else "")


class SymbolTable:
    """Injective atom -> letter map, stable for the whole corpus."""

    def __init__(self):
        self._letters: dict[Atom, str] = {}
        self._taken: set[str] = set()
        self._cursor = dict(_ROLE_START)
        self.frozen = False

    def letter(self, atom: Atom, role: str = CONDITION) -> str:
        if atom in self._letters:
            return self._letters[atom]
        if self.frozen:
            raise KeyError(f"symbol table is frozen; no letter for {atom}")
        i = self._cursor[role]
        while letter_at(i) in self._taken:
            i += 1
        name = letter_at(i)
        self._cursor[role] = i + 1
        self._letters[atom] = name
        self._taken.add(name)
        return name

    def get(self, atom: Atom) -> str | None:
        return self._letters.get(atom)

    def name(self, atom) -> str:
        """Display symbol for a variable, falling back to ``data=value``."""
        return self._letters.get(atom) or str(atom)

    def freeze(self) -> "SymbolTable":
        self.frozen = True
        return self

    def by_letter(self) -> dict[str, Atom]:
        return {v: k for k, v in self._letters.items()}

    def __len__(self) -> int:
        return len(self._letters)

    def __eq__(self, other):
        if isinstance(other, SymbolTable):
            return self._letters == other._letters
        return NotImplemented


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    requirement: str
    message: str
    code: str = ""


@dataclass(frozen=True)
class EncodedRequirement:
    id: str
    antecedent: BoolExpr
    consequent: BoolExpr
    consequent_atoms: frozenset[tuple[Atom, bool]]
    text: str = ""

    @property
    def operation_atoms(self) -> frozenset[Atom]:
        return frozenset(a for a, _ in self.consequent_atoms)

    @property
    def asserted_atoms(self) -> frozenset[Atom]:
        """Atoms the consequent forces true: positive top-level conjuncts."""
        parts = self.consequent.children if isinstance(self.consequent, And) else (self.consequent,)
        return frozenset(p.name for p in parts if isinstance(p, Var))

    def notation(self, symbols: SymbolTable) -> str:
        return f"{to_notation(self.antecedent, symbols.name)} ⇒ {to_notation(self.consequent, symbols.name)}"


def _lookup(data: str, value: str, dictionary: DataDictionary) -> str | None:
    """Return the diagnostic code for one atom, or None when it is in range."""
    entry = dictionary.get(data)
    if entry is None:
        return "UnknownData"
    if value not in entry.range:
        return "ValueOutOfRange"
    return None


def validate_against_dictionary(ast: RequirementAst, dictionary: DataDictionary) -> list[Diagnostic]:
    out = []
    for atom in itertools.chain(iter_atoms(ast.condition), iter_atoms(ast.operations)):
        code = _lookup(atom.data, atom.value, dictionary)
        if code == "UnknownData":
            msg = f"unknown data name {atom.data!r} in '{atom.render()}'"
        elif code == "ValueOutOfRange":
            allowed = ", ".join(dictionary[atom.data].range)
            msg = f"value {atom.value!r} is not in the range of {atom.data!r} ({allowed}) in '{atom.render()}'"
        else:
            continue
        out.append(Diagnostic("error", ast.id, msg, code))
    return out


def atom_literal(data: str, value: str, negated: bool, dictionary: DataDictionary) -> tuple[Atom, bool]:
    """Map ``data is [NOT] value`` to an atom and its polarity."""
    entry = dictionary.get(data)
    boolean = entry.is_boolean if entry is not None else value in ("TRUE", "FALSE")
    if boolean and value in ("TRUE", "FALSE"):
        return Atom(data, "TRUE"), (value == "TRUE") != negated
    return Atom(data, value), not negated


def _encode_tree(tree: ClauseTree, role: str, dictionary: DataDictionary, symbols: SymbolTable, polarities: list):
    if isinstance(tree, Leaf):
        a = tree.atom
        atom, positive = atom_literal(a.data, a.value, a.negated, dictionary)
        symbols.letter(atom, role)
        polarities.append((atom, positive))
        return Var(atom) if positive else Not(Var(atom))
    kids = tuple(_encode_tree(c, role, dictionary, symbols, polarities) for c in tree.children)
    return And(kids) if tree.connective == "And" else Or(kids)


def encode(
    ast: RequirementAst,
    dictionary: DataDictionary,
    symbols: SymbolTable,
    lenient: bool = False,
) -> EncodedRequirement:
    """Encode one requirement as ``antecedent => consequent``.

    In strict mode the first dictionary violation raises; with ``lenient``
    out-of-dictionary atoms are minted as fresh variables.
    """
    if not lenient:
        for atom in itertools.chain(iter_atoms(ast.condition), iter_atoms(ast.operations)):
            code = _lookup(atom.data, atom.value, dictionary)
            if code == "UnknownData":
                raise UnknownData(atom.data)
            if code == "ValueOutOfRange":
                raise ValueOutOfRange(atom.data, atom.value, dictionary[atom.data].range)
    antecedent = _encode_tree(ast.condition, CONDITION, dictionary, symbols, [])
    ops: list[tuple[Atom, bool]] = []
    consequent = _encode_tree(ast.operations, OPERATION, dictionary, symbols, ops)
    return EncodedRequirement(ast.id, antecedent, consequent, frozenset(ops), render_requirement(ast, single_line=True))


def encode_corpus(
    asts: Iterable[RequirementAst],
    dictionary: DataDictionary,
    lenient: bool = False,
) -> tuple[list[EncodedRequirement], SymbolTable, list[Diagnostic]]:
    """Validate and encode a corpus in file order with one shared symbol table.

    Strict mode raises :class:`~reqconflict.errors.ValidationFailed` carrying
    every violation; lenient mode reports them as warnings.
    """
    asts = list(asts)
    diagnostics = [d for ast in asts for d in validate_against_dictionary(ast, dictionary)]
    if diagnostics and not lenient:
        raise ValidationFailed(diagnostics)
    diagnostics = [Diagnostic("warning", d.requirement, d.message, d.code) for d in diagnostics]
    symbols = SymbolTable()
    encoded = [encode(ast, dictionary, symbols, lenient=True) for ast in asts]
    return encoded, symbols.freeze(), diagnostics


def domain_axioms(atoms: Iterable[Atom], dictionary: DataDictionary) -> BoolExpr:
    """At-most-one constraints for enumerated data items among ``atoms``."""
    by_data: dict[str, list[Atom]] = {}
    for atom in sorted(set(atoms), key=order_key):
        entry = dictionary.get(atom.data)
        if entry is not None and not entry.is_boolean:
            by_data.setdefault(atom.data, []).append(atom)
    clauses = [
        Not(And((Var(a), Var(b))))
        for group in by_data.values()
        for a, b in itertools.combinations(group, 2)
    ]
    return conj(*clauses)
