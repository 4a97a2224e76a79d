"""Propositional expressions, Tseitin CNF conversion and a DPLL solver.

Expressions are immutable trees built from :class:`Var`, :class:`Not`,
:class:`And`, :class:`Or` and :class:`Const`.  A variable is named either by
an :class:`Atom` (a ``(data, value)`` pair coming from a requirement) or by a
bare string symbol (used by the HTTP service, where clients send letters).

The text notation mirrors the usual ``And(A, Not(B), C)`` style, so encoded
requirements can be printed and read back verbatim.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Union

from .errors import ExpressionSyntaxError, TooManyAtoms


@dataclass(frozen=True, order=True)
class Atom:
    """A propositional variable identified by a data item and one of its values."""

    data: str
    value: str

    def __str__(self) -> str:
        return f"{self.data}={self.value}"

    @classmethod
    def from_key(cls, key: str) -> "Atom":
        data, sep, value = key.partition("=")
        if not sep:
            raise ValueError(f"atom key {key!r} has no '='")
        return cls(data, value)


VarName = Union[Atom, str]


def order_key(name: VarName) -> tuple[str, str]:
    """Sort key placing atoms by (data, value) and bare symbols by name."""
    if isinstance(name, Atom):
        return (name.data, name.value)
    return (name, "")


@dataclass(frozen=True)
class Var:
    name: VarName


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Not:
    child: "BoolExpr"


def _flatten(kind: type, children: Iterable["BoolExpr"]) -> tuple["BoolExpr", ...]:
    out: list[BoolExpr] = []
    for c in children:
        if isinstance(c, kind):
            out.extend(c.children)
        else:
            out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class And:
    children: tuple["BoolExpr", ...]

    def __post_init__(self):
        kids = _flatten(And, self.children)
        if len(kids) < 2:
            raise ValueError("And needs at least two operands")
        object.__setattr__(self, "children", kids)


@dataclass(frozen=True)
class Or:
    children: tuple["BoolExpr", ...]

    def __post_init__(self):
        kids = _flatten(Or, self.children)
        if len(kids) < 2:
            raise ValueError("Or needs at least two operands")
        object.__setattr__(self, "children", kids)


BoolExpr = Union[Var, Const, Not, And, Or]

TRUE = Const(True)
FALSE = Const(False)


def conj(*children: BoolExpr) -> BoolExpr:
    """Conjunction that tolerates zero or one operand."""
    if not children:
        return TRUE
    if len(children) == 1:
        return children[0]
    return And(children)


def disj(*children: BoolExpr) -> BoolExpr:
    if not children:
        return FALSE
    if len(children) == 1:
        return children[0]
    return Or(children)


def variables(expr: BoolExpr) -> tuple[VarName, ...]:
    """Distinct variable names of ``expr`` in solver order."""
    seen: set[VarName] = set()
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            seen.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
    return tuple(sorted(seen, key=order_key))


def size(expr: BoolExpr) -> int:
    """Number of variable occurrences (leaves) in ``expr``."""
    n = 0
    stack = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            n += 1
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or)):
            stack.extend(node.children)
    return n


def evaluate(expr: BoolExpr, assignment: dict) -> bool:
    if isinstance(expr, Var):
        return assignment[expr.name]
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return not evaluate(expr.child, assignment)
    if isinstance(expr, And):
        return all(evaluate(c, assignment) for c in expr.children)
    return any(evaluate(c, assignment) for c in expr.children)


def simplify_constants(expr: BoolExpr) -> BoolExpr:
    """Fold constants away; the result is either a Const or constant-free."""
    if isinstance(expr, (Var, Const)):
        return expr
    if isinstance(expr, Not):
        child = simplify_constants(expr.child)
        if isinstance(child, Const):
            return Const(not child.value)
        return Not(child)
    absorbing = isinstance(expr, Or)  # True absorbs Or, False absorbs And
    kept = []
    for c in expr.children:
        c = simplify_constants(c)
        if isinstance(c, Const):
            if c.value == absorbing:
                return c
            continue
        kept.append(c)
    return disj(*kept) if absorbing else conj(*kept)


# -- text notation -----------------------------------------------------------


def to_notation(expr: BoolExpr, name: Callable[[VarName], str] = str) -> str:
    """Render ``expr`` as ``And(A, Not(B))``-style text.

    ``name`` maps a variable to its display symbol (a letter from the symbol
    table in reports; ``str`` by default).
    """
    if isinstance(expr, Var):
        return name(expr.name)
    if isinstance(expr, Const):
        return "true" if expr.value else "false"
    if isinstance(expr, Not):
        return f"Not({to_notation(expr.child, name)})"
    head = "And" if isinstance(expr, And) else "Or"
    return f"{head}({', '.join(to_notation(c, name) for c in expr.children)})"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_.]*)|([(),]))")

MAX_NOTATION_DEPTH = 200


def parse_expression(text: str) -> BoolExpr:
    """Parse the ``And/Or/Not`` notation into an expression over string symbols."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tokens.append((m.group(1) or m.group(2), m.start(m.lastindex)))
        pos = m.end()
    if not tokens:
        raise ExpressionSyntaxError("empty expression", 0)

    idx = 0

    def peek() -> tuple[str, int]:
        return tokens[idx] if idx < len(tokens) else ("<end>", len(text))

    def expect(tok: str) -> None:
        nonlocal idx
        got, at = peek()
        if got != tok:
            raise ExpressionSyntaxError(f"expected {tok!r}, found {got!r}", at)
        idx += 1

    def parse(depth: int) -> BoolExpr:
        nonlocal idx
        if depth > MAX_NOTATION_DEPTH:
            raise ExpressionSyntaxError("expression nested too deeply", peek()[1])
        tok, at = peek()
        if tok in ("(", ")", ",", "<end>"):
            raise ExpressionSyntaxError(f"unexpected {tok!r}", at)
        idx += 1
        if tok in ("And", "Or", "Not"):
            expect("(")
            args: list[BoolExpr] = []
            if peek()[0] != ")":
                args.append(parse(depth + 1))
                while peek()[0] == ",":
                    idx += 1
                    args.append(parse(depth + 1))
            expect(")")
            if tok == "Not":
                if len(args) != 1:
                    raise ExpressionSyntaxError("Not takes exactly one operand", at)
                return Not(args[0])
            return conj(*args) if tok == "And" else disj(*args)
        if tok == "true":
            return TRUE
        if tok == "false":
            return FALSE
        return Var(tok)

    result = parse(0)
    if idx != len(tokens):
        tok, at = tokens[idx]
        raise ExpressionSyntaxError(f"trailing input {tok!r}", at)
    return result


# -- CNF ---------------------------------------------------------------------


@dataclass
class CnfFormula:
    """Clauses over variables ``1..num_vars``; negative integers are negations.

    ``variables[i]`` names variable ``i + 1``; indices beyond it are Tseitin
    auxiliaries.
    """

    num_vars: int
    clauses: list[tuple[int, ...]]
    variables: tuple[VarName, ...] = field(default=())


def _clause(lits: Iterable[int]) -> tuple[int, ...] | None:
    """Normalise a clause; None when it is a tautology."""
    out = tuple(sorted(set(lits), key=lambda v: (abs(v), v)))
    present = set(out)
    if any(-lit in present for lit in out):
        return None
    return out


def to_cnf(expr: BoolExpr) -> CnfFormula:
    """Equisatisfiable CNF via the Tseitin encoding.

    Original variables are numbered first in :func:`order_key` order, so the
    solver's lowest-index-first branching follows that order.
    """
    expr = simplify_constants(expr)
    names = variables(expr)
    index = {n: i + 1 for i, n in enumerate(names)}
    if isinstance(expr, Const):
        return CnfFormula(0, [] if expr.value else [()], ())

    clauses: list[tuple[int, ...]] = []
    counter = len(names)
    memo: dict[int, int] = {}

    def add(lits: Iterable[int]) -> None:
        c = _clause(lits)
        if c is not None:
            clauses.append(c)

    def lit(node: BoolExpr) -> int:
        nonlocal counter
        if isinstance(node, Var):
            return index[node.name]
        if isinstance(node, Not):
            return -lit(node.child)
        key = id(node)
        if key in memo:
            return memo[key]
        kids = [lit(c) for c in node.children]
        counter += 1
        aux = counter
        if isinstance(node, And):
            for k in kids:
                add((-aux, k))
            add([aux] + [-k for k in kids])
        else:
            for k in kids:
                add((aux, -k))
            add([-aux] + kids)
        memo[key] = aux
        return aux

    add((lit(expr),))
    return CnfFormula(counter, clauses, names)


def _reduce(clauses: list[tuple[int, ...]], true_lits: set[int]) -> list[tuple[int, ...]] | None:
    out = []
    for c in clauses:
        if any(l in true_lits for l in c):
            continue
        nc = tuple(l for l in c if -l not in true_lits)
        if not nc:
            return None
        out.append(nc)
    return out


def _propagate(clauses: list[tuple[int, ...]], assign: dict[int, bool]) -> list[tuple[int, ...]] | None:
    """Unit propagation and pure-literal elimination to a fixpoint (mutates ``assign``)."""
    while clauses:
        units = {c[0] for c in clauses if len(c) == 1}
        if units:
            if any(-u in units for u in units):
                return None
        else:
            lits = {l for c in clauses for l in c}
            units = {l for l in lits if -l not in lits}
            if not units:
                break
        for u in units:
            assign[abs(u)] = u > 0
        clauses = _reduce(clauses, units)
        if clauses is None:
            return None
    return clauses


def solve_cnf(cnf: CnfFormula) -> dict[int, bool] | None:
    """DPLL search.  Returns a (possibly partial) satisfying assignment or None.

    Branching picks the lowest-numbered free variable and tries True first.
    Unassigned variables in the result may take either value.
    """
    if any(len(c) == 0 for c in cnf.clauses):
        return None
    stack: list[tuple[list, dict[int, bool], int | None]] = [(list(cnf.clauses), {}, None)]
    while stack:
        clauses, assign, decision = stack.pop()
        if decision is not None:
            assign = dict(assign)
            assign[abs(decision)] = decision > 0
            clauses = _reduce(clauses, {decision})
            if clauses is None:
                continue
        clauses = _propagate(clauses, assign)
        if clauses is None:
            continue
        if not clauses:
            return assign
        var = min(abs(l) for c in clauses for l in c)
        stack.append((clauses, assign, -var))
        stack.append((clauses, assign, var))
    return None


class SatResult(NamedTuple):
    satisfiable: bool
    model: dict | None

    @property
    def verdict(self) -> str:
        return "SAT" if self.satisfiable else "UNSAT"


def is_satisfiable(expr: BoolExpr) -> SatResult:
    """Decide ``expr``; a SAT answer carries a model over all of its variables."""
    cnf = to_cnf(expr)
    found = solve_cnf(cnf)
    if found is None:
        return SatResult(False, None)
    model = {name: False for name in variables(expr)}
    for i, name in enumerate(cnf.variables, start=1):
        model[name] = found.get(i, False)
    assert evaluate(expr, model), "solver returned a non-model"
    return SatResult(True, model)


MAX_BRUTE_FORCE_ATOMS = 20


def brute_force_sat(expr: BoolExpr) -> SatResult:
    """Exhaustive truth-table check; the test oracle for :func:`is_satisfiable`."""
    names = variables(expr)
    if len(names) > MAX_BRUTE_FORCE_ATOMS:
        raise TooManyAtoms(f"{len(names)} atoms exceeds the brute-force limit of {MAX_BRUTE_FORCE_ATOMS}")
    for bits in itertools.product((False, True), repeat=len(names)):
        model = dict(zip(names, bits))
        if evaluate(expr, model):
            return SatResult(True, model)
    return SatResult(False, None)
