"""Pairing, contradiction checks and hypothetical-syllogism derivation.

Two requirements are compared when they share at least one operation atom.
The pair is a contradiction when the conjunction of their condition parts has
no satisfying assignment.  Chained requirements (an operation of one feeding
a condition of another) are first combined into derived requirements so that
indirect contradictions show up as ordinary pairs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .dictionary import DataDictionary
from .encoder import EncodedRequirement, domain_axioms
from .logic import And, Atom, BoolExpr, Var, conj, is_satisfiable, variables

OK = "OK"
CONTRADICTION = "CONTRADICTION"

MAX_SYLLOGISM_DEPTH = 8


@dataclass(frozen=True)
class DerivedRequirement(EncodedRequirement):
    chain: tuple[str, ...] = ()


@dataclass(frozen=True)
class RequirementPair:
    left: EncodedRequirement
    right: EncodedRequirement
    shared_operation_atoms: frozenset[Atom]


@dataclass(frozen=True)
class Inference:
    kind: str = "direct"  # "direct" | "syllogism"
    chain: tuple[str, ...] = ()


@dataclass(frozen=True)
class Verdict:
    result: str
    model: dict | None = field(default=None, hash=False)
    inference: Inference = Inference()


@dataclass(frozen=True)
class Comparison:
    pair: RequirementPair
    verdict: Verdict


@dataclass(frozen=True)
class AnalysisOptions:
    syllogism_depth: int = 1
    domain_axioms: bool = False
    lenient: bool = False

    def __post_init__(self):
        if not 0 <= self.syllogism_depth <= MAX_SYLLOGISM_DEPTH:
            raise ValueError(f"syllogism depth must be between 0 and {MAX_SYLLOGISM_DEPTH}")


def _chain(req: EncodedRequirement) -> tuple[str, ...]:
    return req.chain if isinstance(req, DerivedRequirement) else ()


def find_pairs(reqs: Sequence[EncodedRequirement]) -> list[RequirementPair]:
    """All unordered pairs sharing an operation atom, sorted by ``(left.id, right.id)``.

    Self-pairs are skipped, as is any derived requirement paired with one of
    the requirements it was derived from.
    """
    by_atom: dict[Atom, list[EncodedRequirement]] = {}
    for r in reqs:
        for atom in r.operation_atoms:
            by_atom.setdefault(atom, []).append(r)
    seen: set[tuple[str, str]] = set()
    pairs = []
    for group in by_atom.values():
        for a, b in itertools.combinations(group, 2):
            if a.id == b.id:
                continue
            left, right = (a, b) if a.id < b.id else (b, a)
            key = (left.id, right.id)
            if key in seen:
                continue
            seen.add(key)
            if left.id in _chain(right) or right.id in _chain(left):
                continue
            shared = left.operation_atoms & right.operation_atoms
            pairs.append(RequirementPair(left, right, shared))
    pairs.sort(key=lambda p: (p.left.id, p.right.id))
    return pairs


def check_pair(pair: RequirementPair, axioms: BoolExpr | None = None) -> Verdict:
    parts = [pair.left.antecedent, pair.right.antecedent]
    if axioms is not None:
        parts.append(axioms)
    sat = is_satisfiable(conj(*parts))
    chain = _chain(pair.left) + _chain(pair.right)
    inference = Inference("syllogism", chain) if chain else Inference()
    if sat.satisfiable:
        return Verdict(OK, sat.model, inference)
    return Verdict(CONTRADICTION, None, inference)


def _conjuncts(expr: BoolExpr) -> tuple[BoolExpr, ...]:
    return expr.children if isinstance(expr, And) else (expr,)


def derive_syllogisms(reqs: Sequence[EncodedRequirement], max_depth: int = 1) -> list[DerivedRequirement]:
    """Chain requirements whose asserted operations appear as conditions of others.

    From ``P => q`` and ``q And S => t`` the derived requirement is
    ``P And S => t``.  ``q`` must be forced by the first consequent (a
    positive top-level conjunct) and must be a positive top-level conjunct
    of the second antecedent, which keeps every derivation valid.  Each step
    extends the previous step's derivations by one original requirement;
    a requirement never appears twice in one chain.
    """
    if max_depth < 1:
        return []
    originals = sorted(reqs, key=lambda r: r.id)
    out: list[DerivedRequirement] = []
    frontier: list[EncodedRequirement] = originals
    for _ in range(max_depth):
        step = []
        for first in frontier:
            asserted = first.asserted_atoms
            if not asserted:
                continue
            chain = _chain(first) or (first.id,)
            for second in originals:
                if second.id in chain:
                    continue
                conjuncts = _conjuncts(second.antecedent)
                consumed = [c for c in conjuncts if isinstance(c, Var) and c.name in asserted]
                if not consumed:
                    continue
                rest = [c for c in conjuncts if c not in consumed]
                new_chain = chain + (second.id,)
                step.append(
                    DerivedRequirement(
                        id="derived:" + "+".join(new_chain),
                        antecedent=conj(first.antecedent, *rest),
                        consequent=second.consequent,
                        consequent_atoms=second.consequent_atoms,
                        text="derived by hypothetical syllogism via " + " → ".join(new_chain),
                        chain=new_chain,
                    )
                )
        out.extend(step)
        frontier = step
    return out


def analyze_corpus(
    reqs: Iterable[EncodedRequirement],
    options: AnalysisOptions = AnalysisOptions(),
    dictionary: DataDictionary | None = None,
) -> tuple[list[EncodedRequirement], list[Comparison]]:
    """Run derivation and pairwise checks; returns the full pool and the comparisons."""
    pool = list(reqs)
    pool.extend(derive_syllogisms(pool, options.syllogism_depth))
    comparisons = []
    for pair in find_pairs(pool):
        axioms = None
        if options.domain_axioms and dictionary is not None:
            atoms = variables(And((pair.left.antecedent, pair.right.antecedent)))
            axioms = domain_axioms(atoms, dictionary)
        comparisons.append(Comparison(pair, check_pair(pair, axioms)))
    return pool, comparisons
