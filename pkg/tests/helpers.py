"""Test oracles and generators that do not go through the solver under test."""

from __future__ import annotations

import itertools
import random

from reqconflict.logic import And, Const, Not, Or, Var, evaluate, variables

SYMBOLS = ("A", "B", "C", "D")


def random_expr(rng: random.Random, depth: int = 4, symbols=SYMBOLS):
    """Random expression of depth <= ``depth`` over ``symbols``."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.05:
            return Const(rng.random() < 0.5)
        return Var(rng.choice(symbols))
    kind = rng.choice(("not", "and", "or"))
    if kind == "not":
        return Not(random_expr(rng, depth - 1, symbols))
    kids = tuple(random_expr(rng, depth - 1, symbols) for _ in range(rng.randint(2, 3)))
    return And(kids) if kind == "and" else Or(kids)


def truth_table_entails(premises, conclusion) -> bool:
    """premises |= conclusion, checked over every assignment of their variables."""
    names = variables(And(tuple(premises) + (conclusion, Const(True))))
    for bits in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, bits))
        if all(evaluate(p, env) for p in premises) and not evaluate(conclusion, env):
            return False
    return True


def implies(antecedent, consequent):
    return Or((Not(antecedent), consequent))


def generate_corpus(n: int, seed: int = 0) -> tuple[str, str]:
    """A synthetic dictionary and requirements document with ``n`` requirements.

    Roughly a third are flat And-chains, a third nested Or/And, and a third
    chain on an operation output of another requirement.
    """
    rng = random.Random(seed)
    n_outputs = max(5, n // 10)
    dict_lines = ["Data,Range"]
    dict_lines += [f"Flag_{i},TRUE|FALSE" for i in range(20)]
    dict_lines += [f"Sel_{j},V0|V1|V2|V3" for j in range(10)]
    dict_lines += [f"Out_{k},ON|OFF|IDLE" for k in range(n_outputs)]

    def cond():
        if rng.random() < 0.5:
            return f"Flag_{rng.randrange(20)} is {'NOT ' if rng.random() < 0.3 else ''}{rng.choice(['TRUE', 'FALSE'])}"
        return f"Sel_{rng.randrange(10)} is {'NOT ' if rng.random() < 0.3 else ''}V{rng.randrange(4)}"

    def op():
        return f"SET Out_{rng.randrange(n_outputs)} to {rng.choice(['ON', 'OFF', 'IDLE'])}"

    blocks = []
    for i in range(n):
        style = i % 3
        if style == 0:
            conds = "\nAnd ".join(cond() for _ in range(rng.randint(2, 4)))
        elif style == 1:
            conds = f"{cond()}\nOr ({cond()} And {cond()})\nOr {cond()}"
        else:
            conds = f"Out_{rng.randrange(n_outputs)} is ON\nAnd {cond()}"
        ops = "\nAnd ".join(op() for _ in range(rng.randint(1, 2)))
        blocks.append(f"ID:GEN_{i:04d}\nGiven {conds}\nThen {ops}\n")
    return "\n".join(dict_lines) + "\n", "\n".join(blocks)
