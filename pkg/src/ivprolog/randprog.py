"""Random function-free programs for differential testing.

Rule bodies only mention predicates with a lower index than the head, so the
call graph is acyclic and every SLD tree is finite.  Annotations are drawn on
a 0.05 grid and rendered as source text before parsing, so the generated
program is exactly what a user could have written.
"""

from __future__ import annotations

import itertools
import random
from typing import Optional

from .parser import parse_program
from .terms import Atom, Constant, Program

__all__ = ["random_program", "random_interval_text", "ground_goals"]


def random_interval_text(rng: random.Random, grid: int = 20) -> str:
    lo, hi = sorted(rng.randint(0, grid) for _ in range(2))
    return f"[{lo / grid!r},{hi / grid!r}]"


def _arg(rng: random.Random, consts: list, variables: list) -> str:
    if rng.random() < 0.5:
        return rng.choice(consts)
    return rng.choice(variables)


def _atom_text(name: str, args: list) -> str:
    return f"{name}({','.join(args)})" if args else name


def random_program(rng: random.Random, *, max_predicates: int = 4, max_constants: int = 3,
                   max_clauses: int = 6, max_arity: int = 2,
                   lambda_text: Optional[str] = None) -> Program:
    n_preds = rng.randint(1, max_predicates)
    arities = [rng.randint(0, max_arity) for _ in range(n_preds)]
    names = [f"p{i}" for i in range(n_preds)]
    consts = [f"c{i}" for i in range(rng.randint(1, max_constants))]
    variables = ["X", "Y", "Z"]
    lines = [f":-lambdaCutIVFS({lambda_text})."] if lambda_text else []
    for _ in range(rng.randint(1, max_clauses)):
        head = rng.randrange(n_preds)
        if head == 0 or rng.random() < 0.5:
            args = [rng.choice(consts) for _ in range(arities[head])]
            lines.append(f"{_atom_text(names[head], args)}{random_interval_text(rng)}.")
            continue
        body = []
        for _ in range(rng.randint(1, 3)):
            b = rng.randrange(head)
            body.append(_atom_text(names[b], [_arg(rng, consts, variables) for _ in range(arities[b])]))
        head_args = [_arg(rng, consts, variables) for _ in range(arities[head])]
        ann = "" if rng.random() < 0.2 else f" {random_interval_text(rng)}"
        lines.append(f"{_atom_text(names[head], head_args)} :- {', '.join(body)}{ann}.")
    return parse_program("\n".join(lines))


def ground_goals(program: Program) -> list[Atom]:
    """Every ground atom over the program's predicates and constants."""
    consts = sorted({a.name for c in program.clauses for atom in (c.head, *c.body)
                     for a in atom.args if isinstance(a, Constant)}) or ["a"]
    keys = sorted({atom.key for c in program.clauses for atom in (c.head, *c.body)})
    out = []
    for name, arity in keys:
        for args in itertools.product(consts, repeat=arity):
            out.append(Atom(name, tuple(Constant(c) for c in args)))
    return out
