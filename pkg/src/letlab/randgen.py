"""Seeded random formulas and sequents.

All randomness flows through a :class:`random.Random` instance, so a seed
reproduces the same corpus on every platform.  Leaves are variables drawn
from ``p1..pk`` (optionally the constants); an inner node is chosen with
probability ``1 - leaf_prob`` until ``depth`` is exhausted, its connective
uniformly among those of the fragment.
"""

from __future__ import annotations

import random

from . import formula as fm

_UNARY = (fm.Not, fm.Circ)
_BINARY_FULL = (fm.And, fm.Or, fm.Imp)
_BINARY_FREE = (fm.And, fm.Or)


def variable_names(k: int) -> list:
    return [f"p{i}" for i in range(1, k + 1)]


def random_formula(rng: random.Random, names, depth: int, fragment: fm.Fragment = fm.Fragment.FULL,
                   constants: bool = False, leaf_prob: float = 0.25) -> fm.Formula:
    if depth <= 0 or rng.random() < leaf_prob:
        if constants and rng.random() < 0.1:
            return rng.choice((fm.Top(), fm.Bot()))
        return fm.Var(rng.choice(list(names)))
    binary = _BINARY_FREE if fragment is fm.Fragment.IMPLICATION_FREE else _BINARY_FULL
    ctor = rng.choice(_UNARY + binary)
    if ctor in _UNARY:
        return ctor(random_formula(rng, names, depth - 1, fragment, constants, leaf_prob))
    return ctor(
        random_formula(rng, names, depth - 1, fragment, constants, leaf_prob),
        random_formula(rng, names, depth - 1, fragment, constants, leaf_prob),
    )


def random_sequent(rng: random.Random, max_vars: int = 3, max_depth: int = 4, max_premises: int = 3,
                   fragment: fm.Fragment = fm.Fragment.FULL, constants: bool = False) -> fm.Sequent:
    names = variable_names(rng.randint(1, max_vars))
    premises = [
        random_formula(rng, names, rng.randint(0, max_depth), fragment, constants)
        for _ in range(rng.randint(0, max_premises))
    ]
    conclusion = random_formula(rng, names, rng.randint(0, max_depth), fragment, constants)
    return fm.Sequent(premises, conclusion)


def random_sequents(seed: int, count: int, **kwargs) -> list:
    rng = random.Random(seed)
    return [random_sequent(rng, **kwargs) for _ in range(count)]
