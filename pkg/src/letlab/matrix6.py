"""The deterministic six-valued matrix and its implication-free reduct.

Operation tables are generated from the twist closed forms over the
two-element algebra and compared at import time with the transcription below;
any disagreement aborts the import.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import formula as fm
from .boolean_algebra import B2
from .errors import UnboundVariableError
from .snapshots import Value6
from .twist import entails_in, get_twist
from .verdict import Verdict

T, T0, b, n, F0, F = Value6

# rows and columns in the order T, T0, b, n, F0, F
TRANSCRIBED = {
    "and": [
        [T, T0, b, n, F0, F],
        [T0, T0, b, n, F0, F],
        [b, b, b, F0, F0, F],
        [n, n, F0, n, F0, F],
        [F0, F0, F0, F0, F0, F],
        [F, F, F, F, F, F],
    ],
    "or": [
        [T, T, T, T, T, T],
        [T, T0, T0, T0, T0, T0],
        [T, T0, b, T0, b, b],
        [T, T0, T0, n, n, n],
        [T, T0, b, n, F0, F0],
        [T, T0, b, n, F0, F],
    ],
    "imp": [
        [T, T0, b, n, F0, F],
        [T, T0, b, n, F0, F],
        [T, T0, b, n, F0, F],
        [T, T0, T0, T0, T0, T0],
        [T, T0, T0, T0, T0, T0],
        [T, T, T, T, T, T],
    ],
    "not": [F, F0, b, n, T0, T],
    "circ": [T, F, F, F, F, T],
}

# triple equivalence A ≡ B, tabulated
EQUIV_TRANSCRIBED = [
    [T, F, F, F, F, F],
    [F, T0, F0, n, F0, F],
    [F, F0, b, n, F0, F],
    [F, n, n, T0, n, F],
    [F, F0, F0, n, T0, F],
    [F, F, F, F, F, T],
]

_ALG = get_twist(B2)
_ALG_F = get_twist(B2, fm.Fragment.IMPLICATION_FREE)

TABLES = {name: np.array(_ALG.table(name), dtype=np.int64) for name in ("and", "or", "imp", "not", "circ")}


def _check_tables():
    for name, rows in TRANSCRIBED.items():
        expected = np.array(rows, dtype=np.int64)
        if not np.array_equal(TABLES[name], expected):
            bad = np.argwhere(TABLES[name] != expected)[0]
            raise RuntimeError(f"generated {name} table disagrees with the transcription at {tuple(bad)}")


_check_tables()


def op(name: str, *args: Value6) -> Value6:
    """Apply a connective (``and``, ``or``, ``imp``, ``not``, ``circ``) to values."""
    return Value6(int(TABLES[name][tuple(int(a) for a in args)]))


def eval6(f: fm.Formula, a: dict, fragment: fm.Fragment = fm.Fragment.FULL) -> Value6:
    """Evaluate ``f`` under an assignment of Value6 to variable names."""
    fm.check_fragment([f], fragment)
    memo = {}
    for g in fm.subformulas(f):
        if g in memo:
            continue
        if isinstance(g, fm.Var):
            if g.name not in a:
                raise UnboundVariableError(f"variable {g.name!r} has no value")
            memo[g] = Value6(a[g.name])
        elif isinstance(g, fm.Top):
            memo[g] = T
        elif isinstance(g, fm.Bot):
            memo[g] = F
        elif isinstance(g, fm.Not):
            memo[g] = op("not", memo[g.child])
        elif isinstance(g, fm.Circ):
            memo[g] = op("circ", memo[g.child])
        else:
            name = {fm.And: "and", fm.Or: "or", fm.Imp: "imp"}[type(g)]
            memo[g] = op(name, memo[g.left], memo[g.right])
    return memo[f]


def entails6(s: fm.Sequent, fragment: fm.Fragment = fm.Fragment.FULL) -> Verdict:
    """Decide the sequent over all 6^k assignments; the first countermodel is reported."""
    alg = _ALG_F if fragment is fm.Fragment.IMPLICATION_FREE else _ALG
    verdict = entails_in(alg, s, "matrix", budget=None)
    if verdict.countermodel is not None:
        verdict.countermodel = {k: z.to_value6() for k, z in verdict.countermodel.items()}
    return verdict


def tautology6(f: fm.Formula, fragment: fm.Fragment = fm.Fragment.FULL) -> Verdict:
    return entails6(fm.Sequent([], f), fragment)


def equiv6(z: Value6, w: Value6) -> Value6:
    return Value6(EQUIV_TRANSCRIBED[Value6(z)][Value6(w)])


# --- triple equivalence as a congruence ----------------------------------------

EQUIV_POOL = tuple(fm.parse(t) for t in ("p", "q", "r", "~p", "o q", "p & q", "p -> r", "~(q | r)"))
_SMALL_POOL = EQUIV_POOL[:5]


def _assignments(names):
    for combo in itertools.product(Value6, repeat=len(names)):
        yield dict(zip(names, combo))


def equivalence_properties(pool=EQUIV_POOL):
    """Check the eight congruence properties of ``A ≡ B``.

    Properties 1 and 2 run over every value pair and every assignment to the
    variables of ``pool``; properties 3 to 8 instantiate the schemas with
    members of ``pool`` and decide each instance with :func:`entails6`.
    Returns ``(property, checked, failures)`` triples.
    """
    eq = fm.equiv
    names = sorted(set().union(*(fm.variables(f) for f in pool)))
    p, q = fm.Var("p"), fm.Var("q")
    results = []

    def run(label, cases):
        checked, bad = 0, []
        for case, ok in cases:
            checked += 1
            if not ok:
                bad.append(case)
        results.append((label, checked, bad))

    def valid(premises, conclusion):
        return entails6(fm.Sequent(premises, conclusion)).valid

    run(1, (((z, w), equiv6(z, w).designated == (z == w)
             and eval6(eq(p, q), {"p": z, "q": w}) == equiv6(z, w))
            for z in Value6 for w in Value6))
    run(2, (((a, b_, tuple(v.values())), eval6(eq(a, b_), v).designated == (eval6(a, v) == eval6(b_, v)))
            for a in pool for b_ in pool for v in _assignments(names)))
    run(3, ((a, valid([], eq(a, a))) for a in pool))
    run(4, (((a, b_), valid([eq(a, b_)], eq(b_, a))) for a in pool for b_ in pool))
    run(5, (((a, b_, c), valid([eq(a, b_), eq(b_, c)], eq(a, c)))
            for a in pool for b_ in pool for c in pool))
    run(6, (((k.__name__, a, b_), valid([eq(a, b_)], eq(k(a), k(b_))))
            for k in (fm.Not, fm.Circ) for a in pool for b_ in pool))
    run(7, (((k.__name__, a, b_, c, d), valid([eq(a, b_), eq(c, d)], eq(k(a, c), k(b_, d))))
            for k in (fm.And, fm.Or, fm.Imp)
            for a, b_, c, d in itertools.product(_SMALL_POOL, repeat=4)))
    run(8, ((a, valid([eq(a, fm.Imp(a, a))], a) and valid([a], eq(a, fm.Imp(a, a)))) for a in pool))
    return results
