"""The non-deterministic six-valued matrix and its implication-free reduct.

Each multioperation fixes the first two output coordinates by Boolean
operations on the inputs and leaves the remaining coordinate(s) free, subject
to the snapshot constraints.  Valuations are enumerated on the subformula
closure of a sequent; since every output set is nonempty, such a partial
valuation always extends to the whole language.
"""

from __future__ import annotations

import itertools

from . import formula as fm
from .logics import Logic
from .snapshots import DESIGNATED, NON_DESIGNATED, VALUES, Value6
from .verdict import Verdict

T, T0, b, n, F0, F = Value6
_TT0 = frozenset({T, T0})
_FF0 = frozenset({F, F0})
_D, _ND = DESIGNATED, NON_DESIGNATED


def _one(v):
    return frozenset({v})


# rows and columns in the order T, T0, b, n, F0, F
_ROW_AND_TRUE = [_TT0, _TT0, _one(b), _one(n), _FF0, _FF0]
_ROW_OR_FALSE = [_TT0, _TT0, _one(b), _one(n), _FF0, _FF0]
TRANSCRIBED = {
    "and": [
        _ROW_AND_TRUE,
        _ROW_AND_TRUE,
        [_one(b), _one(b), _one(b), _FF0, _FF0, _FF0],
        [_one(n), _one(n), _FF0, _one(n), _FF0, _FF0],
        [_FF0] * 6,
        [_FF0] * 6,
    ],
    "or": [
        [_TT0] * 6,
        [_TT0] * 6,
        [_TT0, _TT0, _one(b), _TT0, _one(b), _one(b)],
        [_TT0, _TT0, _TT0, _one(n), _one(n), _one(n)],
        _ROW_OR_FALSE,
        _ROW_OR_FALSE,
    ],
    "imp": [_ROW_AND_TRUE] * 3 + [[_TT0] * 6] * 3,
    "not": [_FF0, _FF0, _one(b), _one(n), _TT0, _TT0],
    "circ": [_D, _ND, _ND, _ND, _ND, _D],
}


def _fill(u1, u2):
    """All snapshots over {0,1} with the given first coordinates (``None`` = free)."""
    out = set()
    for v in VALUES:
        z1, z2, _ = v.triple
        if (u1 is None or z1 == u1) and (u2 is None or z2 == u2):
            out.add(v)
    return frozenset(out)


def _generate():
    tables = {"and": [], "or": [], "imp": []}
    for z in VALUES:
        z1, z2, _ = z.triple
        rows = {"and": [], "or": [], "imp": []}
        for w in VALUES:
            w1, w2, _ = w.triple
            rows["and"].append(_fill(z1 & w1, z2 | w2))
            rows["or"].append(_fill(z1 | w1, z2 & w2))
            rows["imp"].append(_fill((1 - z1) | w1, z1 & w2))
        for name in tables:
            tables[name].append(rows[name])
    tables["not"] = [_fill(z.triple[1], z.triple[0]) for z in VALUES]
    tables["circ"] = [_fill(z.triple[2], None) for z in VALUES]
    return tables


GENERATED = _generate()
if GENERATED != TRANSCRIBED:
    raise RuntimeError("generated multioperation tables disagree with the transcription")


def nmatrix_table(logic: Logic = Logic.LETK) -> dict:
    """Set-valued tables by connective name; the implication-free logic has no ``imp``."""
    logic = Logic.parse(logic)
    return {k: v for k, v in GENERATED.items() if k != "imp" or logic.base is Logic.LETK}


def options(name: str, *args: Value6) -> frozenset:
    row = GENERATED[name]
    for a in args:
        row = row[Value6(a)]
    return row


_BINARY_NAME = {fm.And: "and", fm.Or: "or", fm.Imp: "imp"}


def _order(s: fm.Sequent) -> list:
    """Variables in first-occurrence order, then the other closure nodes children first."""
    closure = fm.subformula_closure(s)
    variables = [fm.Var(name) for name in fm.sequent_variables(s)]
    return variables + [g for g in closure if not isinstance(g, fm.Var)]


def _choices(g, val):
    if isinstance(g, fm.Var):
        return VALUES
    if isinstance(g, fm.Top):
        return (T,)
    if isinstance(g, fm.Bot):
        return (F,)
    if isinstance(g, fm.Not):
        opts = options("not", val[g.child])
    elif isinstance(g, fm.Circ):
        opts = options("circ", val[g.child])
    else:
        opts = options(_BINARY_NAME[type(g)], val[g.left], val[g.right])
    return tuple(v for v in VALUES if v in opts)


def _search(nodes, accept):
    """Depth-first enumeration in canonical order; ``accept(node, value)`` may prune."""
    val = {}
    k = len(nodes)
    stack = [iter(_choices(nodes[0], val))] if k else []
    if not k:
        yield {}
        return
    while stack:
        depth = len(stack) - 1
        node = nodes[depth]
        for v in stack[-1]:
            if accept(node, v):
                val[node] = v
                break
        else:
            stack.pop()
            val.pop(node, None)
            continue
        if depth + 1 == k:
            yield dict(val)
            del val[node]
        else:
            stack.append(iter(_choices(nodes[depth + 1], val)))


def legal_valuations(s: fm.Sequent, logic: Logic = Logic.LETK):
    """Every legal valuation on the subformula closure of ``s``, without duplicates."""
    logic = Logic.parse(logic)
    fm.check_fragment(s.formulas(), logic.fragment)
    nodes = _order(s)
    return _search(nodes, lambda node, v: True)


def count_legal_valuations(s: fm.Sequent, logic: Logic = Logic.LETK) -> int:
    return sum(1 for _ in legal_valuations(s, logic))


def nmatrix_entails(s: fm.Sequent, logic: Logic = Logic.LETK) -> Verdict:
    """Valid iff every legal valuation designating the premises designates the conclusion.

    Branches are pruned as soon as a premise is undesignated or the conclusion
    designated; the first countermodel in enumeration order is returned.
    """
    logic = Logic.parse(logic)
    fm.check_fragment(s.formulas(), logic.fragment)
    nodes = _order(s)
    premises = set(s.premises)
    conclusion = s.conclusion
    visited = itertools.count()

    def accept(node, v):
        next(visited)
        if node in premises and not v.designated:
            return False
        if node == conclusion and v.designated:
            return False
        return True

    stats = {"backend": "python", "nodes": len(nodes)}
    for val in _search(nodes, accept):
        stats["visited"] = next(visited)
        return Verdict(False, "nmatrix", val, stats)
    stats["visited"] = next(visited)
    return Verdict(True, "nmatrix", None, stats)
