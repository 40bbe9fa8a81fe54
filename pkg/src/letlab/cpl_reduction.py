"""Reduction of six-valued consequence to classical tautology checking.

Every formula is mapped to three Boolean terms, one per snapshot coordinate,
over variables ``p_i^j`` (source variable ``i``, coordinate ``j``).  A sequent
holds in the matrix iff

    tau_k => (t1(B) => t1(A))

is a classical tautology, where ``B`` is the left-associated conjunction of
the premises and ``tau_k`` forces each variable triple to be a snapshot.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import formula as fm
from . import kernels
from .snapshots import Value6
from .verdict import Verdict


@dataclass(frozen=True)
class BVar:
    i: int  # 1-based source variable index
    j: int  # coordinate, 1..3

    def __post_init__(self):
        if self.i < 1 or self.j not in (1, 2, 3):
            raise ValueError(f"bad term variable p{self.i}^{self.j}")


@dataclass(frozen=True)
class BTop:
    pass


@dataclass(frozen=True)
class BBot:
    pass


@dataclass(frozen=True)
class BNot:
    child: "BoolTerm"


@dataclass(frozen=True)
class BMeet:
    left: "BoolTerm"
    right: "BoolTerm"


@dataclass(frozen=True)
class BJoin:
    left: "BoolTerm"
    right: "BoolTerm"


@dataclass(frozen=True)
class BImp:
    left: "BoolTerm"
    right: "BoolTerm"


BoolTerm = Union[BVar, BTop, BBot, BNot, BMeet, BJoin, BImp]
_BINARY = (BMeet, BJoin, BImp)


# --- construction -------------------------------------------------------------

def coord_terms(f: fm.Formula, var_index=None, fragment: fm.Fragment = fm.Fragment.FULL) -> tuple:
    """The three coordinate terms of ``f``.

    ``var_index`` maps variable names to 1-based indices; by default variables
    are numbered in first-occurrence order.  Shared subformulas share terms.
    """
    fm.check_fragment([f], fragment)
    if var_index is None:
        var_index = {name: i + 1 for i, name in enumerate(fm.variables(f))}
    memo = {}
    for g in fm.subformulas(f):
        if g in memo:
            continue
        if isinstance(g, fm.Var):
            i = var_index[g.name]
            memo[g] = (BVar(i, 1), BVar(i, 2), BVar(i, 3))
        elif isinstance(g, fm.Top):
            memo[g] = (BTop(), BBot(), BTop())
        elif isinstance(g, fm.Bot):
            memo[g] = (BBot(), BTop(), BTop())
        elif isinstance(g, fm.Not):
            z1, z2, z3 = memo[g.child]
            memo[g] = (z2, z1, z3)
        elif isinstance(g, fm.Circ):
            z3 = memo[g.child][2]
            memo[g] = (z3, BNot(z3), BTop())
        else:
            z1, z2, z3 = memo[g.left]
            w1, w2, w3 = memo[g.right]
            if isinstance(g, fm.And):
                memo[g] = (
                    BMeet(z1, w1),
                    BJoin(z2, w2),
                    BJoin(BJoin(BMeet(BMeet(BMeet(z1, z3), w1), w3), BMeet(z2, z3)), BMeet(w2, w3)),
                )
            elif isinstance(g, fm.Or):
                memo[g] = (
                    BJoin(z1, w1),
                    BMeet(z2, w2),
                    BJoin(BJoin(BMeet(BMeet(BMeet(z2, z3), w2), w3), BMeet(z1, z3)), BMeet(w1, w3)),
                )
            else:
                memo[g] = (
                    BImp(z1, w1),
                    BMeet(z1, w2),
                    BJoin(BJoin(BMeet(BMeet(z1, w2), w3), BMeet(z2, z3)), BMeet(w1, w3)),
                )
    return memo[f]


def snapshot_constraint(i: int) -> BoolTerm:
    """(p_i^3 => (p_i^1 + p_i^2)) * -(p_i^1 * p_i^2 * p_i^3)."""
    p1, p2, p3 = BVar(i, 1), BVar(i, 2), BVar(i, 3)
    return BMeet(BImp(p3, BJoin(p1, p2)), BNot(BMeet(BMeet(p1, p2), p3)))


def constraint_term(k: int) -> BoolTerm:
    """Meet of the snapshot constraints for variables 1..k; ``BTop`` when k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return BTop()
    acc = snapshot_constraint(1)
    for i in range(2, k + 1):
        acc = BMeet(acc, snapshot_constraint(i))
    return acc


def reduce_sequent(s: fm.Sequent, fragment: fm.Fragment = fm.Fragment.FULL) -> BoolTerm:
    """The classical term whose tautologyhood decides the sequent in the six-valued matrix."""
    fm.check_fragment(s.formulas(), fragment)
    names = fm.sequent_variables(s)
    index = {name: i + 1 for i, name in enumerate(names)}
    guard = constraint_term(len(names))
    goal = coord_terms(s.conclusion, index)[0]
    if s.premises:
        goal = BImp(coord_terms(fm.big_and(s.premises), index)[0], goal)
    return BImp(guard, goal)


# --- printing -----------------------------------------------------------------

_SUP = {1: "¹", 2: "²", 3: "³"}
_ASCII = {BMeet: "*", BJoin: "+", BImp: "=>", "not": "-", "top": "1", "bot": "0"}
_UNICODE = {BMeet: "⊓", BJoin: "⊔", BImp: "⇒", "not": "∼", "top": "⊤", "bot": "⊥"}


def term_to_text(t: BoolTerm, unicode: bool = False) -> str:
    """Render a term; binary operands of binary operators are always parenthesized."""
    sym = _UNICODE if unicode else _ASCII

    def render(u, nested):
        if isinstance(u, BVar):
            return f"p{u.i}{_SUP[u.j]}" if unicode else f"p{u.i}^{u.j}"
        if isinstance(u, BTop):
            return sym["top"]
        if isinstance(u, BBot):
            return sym["bot"]
        if isinstance(u, BNot):
            return sym["not"] + render(u.child, True)
        text = f"{render(u.left, True)} {sym[type(u)]} {render(u.right, True)}"
        return f"({text})" if nested else text

    return render(t, False)


# --- classical evaluation -----------------------------------------------------

def term_variables(t: BoolTerm) -> list:
    """Distinct variables of ``t`` sorted by (source index, coordinate)."""
    found = set()
    seen = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if id(u) in seen:
            continue
        seen.add(id(u))
        if isinstance(u, BVar):
            found.add((u.i, u.j))
        elif isinstance(u, BNot):
            stack.append(u.child)
        elif isinstance(u, _BINARY):
            stack.extend((u.left, u.right))
    return [BVar(i, j) for i, j in sorted(found)]


def compile_term(t: BoolTerm, variables: list):
    """Flatten a term DAG into opcode arrays, root last; shared nodes are emitted once."""
    slot_of_var = {(v.i, v.j): k for k, v in enumerate(variables)}
    ops, a1, a2 = [], [], []
    slot = {}
    stack = [(t, False)]
    while stack:
        u, ready = stack.pop()
        if id(u) in slot:
            continue
        kids = (u.child,) if isinstance(u, BNot) else (u.left, u.right) if isinstance(u, _BINARY) else ()
        if not ready and kids:
            stack.append((u, True))
            stack.extend((c, False) for c in reversed(kids))
            continue
        if isinstance(u, BVar):
            code, x, y = kernels.BOP_VAR, slot_of_var[(u.i, u.j)], 0
        elif isinstance(u, BTop):
            code, x, y = kernels.BOP_TOP, 0, 0
        elif isinstance(u, BBot):
            code, x, y = kernels.BOP_BOT, 0, 0
        elif isinstance(u, BNot):
            code, x, y = kernels.BOP_NOT, slot[id(u.child)], 0
        else:
            code = {BMeet: kernels.BOP_MEET, BJoin: kernels.BOP_JOIN, BImp: kernels.BOP_IMP}[type(u)]
            x, y = slot[id(u.left)], slot[id(u.right)]
        slot[id(u)] = len(ops)
        ops.append(code)
        a1.append(x)
        a2.append(y)
    return np.array(ops, dtype=np.int64), np.array(a1, dtype=np.int64), np.array(a2, dtype=np.int64)


def evaluate_term(t: BoolTerm, env: dict, top: int = 1) -> int:
    """Evaluate over a powerset algebra with the given top; ``env`` maps ``(i, j)`` to elements."""
    memo = {}

    def ev(u):
        key = id(u)
        if key in memo:
            return memo[key]
        if isinstance(u, BVar):
            r = env[(u.i, u.j)]
        elif isinstance(u, BTop):
            r = top
        elif isinstance(u, BBot):
            r = 0
        elif isinstance(u, BNot):
            r = top ^ ev(u.child)
        elif isinstance(u, BMeet):
            r = ev(u.left) & ev(u.right)
        elif isinstance(u, BJoin):
            r = ev(u.left) | ev(u.right)
        else:
            r = (top ^ ev(u.left)) | ev(u.right)
        memo[key] = r
        return r

    return ev(t)


def truth_table_engine(t: BoolTerm):
    """Return the first falsifying row as ``{variable: bit}``, or ``None``."""
    variables = term_variables(t)
    ops, a1, a2 = compile_term(t, variables)
    row = kernels.first_falsifier(ops, a1, a2, len(variables))
    if row < 0:
        return None
    m = len(variables)
    return {v: (row >> (m - 1 - k)) & 1 for k, v in enumerate(variables)}


def cpl_taut(t: BoolTerm, engine=truth_table_engine) -> Verdict:
    """Classical tautology check; the countermodel maps ``p_i^j`` names to bits."""
    nvars = len(term_variables(t))
    falsifier = engine(t)
    stats = {"rows": 1 << nvars, "variables": nvars, "backend": kernels.get_backend()}
    if falsifier is None:
        return Verdict(True, "cpl", None, stats)
    cm = {term_to_text(v): bit for v, bit in falsifier.items()}
    return Verdict(False, "cpl", cm, stats)


def cpl_entails(s: fm.Sequent, fragment: fm.Fragment = fm.Fragment.FULL) -> Verdict:
    """Decide a sequent through the reduction.

    A falsifying row is translated back to an assignment of six-valued names
    to the source variables.
    """
    names = fm.sequent_variables(s)
    verdict = cpl_taut(reduce_sequent(s, fragment))
    if verdict.valid:
        return verdict
    cm = {}
    for i, name in enumerate(names, start=1):
        bits = tuple(verdict.countermodel.get(f"p{i}^{j}", 0) for j in (1, 2, 3))
        cm[name] = Value6.from_triple(bits)
    return Verdict(False, "cpl", cm, verdict.stats)
