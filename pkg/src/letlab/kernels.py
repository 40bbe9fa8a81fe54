"""Exhaustive-search inner loops.

Two interchangeable backends:

* ``numba``: ``@njit`` odometer loops that stop at the first witness;
* ``numpy``: chunked evaluation by fancy indexing into the operation tables.

The backend is chosen by the ``LETLAB_BACKEND`` environment variable
(``numba`` or ``numpy``); numba is the default when it imports.  Both report
the same witness: assignments are enumerated as base-``d`` counters with
variable 0 most significant, and the lowest failing index wins.

Formulas are compiled to a flat program in children-first order: ``op[k]``
is the opcode of node ``k`` and ``a1[k]``/``a2[k]`` its operand slots (a
variable index for ``VAR``, a domain index for ``CONST``).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from . import formula as fm

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


OP_VAR, OP_CONST, OP_NOT, OP_CIRC, OP_AND, OP_OR, OP_IMP = range(7)

# Boolean-term opcodes for the classical engine
BOP_VAR, BOP_TOP, BOP_BOT, BOP_NOT, BOP_MEET, BOP_JOIN, BOP_IMP = range(7)

CHUNK = 1 << 15
BACKENDS = ("numba", "numpy")


def _initial_backend():
    requested = os.environ.get("LETLAB_BACKEND", "").strip().lower()
    if requested == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


_backend = _initial_backend()


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _backend = name


# --- program compilation ------------------------------------------------------

@dataclass(frozen=True)
class Program:
    nodes: tuple          # closure formulas, children first
    op: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    var_names: tuple
    premises: np.ndarray  # node index of each premise
    conclusion: int

    @property
    def nvars(self) -> int:
        return len(self.var_names)


def compile_sequent(s: fm.Sequent, top_index: int, bot_index: int) -> Program:
    """Compile a sequent; ``top_index``/``bot_index`` are the domain slots for the constants."""
    nodes = fm.subformula_closure(s)
    names = tuple(fm.sequent_variables(s))
    var_slot = {name: i for i, name in enumerate(names)}
    slot = {f: k for k, f in enumerate(nodes)}
    n = len(nodes)
    op = np.zeros(n, dtype=np.int64)
    a1 = np.zeros(n, dtype=np.int64)
    a2 = np.zeros(n, dtype=np.int64)
    binary_op = {fm.And: OP_AND, fm.Or: OP_OR, fm.Imp: OP_IMP}
    for k, f in enumerate(nodes):
        if isinstance(f, fm.Var):
            op[k], a1[k] = OP_VAR, var_slot[f.name]
        elif isinstance(f, fm.Top):
            op[k], a1[k] = OP_CONST, top_index
        elif isinstance(f, fm.Bot):
            op[k], a1[k] = OP_CONST, bot_index
        elif isinstance(f, fm.Not):
            op[k], a1[k] = OP_NOT, slot[f.child]
        elif isinstance(f, fm.Circ):
            op[k], a1[k] = OP_CIRC, slot[f.child]
        else:
            op[k] = binary_op[type(f)]
            a1[k], a2[k] = slot[f.left], slot[f.right]
    premises = np.array([slot[p] for p in s.premises], dtype=np.int64)
    return Program(tuple(nodes), op, a1, a2, names, premises, slot[s.conclusion])


def decode_assignment(index: int, nvars: int, d: int) -> list:
    """Domain index of each variable in the ``index``-th assignment."""
    digits = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        index, digits[i] = divmod(index, d)
    return digits


def evaluate_program(prog: Program, unary, binary, digits) -> np.ndarray:
    """Value of every node under one assignment (plain Python; used for reporting)."""
    vals = np.zeros(len(prog.nodes), dtype=np.int64)
    for k in range(len(prog.nodes)):
        o = prog.op[k]
        if o == OP_VAR:
            vals[k] = digits[prog.a1[k]]
        elif o == OP_CONST:
            vals[k] = prog.a1[k]
        elif o in (OP_NOT, OP_CIRC):
            vals[k] = unary[o - OP_NOT, vals[prog.a1[k]]]
        else:
            vals[k] = binary[o - OP_AND, vals[prog.a1[k]], vals[prog.a2[k]]]
    return vals


# --- numba backend ------------------------------------------------------------

@njit(cache=True)
def _eval_nodes_nb(op, a1, a2, unary, binary, digits, vals):
    for k in range(op.shape[0]):
        o = op[k]
        if o == 0:
            vals[k] = digits[a1[k]]
        elif o == 1:
            vals[k] = a1[k]
        elif o == 2 or o == 3:
            vals[k] = unary[o - 2, vals[a1[k]]]
        else:
            vals[k] = binary[o - 4, vals[a1[k]], vals[a2[k]]]


@njit(cache=True)
def _advance_nb(digits, nvars, d):
    i = nvars - 1
    while i >= 0:
        digits[i] += 1
        if digits[i] < d:
            return
        digits[i] = 0
        i -= 1


@njit(cache=True)
def _first_countermodel_nb(op, a1, a2, unary, binary, designated, premises, conclusion, nvars, d, start, stop):
    digits = np.zeros(max(nvars, 1), dtype=np.int64)
    rem = start
    for i in range(nvars - 1, -1, -1):
        digits[i] = rem % d
        rem //= d
    vals = np.zeros(op.shape[0], dtype=np.int64)
    for idx in range(start, stop):
        _eval_nodes_nb(op, a1, a2, unary, binary, digits, vals)
        held = True
        for p in range(premises.shape[0]):
            if not designated[vals[premises[p]]]:
                held = False
                break
        if held and not designated[vals[conclusion]]:
            return idx
        _advance_nb(digits, nvars, d)
    return -1


@njit(cache=True)
def _degree_scan_nb(op, a1, a2, unary, binary, leq, meet, premises, conclusion, nvars, d, top, total):
    digits = np.zeros(max(nvars, 1), dtype=np.int64)
    vals = np.zeros(op.shape[0], dtype=np.int64)
    first_violation = -1
    all_top = True
    for idx in range(total):
        _eval_nodes_nb(op, a1, a2, unary, binary, digits, vals)
        c = vals[conclusion]
        if c != top:
            all_top = False
        if first_violation < 0:
            m = top
            for p in range(premises.shape[0]):
                m = meet[m, vals[premises[p]]]
            if not leq[m, c]:
                first_violation = idx
        if first_violation >= 0 and not all_top:
            break
        _advance_nb(digits, nvars, d)
    return first_violation, all_top


@njit(cache=True)
def _first_falsifier_nb(op, a1, a2, m, start, stop):
    # bit-parallel: each uint64 word holds 64 consecutive rows, bit t = row w*64 + t
    n = op.shape[0]
    ones = np.uint64(0xFFFFFFFFFFFFFFFF)
    pattern = np.zeros(6, dtype=np.uint64)
    for b in range(6):
        mask = np.uint64(0)
        for t in range(64):
            if (t >> b) & 1:
                mask |= np.uint64(1) << np.uint64(t)
        pattern[b] = mask
    vals = np.zeros(n, dtype=np.uint64)
    w0 = start // 64
    w1 = (stop + 63) // 64
    for w in range(w0, w1):
        for k in range(n):
            o = op[k]
            if o == 0:
                b = m - 1 - a1[k]
                if b < 6:
                    vals[k] = pattern[b]
                elif (w >> (b - 6)) & 1:
                    vals[k] = ones
                else:
                    vals[k] = np.uint64(0)
            elif o == 1:
                vals[k] = ones
            elif o == 2:
                vals[k] = np.uint64(0)
            elif o == 3:
                vals[k] = ~vals[a1[k]]
            elif o == 4:
                vals[k] = vals[a1[k]] & vals[a2[k]]
            elif o == 5:
                vals[k] = vals[a1[k]] | vals[a2[k]]
            else:
                vals[k] = ~vals[a1[k]] | vals[a2[k]]
        bad = ~vals[n - 1]
        if bad != 0:
            for t in range(64):
                r = w * 64 + t
                if r >= start and r < stop and (bad >> np.uint64(t)) & np.uint64(1):
                    return r
    return -1


# --- numpy backend ------------------------------------------------------------

def _digits_np(idx, nvars, d):
    powers = d ** np.arange(nvars - 1, -1, -1, dtype=np.int64)
    return (idx[None, :] // powers[:, None]) % d


def _eval_nodes_np(op, a1, a2, unary, binary, digits, width):
    vals = np.empty((op.shape[0], width), dtype=np.int64)
    for k in range(op.shape[0]):
        o = op[k]
        if o == OP_VAR:
            vals[k] = digits[a1[k]]
        elif o == OP_CONST:
            vals[k] = a1[k]
        elif o in (OP_NOT, OP_CIRC):
            vals[k] = unary[o - OP_NOT][vals[a1[k]]]
        else:
            vals[k] = binary[o - OP_AND][vals[a1[k]], vals[a2[k]]]
    return vals


def _first_countermodel_np(op, a1, a2, unary, binary, designated, premises, conclusion, nvars, d, start, stop):
    for lo in range(start, stop, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        vals = _eval_nodes_np(op, a1, a2, unary, binary, _digits_np(idx, nvars, d), idx.size)
        bad = ~designated[vals[conclusion]]
        for p in premises:
            bad &= designated[vals[p]]
        hits = np.flatnonzero(bad)
        if hits.size:
            return int(idx[hits[0]])
    return -1


def _degree_scan_np(op, a1, a2, unary, binary, leq, meet, premises, conclusion, nvars, d, top, total):
    first_violation = -1
    all_top = True
    for lo in range(0, total, CHUNK):
        idx = np.arange(lo, min(lo + CHUNK, total), dtype=np.int64)
        vals = _eval_nodes_np(op, a1, a2, unary, binary, _digits_np(idx, nvars, d), idx.size)
        c = vals[conclusion]
        not_top = np.flatnonzero(c != top)
        if first_violation < 0:
            m = np.full(idx.size, top, dtype=np.int64)
            for p in premises:
                m = meet[m, vals[p]]
            hits = np.flatnonzero(~leq[m, c])
            if hits.size:
                first_violation = int(idx[hits[0]])
        if not_top.size:
            all_top = False
        if first_violation >= 0 and not all_top:
            break
    return first_violation, all_top


def _first_falsifier_np(op, a1, a2, m, start, stop):
    n = op.shape[0]
    for lo in range(start, stop, CHUNK):
        rows = np.arange(lo, min(lo + CHUNK, stop), dtype=np.int64)
        vals = np.empty((n, rows.size), dtype=bool)
        for k in range(n):
            o = op[k]
            if o == BOP_VAR:
                vals[k] = (rows >> (m - 1 - a1[k])) & 1
            elif o == BOP_TOP:
                vals[k] = True
            elif o == BOP_BOT:
                vals[k] = False
            elif o == BOP_NOT:
                vals[k] = ~vals[a1[k]]
            elif o == BOP_MEET:
                vals[k] = vals[a1[k]] & vals[a2[k]]
            elif o == BOP_JOIN:
                vals[k] = vals[a1[k]] | vals[a2[k]]
            else:
                vals[k] = ~vals[a1[k]] | vals[a2[k]]
        hits = np.flatnonzero(~vals[n - 1])
        if hits.size:
            return int(rows[hits[0]])
    return -1


# --- dispatch -----------------------------------------------------------------

def first_countermodel(prog: Program, unary, binary, designated, d: int, start: int = 0, stop=None, backend=None) -> int:
    """Index of the first assignment in ``[start, stop)`` designating every premise but not the conclusion, or -1."""
    total = d ** prog.nvars
    stop = total if stop is None else min(stop, total)
    args = (
        prog.op, prog.a1, prog.a2,
        np.ascontiguousarray(unary, dtype=np.int64),
        np.ascontiguousarray(binary, dtype=np.int64),
        np.ascontiguousarray(designated, dtype=np.bool_),
        prog.premises, int(prog.conclusion), prog.nvars, int(d), int(start), int(stop),
    )
    if (backend or _backend) == "numba":
        return int(_first_countermodel_nb(*args))
    return _first_countermodel_np(*args)


def degree_scan(prog: Program, unary, binary, leq, meet, top: int, d: int, backend=None):
    """Return ``(first index where meet(premises) <= conclusion fails or -1, conclusion top everywhere)``."""
    args = (
        prog.op, prog.a1, prog.a2,
        np.ascontiguousarray(unary, dtype=np.int64),
        np.ascontiguousarray(binary, dtype=np.int64),
        np.ascontiguousarray(leq, dtype=np.bool_),
        np.ascontiguousarray(meet, dtype=np.int64),
        prog.premises, int(prog.conclusion), prog.nvars, int(d), int(top), int(d) ** prog.nvars,
    )
    if (backend or _backend) == "numba":
        first, all_top = _degree_scan_nb(*args)
        return int(first), bool(all_top)
    return _degree_scan_np(*args)


def first_falsifier(op, a1, a2, m: int, backend=None) -> int:
    """First row (variable 0 is the most significant bit) where the last node evaluates to 0, or -1."""
    op = np.ascontiguousarray(op, dtype=np.int64)
    a1 = np.ascontiguousarray(a1, dtype=np.int64)
    a2 = np.ascontiguousarray(a2, dtype=np.int64)
    if (backend or _backend) == "numba":
        return int(_first_falsifier_nb(op, a1, a2, int(m), 0, 1 << m))
    return _first_falsifier_np(op, a1, a2, int(m), 0, 1 << m)
