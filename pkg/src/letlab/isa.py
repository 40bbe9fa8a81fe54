"""The six-element involutive Stone algebra and degree-preserving consequence.

The lattice order is the twist order over the two-element algebra
(F < F0 < {n, b} < T0 < T); ``nabla`` sends everything except F to T.
"""

from __future__ import annotations

import numpy as np

from . import formula as fm
from . import kernels
from .matrix6 import TABLES, op
from .snapshots import Value6
from .twist import L6_LEQ
from .verdict import Verdict

T, T0, b, n, F0, F = Value6
S6Value = Value6

LEQ = L6_LEQ
MEET = TABLES["and"]


def nabla(z: Value6) -> Value6:
    return F if Value6(z) is F else T


def nabla_via_circ(z: Value6) -> Value6:
    """``z | ~oz`` computed with the matrix operations."""
    return op("or", z, op("not", op("circ", z)))


def circ_via_nabla(z: Value6) -> Value6:
    """``~nabla(z) | ~nabla(~z)``."""
    return op("or", op("not", nabla(z)), op("not", nabla(op("not", z))))


def leq(z: Value6, w: Value6) -> bool:
    return bool(LEQ[Value6(z), Value6(w)])


def meet(*values: Value6) -> Value6:
    acc = T
    for z in values:
        acc = Value6(int(MEET[acc, Value6(z)]))
    return acc


def degree_entails(s: fm.Sequent, fragment: fm.Fragment = fm.Fragment.FULL) -> Verdict:
    """Degree-preserving consequence over the six-element algebra.

    Valid iff the conclusion is T under every assignment, or the meet of all
    premises is below the conclusion under every assignment.  The witness is
    the first assignment violating the meet condition.
    """
    fm.check_fragment(s.formulas(), fragment)
    prog = kernels.compile_sequent(s, int(T), int(F))
    unary = np.stack([TABLES["not"], TABLES["circ"]])
    binary = np.stack([TABLES["and"], TABLES["or"], TABLES["imp"]])
    first, all_top = kernels.degree_scan(prog, unary, binary, LEQ, MEET, int(T), 6)
    stats = {"assignments": 6 ** prog.nvars, "backend": kernels.get_backend()}
    if first < 0 or all_top:
        stats["reason"] = "top-valued conclusion" if all_top else "meet below conclusion"
        return Verdict(True, "degree", None, stats)
    digits = kernels.decode_assignment(first, prog.nvars, 6)
    cm = {name: Value6(i) for name, i in zip(prog.var_names, digits)}
    return Verdict(False, "degree", cm, stats)
