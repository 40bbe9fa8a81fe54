"""Twist algebras of snapshots over a finite Boolean algebra.

The five operations are computed coordinatewise from closed forms; ``x ^ top``
is the Boolean complement, so every function below works on plain ints and
on numpy integer arrays alike.  Over the two-element algebra the result is
the six-valued matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import formula as fm
from . import kernels
from .boolean_algebra import B2, FiniteBooleanAlgebra
from .errors import BudgetExceeded
from .snapshots import Snapshot, Value6, snapshot_domain
from .verdict import Verdict

DEFAULT_BUDGET = 10 ** 8


# --- closed forms -------------------------------------------------------------

def t_and(z, w, top):
    z1, z2, z3 = z
    w1, w2, w3 = w
    return (z1 & w1, z2 | w2, (z1 & z3 & w1 & w3) | (z2 & z3) | (w2 & w3))


def t_or(z, w, top):
    z1, z2, z3 = z
    w1, w2, w3 = w
    return (z1 | w1, z2 & w2, (z2 & z3 & w2 & w3) | (z1 & z3) | (w1 & w3))


def t_imp(z, w, top):
    z1, z2, z3 = z
    w1, w2, w3 = w
    return ((z1 ^ top) | w1, z1 & w2, (z1 & w2 & w3) | (z2 & z3) | (w1 & w3))


def t_not(z, top):
    z1, z2, z3 = z
    return (z2, z1, z3)


def t_circ(z, top):
    z3 = z[2]
    return (z3, z3 ^ top, z3 | top)


UNARY_FORMS = {"not": t_not, "circ": t_circ}
BINARY_FORMS = {"and": t_and, "or": t_or, "imp": t_imp}
CONNECTIVES = ("and", "or", "imp", "not", "circ")


def connectives(fragment: fm.Fragment = fm.Fragment.FULL) -> tuple:
    if fragment is fm.Fragment.IMPLICATION_FREE:
        return ("and", "or", "not", "circ")
    return CONNECTIVES


# --- the algebra --------------------------------------------------------------

@dataclass
class TwistAlgebra:
    base: FiniteBooleanAlgebra
    fragment: fm.Fragment
    domain: list
    unary: np.ndarray       # (2, d): not, circ
    binary: np.ndarray      # (3, d, d): and, or, imp
    designated: np.ndarray  # (d,) bool
    top_index: int
    bot_index: int
    _index: dict = field(repr=False, default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.domain)

    def index(self, z: Snapshot) -> int:
        if z.algebra != self.base:
            raise ValueError("snapshot belongs to a different Boolean algebra")
        return self._index[z.triple]

    def table(self, connective: str) -> np.ndarray:
        if connective not in connectives(self.fragment):
            raise ValueError(f"connective {connective!r} is not in the {self.fragment.value} fragment")
        if connective in UNARY_FORMS:
            return self.unary[("not", "circ").index(connective)]
        return self.binary[("and", "or", "imp").index(connective)]

    def apply(self, connective: str, *args: Snapshot) -> Snapshot:
        t = self.table(connective)
        return self.domain[t[tuple(self.index(z) for z in args)]]


def _coords(domain):
    return tuple(np.array([z.triple[j] for z in domain], dtype=np.int64) for j in range(3))


def build_twist(B: FiniteBooleanAlgebra = B2, fragment: fm.Fragment = fm.Fragment.FULL) -> TwistAlgebra:
    """Tabulate all five operations over the snapshot domain of ``B``.

    Raises ``RuntimeError`` if an output falls outside the domain.
    """
    domain = snapshot_domain(B)
    d, top, size = len(domain), B.top, B.size
    z1, z2, z3 = _coords(domain)
    lookup = np.full(size ** 3, -1, dtype=np.int64)
    lookup[(z1 * size + z2) * size + z3] = np.arange(d)

    def to_index(triple):
        idx = lookup[(triple[0] * size + triple[1]) * size + triple[2]]
        if (idx < 0).any():
            raise RuntimeError("twist operation left the snapshot domain")
        return idx

    unary = np.stack([to_index(UNARY_FORMS[name]((z1, z2, z3), top)) for name in ("not", "circ")])
    zz = tuple(c[:, None] for c in (z1, z2, z3))
    ww = tuple(c[None, :] for c in (z1, z2, z3))
    binary = np.stack([to_index(BINARY_FORMS[name](zz, ww, top)) for name in ("and", "or", "imp")])
    index = {z.triple: i for i, z in enumerate(domain)}
    return TwistAlgebra(
        base=B,
        fragment=fragment,
        domain=domain,
        unary=unary,
        binary=binary,
        designated=z1 == top,
        top_index=index[(top, 0, top)],
        bot_index=index[(0, top, top)],
        _index=index,
    )


_cache: dict = {}


def get_twist(B: FiniteBooleanAlgebra, fragment: fm.Fragment = fm.Fragment.FULL) -> TwistAlgebra:
    key = (B.atom_count, fragment)
    if key not in _cache:
        _cache[key] = build_twist(B, fragment)
    return _cache[key]


def entails_in(alg: TwistAlgebra, s: fm.Sequent, method: str, budget=DEFAULT_BUDGET) -> Verdict:
    """Exhaustive consequence check in a tabulated algebra with the usual designated set."""
    fm.check_fragment(s.formulas(), alg.fragment)
    prog = kernels.compile_sequent(s, alg.top_index, alg.bot_index)
    total = alg.size ** prog.nvars
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{alg.size}^{prog.nvars} = {total} assignments exceeds the budget of {budget}")
    idx = kernels.first_countermodel(prog, alg.unary, alg.binary, alg.designated, alg.size)
    stats = {"assignments": total, "nodes": len(prog.nodes), "backend": kernels.get_backend()}
    if idx < 0:
        return Verdict(True, method, None, stats)
    digits = kernels.decode_assignment(idx, prog.nvars, alg.size)
    cm = {name: alg.domain[i] for name, i in zip(prog.var_names, digits)}
    return Verdict(False, method, cm, stats)


def twist_entails(B: FiniteBooleanAlgebra, s: fm.Sequent, fragment: fm.Fragment = fm.Fragment.FULL,
                  budget=DEFAULT_BUDGET) -> Verdict:
    """Brute-force consequence over the twist matrix of ``B``; designated means ``z1 == top``."""
    return entails_in(get_twist(B, fragment), s, "twist", budget)


# --- lattice laws -------------------------------------------------------------

@dataclass
class LawResult:
    name: str
    passed: bool
    checked: int
    counterexample: tuple | None = None


@dataclass
class LatticeReport:
    atoms: int
    size: int
    laws: list

    @property
    def passed(self) -> bool:
        return all(law.passed for law in self.laws)

    def failures(self) -> list:
        return [law for law in self.laws if not law.passed]


def _law(name, ok, witnesses):
    if ok.all():
        return LawResult(name, True, int(ok.size))
    first = tuple(int(i[0]) for i in np.nonzero(~ok))
    return LawResult(name, False, int(ok.size), tuple(dom[i] for dom, i in zip(witnesses, first)))


def verify_lattice(B: FiniteBooleanAlgebra, meet=None, join=None) -> LatticeReport:
    """Exhaustively check the bounded-lattice laws for the twist ``∧``/``∨``.

    ``meet``/``join`` override the computed tables (used to self-test the harness).
    Failures are reported, never raised.
    """
    alg = get_twist(B)
    d = alg.size
    M = alg.binary[0] if meet is None else np.asarray(meet)
    J = alg.binary[1] if join is None else np.asarray(join)
    x = np.arange(d)
    X, Y = x[:, None], x[None, :]
    X3, Y3, Z3 = x[:, None, None], x[None, :, None], x[None, None, :]
    dom = alg.domain
    laws = [
        _law("meet idempotence", M[x, x] == x, [dom]),
        _law("join idempotence", J[x, x] == x, [dom]),
        _law("meet commutativity", M[X, Y] == M[Y, X], [dom, dom]),
        _law("join commutativity", J[X, Y] == J[Y, X], [dom, dom]),
        _law("meet associativity", M[M[X3, Y3], Z3] == M[X3, M[Y3, Z3]], [dom, dom, dom]),
        _law("join associativity", J[J[X3, Y3], Z3] == J[X3, J[Y3, Z3]], [dom, dom, dom]),
        _law("absorption z ∧ (z ∨ w) = z", M[X, J[X, Y]] == X, [dom, dom]),
        _law("absorption z ∨ (z ∧ w) = z", J[X, M[X, Y]] == X, [dom, dom]),
        _law("z ∧ T = z", M[x, alg.top_index] == x, [dom]),
        _law("z ∨ F = z", J[x, alg.bot_index] == x, [dom]),
    ]
    order = np.array([[order_leq(z, w) for w in dom] for z in dom])
    laws.append(_law("z ≤ w iff z ∧ w = z", order == (M[X, Y] == X), [dom, dom]))
    return LatticeReport(B.atom_count, d, laws)


# --- orders -------------------------------------------------------------------

def order_leq(z: Snapshot, w: Snapshot) -> bool:
    """The lattice order on snapshots, tested coordinatewise."""
    if z.algebra != w.algebra:
        raise ValueError("snapshots over different Boolean algebras are not comparable")
    B = z.algebra
    return (
        B.leq(z.z1, w.z1)
        and B.leq(w.z2, z.z2)
        and B.leq(B.meet(w.z2, w.z3), B.meet(z.z2, z.z3))
        and B.leq(z.z3, B.join(B.meet(z.z1, w.z3), z.z2))
    )


def l6_leq(z: Value6, w: Value6) -> bool:
    return order_leq(Snapshot.of(Value6(z)), Snapshot.of(Value6(w)))


# L6 order and meet over Value6 indices
L6_LEQ = np.array([[l6_leq(z, w) for w in Value6] for z in Value6])


# --- A6: the informational semilattice ----------------------------------------

A6_ENCODING = {
    Value6.n: frozenset(),
    Value6.T0: frozenset({"1"}),
    Value6.F0: frozenset({"0"}),
    Value6.T: frozenset({"1", "c"}),
    Value6.F: frozenset({"0", "c"}),
    Value6.b: frozenset({"1", "0"}),
}
_A6_DECODE = {s: v for v, s in A6_ENCODING.items()}


def a6_order(z: Value6, w: Value6) -> bool:
    return A6_ENCODING[Value6(z)] <= A6_ENCODING[Value6(w)]


def a6_meet(z: Value6, w: Value6) -> Value6:
    """Greatest encoded subset of the intersection; ``{c}`` is not a value, so T meet F is n."""
    common = A6_ENCODING[Value6(z)] & A6_ENCODING[Value6(w)]
    below = [s for s in _A6_DECODE if s <= common]
    return _A6_DECODE[max(below, key=len)]


def a6_join(z: Value6, w: Value6):
    """Least upper bound in A6, or ``None`` when the union is not an encoded value."""
    return _A6_DECODE.get(A6_ENCODING[Value6(z)] | A6_ENCODING[Value6(w)])
