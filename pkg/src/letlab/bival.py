"""Bivaluations: two-valued, non-truth-functional semantics by closure clauses.

A bivaluation here is a finite map from formulas to ``0``/``1``.  Each clause
instance is anchored at one formula (``A & B`` for the conjunction clause,
``o(A & B)`` for the classicality-propagation clauses, ``oA`` for the
explosion/excluded-middle clause, and so on).  An instance is checked when
its anchor is in the domain; if another formula it mentions is missing the
instance is reported as not applicable.

The triple closure adds ``~A`` and ``oA`` for every member of a subformula
closure, which makes every anchored instance applicable.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import formula as fm
from .errors import ClauseViolation, LetlabError
from .snapshots import VALUES, Value6


class ClauseSet(enum.Enum):
    LETK = "letk"            # v1-v8
    LETKP = "letk+"          # v1-v8 with vp1-vp17
    LETKP_COMPACT = "compact"  # v1-v8 with vp1, vp2 and v9-v11

    @classmethod
    def parse(cls, name) -> "ClauseSet":
        if isinstance(name, ClauseSet):
            return name
        aliases = {
            "letk": cls.LETK, "letk_v1_v8": cls.LETK,
            "letk+": cls.LETKP, "letkp": cls.LETKP, "letkp_vp1_vp17": cls.LETKP,
            "compact": cls.LETKP_COMPACT, "letkp_compact_v9_v11": cls.LETKP_COMPACT,
        }
        try:
            return aliases[str(name).strip().lower()]
        except KeyError:
            raise ValueError(f"unknown clause set {name!r}; expected letk, letk+ or compact") from None


# --- roles --------------------------------------------------------------------
#
# A profile maps role names to bits.  For a binary instance C = A # B the roles
# are A, nA, oA, B, nB, oB, C, nC, oC (n = negation, o = circle).  Unary
# instances use A, nA, oA, nnA, ooA, onA.

_BIN = {"and": fm.And, "or": fm.Or, "imp": fm.Imp}


def _role_formula(role, a, b=None, conn=None):
    if role.endswith("C"):
        base = _BIN[conn](a, b)
        prefix = role[:-1]
    elif role.endswith("B"):
        base, prefix = b, role[:-1]
    else:
        base, prefix = a, role[:-1]
    for ch in reversed(prefix):
        base = fm.Not(base) if ch == "n" else fm.Circ(base)
    return base


@dataclass(frozen=True)
class Clause:
    name: str
    connective: str | None  # None for unary clauses
    anchor: str             # role whose formula anchors the instance
    needs: tuple
    holds: Callable[[dict], bool] = field(compare=False)


def _c(name, connective, anchor, needs, holds):
    return Clause(name, connective, anchor, tuple(needs.split()), holds)


_P = "A nA oA B nB oB oC"

V_CLAUSES = (
    _c("v1", "and", "C", "A B C", lambda r: r["C"] == (r["A"] & r["B"])),
    _c("v2", "or", "C", "A B C", lambda r: r["C"] == (r["A"] | r["B"])),
    _c("v3", "imp", "C", "A B C", lambda r: r["C"] == ((1 - r["A"]) | r["B"])),
    _c("v4", None, "nnA", "A nnA", lambda r: r["nnA"] == r["A"]),
    _c("v5", "and", "nC", "nA nB nC", lambda r: r["nC"] == (r["nA"] | r["nB"])),
    _c("v6", "or", "nC", "nA nB nC", lambda r: r["nC"] == (r["nA"] & r["nB"])),
    _c("v7", "imp", "nC", "A nB nC", lambda r: r["nC"] == (r["A"] & r["nB"])),
    _c("v8", None, "oA", "A nA oA", lambda r: not r["oA"] or r["nA"] == 1 - r["A"]),
)

VP_UNARY = (
    _c("vp1", None, "ooA", "ooA", lambda r: r["ooA"] == 1),
    _c("vp2", None, "onA", "oA onA", lambda r: r["onA"] == r["oA"]),
)


def _imp(p, q):
    return (not p) or bool(q)


VP_BINARY = (
    _c("vp3", "and", "oC", _P, lambda r: _imp(r["oA"] & r["A"] & r["oB"] & r["B"], r["oC"])),
    _c("vp4", "and", "oC", _P, lambda r: _imp(r["oA"] & r["nA"], r["oC"])),
    _c("vp5", "and", "oC", _P, lambda r: _imp(r["oB"] & r["nB"], r["oC"])),
    _c("vp6", "and", "oC", _P, lambda r: _imp(r["oC"] & r["A"] & r["B"], r["oA"] & r["oB"])),
    _c("vp7", "and", "oC", _P,
       lambda r: _imp(r["oC"] & (r["nA"] | r["nB"]), (r["oA"] & r["nA"]) | (r["oB"] & r["nB"]))),
    _c("vp8", "or", "oC", _P, lambda r: _imp(r["oA"] & r["A"], r["oC"])),
    _c("vp9", "or", "oC", _P, lambda r: _imp(r["oB"] & r["B"], r["oC"])),
    _c("vp10", "or", "oC", _P, lambda r: _imp(r["oA"] & r["nA"] & r["oB"] & r["nB"], r["oC"])),
    _c("vp11", "or", "oC", _P,
       lambda r: _imp(r["oC"] & (r["A"] | r["B"]), (r["oA"] & r["A"]) | (r["oB"] & r["B"]))),
    _c("vp12", "or", "oC", _P, lambda r: _imp(r["oC"] & (1 - r["A"]) & (1 - r["B"]), r["oA"] & r["oB"])),
    _c("vp13", "imp", "oC", _P, lambda r: _imp(r["oA"] & r["nA"], r["oC"])),
    _c("vp14", "imp", "oC", _P, lambda r: _imp(r["oB"] & r["B"], r["oC"])),
    _c("vp15", "imp", "oC", _P, lambda r: _imp(r["A"] & r["oB"] & r["nB"], r["oC"])),
    _c("vp16", "imp", "oC", _P,
       lambda r: _imp(r["oC"] & ((1 - r["A"]) | r["B"]), (r["oA"] & r["nA"]) | (r["oB"] & r["B"]))),
    _c("vp17", "imp", "oC", _P, lambda r: _imp(r["oC"] & r["A"] & r["nB"], r["oB"])),
)


def _no(x):
    return 1 - x


PRIMED = (
    _c("vp6'", "and", "oC", _P,
       lambda r: _imp(r["A"] & r["B"] & (_no(r["oA"]) | _no(r["oB"])), not r["oC"])),
    _c("vp7'", "and", "oC", _P,
       lambda r: _imp((r["nA"] | r["nB"]) & (_no(r["oA"]) | _no(r["nA"])) & (_no(r["oB"]) | _no(r["nB"])),
                      not r["oC"])),
    _c("vp11'", "or", "oC", _P,
       lambda r: _imp((r["A"] | r["B"]) & (_no(r["oA"]) | _no(r["A"])) & (_no(r["oB"]) | _no(r["B"])),
                      not r["oC"])),
    _c("vp12'", "or", "oC", _P,
       lambda r: _imp(_no(r["A"]) & _no(r["B"]) & (_no(r["oA"]) | _no(r["oB"])), not r["oC"])),
    _c("vp16'", "imp", "oC", _P,
       lambda r: _imp((_no(r["A"]) | r["B"]) & (_no(r["oA"]) | _no(r["nA"])) & (_no(r["oB"]) | _no(r["B"])),
                      not r["oC"])),
    _c("vp17'", "imp", "oC", _P, lambda r: _imp(r["A"] & r["nB"] & _no(r["oB"]), not r["oC"])),
)

COMPACT = (
    _c("v9", "and", "oC", _P,
       lambda r: r["oC"] == ((r["A"] & r["oA"] & r["B"] & r["oB"]) | (r["nA"] & r["oA"]) | (r["nB"] & r["oB"]))),
    _c("v10", "or", "oC", _P,
       lambda r: r["oC"] == ((r["nA"] & r["oA"] & r["nB"] & r["oB"]) | (r["A"] & r["oA"]) | (r["B"] & r["oB"]))),
    _c("v11", "imp", "oC", _P,
       lambda r: r["oC"] == ((r["A"] & r["nB"] & r["oB"]) | (r["nA"] & r["oA"]) | (r["B"] & r["oB"]))),
)

CLAUSES = {
    ClauseSet.LETK: V_CLAUSES,
    ClauseSet.LETKP: V_CLAUSES + VP_UNARY + VP_BINARY,
    ClauseSet.LETKP_COMPACT: V_CLAUSES + VP_UNARY + COMPACT,
}
ALL_CLAUSES = {c.name: c for c in V_CLAUSES + VP_UNARY + VP_BINARY + PRIMED + COMPACT}


def _match_anchor(clause: Clause, f):
    """Return ``(A, B)`` if ``f`` has the shape of the clause's anchor, else None."""
    conn = _BIN.get(clause.connective)
    prefix = clause.anchor[:-1]
    g = f
    for ch in prefix:
        want = fm.Not if ch == "n" else fm.Circ
        if not isinstance(g, want):
            return None
        g = g.child
    if clause.anchor.endswith("C"):
        return (g.left, g.right) if conn is not None and isinstance(g, conn) else None
    return (g, None)


# --- reports ------------------------------------------------------------------

@dataclass
class ClauseFailure:
    clause: str
    anchor: fm.Formula
    witness: dict  # formula -> bit, or formula -> None when missing

    def describe(self) -> str:
        parts = ", ".join(
            f"{fm.to_text(g)}={'?' if v is None else v}" for g, v in self.witness.items()
        )
        return f"{self.clause} at {fm.to_text(self.anchor)}: {parts}"


@dataclass
class ClauseReport:
    clause_set: ClauseSet
    checked: int = 0
    violations: list = field(default_factory=list)
    not_applicable: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def is_closed(domain) -> bool:
    return all(c in domain for f in domain for c in fm.children(f))


def check_clauses(rho: dict, clause_set=ClauseSet.LETK, clauses=None) -> ClauseReport:
    """Check every clause instance anchored in ``rho``'s domain.

    Raises :class:`LetlabError` if the domain is not closed under subformulas.
    """
    clause_set = ClauseSet.parse(clause_set)
    if not is_closed(rho):
        raise LetlabError("bivaluation domain is not closed under subformulas")
    report = ClauseReport(clause_set)
    for clause in clauses if clauses is not None else CLAUSES[clause_set]:
        for f in rho:
            match = _match_anchor(clause, f)
            if match is None:
                continue
            a, b = match
            roles = {r: _role_formula(r, a, b, clause.connective) for r in clause.needs}
            missing = [g for g in roles.values() if g not in rho]
            witness = {g: rho.get(g) for g in roles.values()}
            if missing:
                report.not_applicable.append(ClauseFailure(clause.name, f, witness))
                continue
            report.checked += 1
            if not clause.holds({r: int(rho[g]) for r, g in roles.items()}):
                report.violations.append(ClauseFailure(clause.name, f, witness))
    return report


# --- closures and translations ------------------------------------------------

def triple_closure(formulas) -> list:
    """Subformula closure extended by ``~A`` and ``oA`` for each member."""
    base = fm.subformula_closure(formulas)
    seen = dict.fromkeys(base)
    for f in base:
        seen.setdefault(fm.Not(f), None)
        seen.setdefault(fm.Circ(f), None)
    return list(seen)


def from_valuation(v: dict) -> dict:
    """``rho(A)`` is the first coordinate of ``v(A)``."""
    return {f: Value6(z).triple[0] for f, z in v.items()}


def to_valuation(rho: dict, target: str = "matrix", check: bool = True) -> dict:
    """``v(A) = (rho(A), rho(~A), rho(oA))`` on every A whose ``~A`` and ``oA`` are present.

    ``target`` is ``"nmatrix"`` (checked against v1-v8) or ``"matrix"``
    (checked against v1-v8 and vp1-vp17); violations raise
    :class:`ClauseViolation`.
    """
    if target not in ("matrix", "nmatrix"):
        raise ValueError("target must be 'matrix' or 'nmatrix'")
    if check:
        report = check_clauses(rho, ClauseSet.LETKP if target == "matrix" else ClauseSet.LETK)
        if not report.ok:
            names = ", ".join(sorted({v.clause for v in report.violations}))
            raise ClauseViolation(f"bivaluation violates {names}", report.violations)
    out = {}
    for f in rho:
        neg, circ = fm.Not(f), fm.Circ(f)
        if neg in rho and circ in rho:
            out[f] = Value6.from_triple((int(rho[f]), int(rho[neg]), int(rho[circ])))
    return out


# --- .rho files ---------------------------------------------------------------

def parse_rho(text: str) -> dict:
    """Read ``formula = 0|1`` lines; ``#`` starts a comment line."""
    rho = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lhs, sep, rhs = stripped.rpartition("=")
        if not sep or rhs.strip() not in ("0", "1"):
            raise LetlabError(f"line {lineno}: expected 'formula = 0' or 'formula = 1'")
        try:
            f = fm.parse(lhs)
        except LetlabError as e:
            raise LetlabError(f"line {lineno}: {e}") from None
        if f in rho and rho[f] != int(rhs):
            raise LetlabError(f"line {lineno}: conflicting value for {fm.to_text(f)}")
        rho[f] = int(rhs)
    return rho


# --- local profile equivalences -------------------------------------------------

ROLES = ("A", "nA", "oA", "B", "nB", "oB", "C", "nC", "oC")


def local_profiles(connective: str, letk_only: bool = True) -> list:
    """Constrained profiles for one connective instance.

    Each of the three triples must be a snapshot; with ``letk_only`` the
    profile must also satisfy the base clauses for the connective.
    """
    base = [c for c in V_CLAUSES if c.connective == connective]
    out = []
    for za, zb, zc in itertools.product(VALUES, repeat=3):
        r = dict(zip(ROLES, za.triple + zb.triple + zc.triple))
        if letk_only and not all(c.holds(r) for c in base):
            continue
        out.append(r)
    return out


@dataclass
class EquivalenceResult:
    left: tuple
    right: tuple
    profiles: int
    discrepancies: list

    @property
    def ok(self) -> bool:
        return not self.discrepancies


def compare_clause_groups(left, right, connective: str, letk_only: bool = True) -> EquivalenceResult:
    """Profiles satisfying every clause of ``left`` versus those satisfying every clause of ``right``."""
    lc = [ALL_CLAUSES[n] for n in left]
    rc = [ALL_CLAUSES[n] for n in right]
    profiles = local_profiles(connective, letk_only)
    bad = []
    for r in profiles:
        if all(c.holds(r) for c in lc) != all(c.holds(r) for c in rc):
            bad.append(r)
    return EquivalenceResult(tuple(left), tuple(right), len(profiles), bad)


COMPACT_GROUPS = (
    ("and", ("vp3", "vp4", "vp5", "vp6", "vp7"), ("v9",)),
    ("or", ("vp8", "vp9", "vp10", "vp11", "vp12"), ("v10",)),
    ("imp", ("vp13", "vp14", "vp15", "vp16", "vp17"), ("v11",)),
)
PRIMED_PAIRS = (
    ("and", "vp6", "vp6'"), ("and", "vp7", "vp7'"),
    ("or", "vp11", "vp11'"), ("or", "vp12", "vp12'"),
    ("imp", "vp16", "vp16'"), ("imp", "vp17", "vp17'"),
)


def clause_equivalence_suite(letk_only: bool = True) -> list:
    results = [compare_clause_groups(l, r, conn, letk_only) for conn, l, r in COMPACT_GROUPS]
    results += [compare_clause_groups((a,), (b,), conn, letk_only) for conn, a, b in PRIMED_PAIRS]
    return results
