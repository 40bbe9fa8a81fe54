"""Natural-deduction proof objects and their checker.

A proof is a tree of :class:`ProofNode`.  Leaves are either hypotheses
(``rule == "Hyp"``, carrying a label) or zero-premise axioms.  Every other
node names a rule; the node's conclusion and its premises' conclusions must
match one of the rule's variants under a single substitution of formulas for
the schema letters ``A``, ``B``, ``C``.

Improper rules close hypotheses: for each premise the variant may name a
schema hypothesis, and the node's ``discharges`` labels must sit on ``Hyp``
leaves inside such premises, carrying exactly the instantiated hypothesis.
A label always denotes the same formula throughout a proof.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import yaml

from . import formula as fm
from .errors import FragmentError, LetlabError, ParseError, ProofError
from .logics import Logic
from .matrix6 import entails6, eval6
from .nmatrix import legal_valuations, nmatrix_entails
from .snapshots import VALUES
from .verdict import Verdict


# --- schemas ------------------------------------------------------------------

@dataclass(frozen=True)
class Meta:
    """A schema letter standing for an arbitrary formula."""

    name: str


def _schema(text: str):
    def convert(f):
        if isinstance(f, fm.Var):
            return Meta(f.name)
        if isinstance(f, fm.UNARY):
            return type(f)(convert(f.child))
        if isinstance(f, fm.BINARY):
            return type(f)(convert(f.left), convert(f.right))
        return f

    return convert(fm.parse(text))


def _fill(template, subst):
    if isinstance(template, Meta):
        return subst[template.name]
    if isinstance(template, fm.UNARY):
        return type(template)(_fill(template.child, subst))
    if isinstance(template, fm.BINARY):
        return type(template)(_fill(template.left, subst), _fill(template.right, subst))
    return template


def match(template, f, subst: dict) -> bool:
    """Extend ``subst`` so that ``template`` instantiates to ``f``; False on clash."""
    if isinstance(template, Meta):
        bound = subst.get(template.name)
        if bound is None:
            subst[template.name] = f
            return True
        return bound == f
    if type(template) is not type(f):
        return False
    if isinstance(template, fm.UNARY):
        return match(template.child, f.child, subst)
    if isinstance(template, fm.BINARY):
        return match(template.left, f.left, subst) and match(template.right, f.right, subst)
    return template == f


@dataclass(frozen=True)
class Variant:
    premises: tuple
    conclusion: object
    discharges: tuple  # per premise: schema hypothesis closed in it, or None

    @property
    def improper(self) -> bool:
        return any(h is not None for h in self.discharges)

    def letters(self) -> list:
        seen = {}
        for t in self.premises + (self.conclusion,) + tuple(h for h in self.discharges if h is not None):
            for g in _metas(t):
                seen.setdefault(g, None)
        return list(seen)


def _metas(t):
    if isinstance(t, Meta):
        yield t.name
    elif isinstance(t, fm.UNARY):
        yield from _metas(t.child)
    elif isinstance(t, fm.BINARY):
        yield from _metas(t.left)
        yield from _metas(t.right)


def _v(premises, conclusion, discharges=None):
    prem = tuple(_schema(p) for p in premises)
    dis = tuple(None if h is None else _schema(h) for h in (discharges or [None] * len(premises)))
    return Variant(prem, _schema(conclusion), dis)


@dataclass(frozen=True)
class Rule:
    name: str
    variants: tuple
    logics: frozenset
    derived: bool = False
    origin: str = "base"  # base, propagation or derived

    @property
    def improper(self) -> bool:
        return any(v.improper for v in self.variants)


_ALL = frozenset(Logic)
_FULL = frozenset({Logic.LETK, Logic.LETKP})
_PLUS = frozenset({Logic.LETKP, Logic.LETFP})
_PLUS_FULL = frozenset({Logic.LETKP})

# A^T = oA & A and A^F = oA & ~A, spelled out
_AT, _BT = "o A & A", "o B & B"
_AF, _BF = "o A & ~A", "o B & ~B"


def _t(x):
    return f"o({x}) & ({x})"


def _f(x):
    return f"o({x}) & ~({x})"


RULES = {r.name: r for r in (
    Rule("AndI", (_v(["A", "B"], "A & B"),), _ALL),
    Rule("AndE", (_v(["A & B"], "A"), _v(["A & B"], "B")), _ALL),
    Rule("OrI", (_v(["A"], "A | B"), _v(["B"], "A | B")), _ALL),
    Rule("OrE", (_v(["A | B", "C", "C"], "C", [None, "A", "B"]),), _ALL),
    Rule("NegAndI", (_v(["~A"], "~(A & B)"), _v(["~B"], "~(A & B)")), _ALL),
    Rule("NegAndE", (_v(["~(A & B)", "C", "C"], "C", [None, "~A", "~B"]),), _ALL),
    Rule("NegOrI", (_v(["~A", "~B"], "~(A | B)"),), _ALL),
    Rule("NegOrE", (_v(["~(A | B)"], "~A"), _v(["~(A | B)"], "~B")), _ALL),
    Rule("DN", (_v(["A"], "~~A"), _v(["~~A"], "A")), _ALL),
    Rule("ImpI", (_v(["B"], "A -> B", ["A"]),), _FULL),
    Rule("ImpE", (_v(["A -> B", "A"], "B"),), _FULL),
    Rule("ToCL", (_v([], "A | (A -> B)"),), _FULL),
    Rule("NegImpI", (_v(["A", "~B"], "~(A -> B)"),), _FULL),
    Rule("NegImpE", (_v(["~(A -> B)"], "A"), _v(["~(A -> B)"], "~B")), _FULL),
    Rule("ExpCirc", (_v(["o A", "A", "~A"], "B"),), _ALL),
    Rule("PemCirc", (_v(["o A"], "A | ~A"),), _ALL),
    # classicality propagation
    Rule("ICirc", (_v([], "o o A"),), _PLUS, origin="propagation"),
    Rule("INegCirc", (_v(["o A"], "o ~A"),), _PLUS, origin="propagation"),
    Rule("ENegCirc", (_v(["o ~A"], "o A"),), _PLUS, origin="propagation"),
    Rule("IAndT", (_v([_AT, _BT], _t("A & B")),), _PLUS, origin="propagation"),
    Rule("IAndF", (_v([_AF], _f("A & B")), _v([_BF], _f("A & B"))), _PLUS, origin="propagation"),
    Rule("IOrT", (_v([_AT], _t("A | B")), _v([_BT], _t("A | B"))), _PLUS, origin="propagation"),
    Rule("IOrF", (_v([_AF, _BF], _f("A | B")),), _PLUS, origin="propagation"),
    Rule("IImpT", (_v([_AF], _t("A -> B")), _v([_BT], _t("A -> B"))), _PLUS_FULL, origin="propagation"),
    Rule("IImpF", (_v(["A", _BF], _f("A -> B")),), _PLUS_FULL, origin="propagation"),
    Rule("EAndT", (_v([_t("A & B")], _AT), _v([_t("A & B")], _BT)), _PLUS, origin="propagation"),
    Rule("EAndF", (_v([_f("A & B"), "C", "C"], "C", [None, _AF, _BF]),), _PLUS, origin="propagation"),
    Rule("EOrT", (_v([_t("A | B"), "C", "C"], "C", [None, _AT, _BT]),), _PLUS, origin="propagation"),
    Rule("EOrF", (_v([_f("A | B")], _AF), _v([_f("A | B")], _BF)), _PLUS, origin="propagation"),
    Rule("EImpT", (_v([_t("A -> B"), "C", "C"], "C", [None, _AF, _BT]),), _PLUS_FULL, origin="propagation"),
    Rule("EImpF", (_v([_f("A -> B")], "A"), _v([_f("A -> B")], _BF)), _PLUS_FULL, origin="propagation"),
    # derived
    Rule("Cons", (_v(["o A", "~o A"], "B"),), _PLUS, derived=True, origin="derived"),
    Rule("Comp", (_v(["B", "B"], "B", ["o A", "~o A"]),), _PLUS, derived=True, origin="derived"),
)}

HYP = "Hyp"


def rules_for(logic, allow_derived: bool = False) -> list:
    logic = Logic.parse(logic)
    return [r for r in RULES.values() if logic in r.logics and (allow_derived or not r.derived)]


# --- proof trees ----------------------------------------------------------------

@dataclass
class ProofNode:
    rule: str
    conclusion: fm.Formula
    premises: list = field(default_factory=list)
    discharges: list = field(default_factory=list)
    label: str | None = None


def hyp(label: str, formula) -> ProofNode:
    return ProofNode(HYP, _as_formula(formula), label=label)


def node(rule: str, formula, *premises: ProofNode, discharges=()) -> ProofNode:
    return ProofNode(rule, _as_formula(formula), list(premises), list(discharges))


def _as_formula(f):
    return fm.parse(f) if isinstance(f, str) else f


@dataclass(frozen=True)
class CheckResult:
    open_hypotheses: tuple  # formulas, first-occurrence order
    conclusion: fm.Formula
    logic: Logic
    rules_used: tuple = ()

    @property
    def sequent(self) -> fm.Sequent:
        return fm.Sequent(self.open_hypotheses, self.conclusion)


def check_proof(root: ProofNode, logic=Logic.LETKP, allow_derived: bool = False) -> CheckResult:
    """Validate every node; raises :class:`ProofError` naming the offending node's path."""
    logic = Logic.parse(logic)
    labels: dict = {}
    used: dict = {}

    def visit(n: ProofNode, path: str):
        if not isinstance(n.conclusion, (fm.Var, fm.Top, fm.Bot, fm.Not, fm.Circ, fm.And, fm.Or, fm.Imp)):
            raise ProofError("node has no formula", path)
        try:
            fm.check_fragment([n.conclusion], logic.fragment)
        except FragmentError as e:
            raise ProofError(str(e), path) from None
        if n.rule == HYP:
            if n.premises:
                raise ProofError("a hypothesis must be a leaf", path)
            if not n.label:
                raise ProofError("a hypothesis needs a label", path)
            if n.discharges:
                raise ProofError("a hypothesis cannot discharge", path)
            known = labels.setdefault(n.label, n.conclusion)
            if known != n.conclusion:
                raise ProofError(
                    f"label {n.label!r} already names {fm.to_text(known)}, not {fm.to_text(n.conclusion)}", path
                )
            return [(n.label, n.conclusion)]
        if n.label is not None:
            raise ProofError("only hypotheses carry labels", path)
        rule = RULES.get(n.rule)
        if rule is None:
            raise ProofError(f"unknown rule {n.rule!r}", path)
        if rule.derived and not allow_derived:
            raise ProofError(f"derived rule {n.rule} needs --allow-derived", path)
        if logic not in rule.logics:
            raise ProofError(f"rule {n.rule} is not available in {logic.value}", path)
        child_open = [visit(p, f"{path}.premises[{i}]") for i, p in enumerate(n.premises)]
        variant, subst, error = _select_variant(rule, n, child_open)
        if variant is None:
            raise ProofError(error, path)
        used[n.rule] = None
        opened = []
        for i, hyps in enumerate(child_open):
            closing = variant.discharges[i]
            for label, f in hyps:
                if closing is not None and label in n.discharges:
                    continue
                opened.append((label, f))
        return opened

    open_pairs = visit(root, "root")
    seen = {}
    for _, f in open_pairs:
        seen.setdefault(f, None)
    return CheckResult(tuple(seen), root.conclusion, logic, tuple(used))


def _select_variant(rule: Rule, n: ProofNode, child_open):
    """Find a variant matching the node; return ``(variant, subst, None)`` or ``(None, None, reason)``."""
    reasons = []
    for variant in rule.variants:
        if len(variant.premises) != len(n.premises):
            reasons.append(f"{rule.name} expects {len(variant.premises)} premise(s), got {len(n.premises)}")
            continue
        subst: dict = {}
        if not match(variant.conclusion, n.conclusion, subst):
            reasons.append(f"conclusion {fm.to_text(n.conclusion)} does not fit {rule.name}")
            continue
        ok = True
        for i, (t, p) in enumerate(zip(variant.premises, n.premises)):
            if not match(t, p.conclusion, subst):
                reasons.append(f"premise {i} ({fm.to_text(p.conclusion)}) does not fit {rule.name}")
                ok = False
                break
        if not ok:
            continue
        reason = _check_discharges(rule, variant, n, child_open, subst)
        if reason:
            reasons.append(reason)
            continue
        return variant, subst, None
    return None, None, "; ".join(dict.fromkeys(reasons))


def _check_discharges(rule, variant, n, child_open, subst):
    if n.discharges and not variant.improper:
        return f"{rule.name} does not discharge hypotheses"
    for label in n.discharges:
        found = False
        for i, hyps in enumerate(child_open):
            closing = variant.discharges[i]
            for lab, f in hyps:
                if lab != label:
                    continue
                if closing is None:
                    continue
                if not match(closing, f, subst):
                    return f"hypothesis [{label}] {fm.to_text(f)} is not the discharged formula of premise {i}"
                found = True
        if not found:
            return f"label {label!r} is not an open hypothesis of a dischargeable premise"
    return None


# --- semantics ----------------------------------------------------------------

def soundness_harness(root: ProofNode, logic=Logic.LETKP, allow_derived: bool = False) -> Verdict:
    """Decide the proved sequent semantically (matrix for the + systems, Nmatrix otherwise)."""
    logic = Logic.parse(logic)
    result = check_proof(root, logic, allow_derived)
    if logic.has_propagation:
        return entails6(result.sequent, logic.fragment)
    return nmatrix_entails(result.sequent, logic)


def instantiate(variant: Variant, names=("p", "q", "r")) -> tuple:
    """Instantiate schema letters with distinct fresh variables.

    Returns ``(premises, hypotheses, conclusion)``; ``hypotheses[i]`` is the
    formula discharged in premise ``i`` or None.
    """
    subst = {m: fm.Var(names[i]) for i, m in enumerate(sorted(variant.letters()))}
    prem = tuple(_fill(t, subst) for t in variant.premises)
    hyps = tuple(None if h is None else _fill(h, subst) for h in variant.discharges)
    return prem, hyps, _fill(variant.conclusion, subst)


def one_step_proof(rule: Rule, variant: Variant) -> ProofNode:
    """Apply the variant once to hypothesis leaves; nothing is discharged."""
    prem, _, concl = instantiate(variant)
    return ProofNode(rule.name, concl, [hyp(f"h{i}", p) for i, p in enumerate(prem)])


def local_rule_check(variant: Variant, logic) -> tuple:
    """Check one rule variant against the semantics of ``logic``.

    For every valuation, if each premise holds (a premise with a discharged
    hypothesis holds when the hypothesis being designated forces the premise
    to be designated), the conclusion must be designated.  Returns
    ``(ok, witness)``.
    """
    logic = Logic.parse(logic)
    prem, hyps, concl = instantiate(variant)
    formulas = list(prem) + [h for h in hyps if h is not None] + [concl]

    def holds(val):
        for p, h in zip(prem, hyps):
            if h is not None and val[h].designated and not val[p].designated:
                return False
            if h is None and not val[p].designated:
                return False
        return True

    if logic.has_propagation:
        names = fm.subformula_closure(formulas)
        variables = [g.name for g in names if isinstance(g, fm.Var)]
        for combo in itertools.product(VALUES, repeat=len(variables)):
            assignment = dict(zip(variables, combo))
            val = {f: eval6(f, assignment) for f in formulas}
            if holds(val) and not val[concl].designated:
                return False, assignment
        return True, None
    seq = fm.Sequent(formulas[:-1], concl)
    for val in legal_valuations(seq, logic):
        if holds(val) and not val[concl].designated:
            return False, val
    return True, None


# --- proof files ----------------------------------------------------------------

def load_proof(text: str):
    """Parse a YAML proof file.

    Returns ``(root, meta)`` where ``meta`` may hold ``logic``, ``allow_derived``
    and ``sequent`` keys from the file header.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise LetlabError(f"malformed proof file: {e}") from None
    if not isinstance(data, dict):
        raise LetlabError("proof file must be a mapping")
    body = data.get("proof", data) if "rule" not in data else data
    meta = {k: data[k] for k in ("logic", "allow_derived", "sequent", "name") if k in data and "rule" not in data}
    return _build(body, "root"), meta


def _build(data, path) -> ProofNode:
    if not isinstance(data, dict):
        raise ProofError("node must be a mapping", path)
    unknown = set(data) - {"rule", "formula", "premises", "discharge", "label"}
    if unknown:
        raise ProofError(f"unknown field(s) {', '.join(sorted(unknown))}", path)
    if "rule" not in data or "formula" not in data:
        raise ProofError("node needs 'rule' and 'formula'", path)
    try:
        conclusion = fm.parse(str(data["formula"]))
    except ParseError as e:
        raise ProofError(f"bad formula: {e}", path) from None
    discharges = data.get("discharge") or []
    if isinstance(discharges, str):
        discharges = [discharges]
    premises = data.get("premises") or []
    if not isinstance(premises, list):
        raise ProofError("'premises' must be a list", path)
    label = data.get("label")
    return ProofNode(
        str(data["rule"]),
        conclusion,
        [_build(p, f"{path}.premises[{i}]") for i, p in enumerate(premises)],
        [str(d) for d in discharges],
        None if label is None else str(label),
    )


def dump_proof(root: ProofNode) -> dict:
    """Inverse of the loader's node format."""
    out = {"rule": root.rule, "formula": fm.to_text(root.conclusion)}
    if root.label is not None:
        out["label"] = root.label
    if root.discharges:
        out["discharge"] = list(root.discharges)
    if root.premises:
        out["premises"] = [dump_proof(p) for p in root.premises]
    return out
