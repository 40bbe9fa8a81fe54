import itertools
import random

import pytest

from letlab import formula as fm
from letlab.cpl_reduction import (
    BImp,
    BJoin,
    BMeet,
    BNot,
    BTop,
    BVar,
    constraint_term,
    coord_terms,
    cpl_entails,
    cpl_taut,
    reduce_sequent,
    term_to_text,
    term_variables,
)
from letlab.matrix6 import entails6, eval6
from letlab.randgen import random_formula, random_sequents
from letlab.snapshots import VALUES, Value6

P = fm.parse


def ev(t, row):
    """Plain recursive two-valued evaluation."""
    if isinstance(t, BVar):
        return row[(t.i, t.j)]
    if isinstance(t, BTop):
        return 1
    if isinstance(t, BNot):
        return 1 - ev(t.child, row)
    if isinstance(t, BMeet):
        return ev(t.left, row) & ev(t.right, row)
    if isinstance(t, BJoin):
        return ev(t.left, row) | ev(t.right, row)
    if isinstance(t, BImp):
        return (1 - ev(t.left, row)) | ev(t.right, row)
    return 0


def oracle_taut(t):
    keys = [(v.i, v.j) for v in term_variables(t)]
    for bits in itertools.product((0, 1), repeat=len(keys)):
        if not ev(t, dict(zip(keys, bits))):
            return False, dict(zip(keys, bits))
    return True, None


def test_quoted_terms():
    idx = {"p1": 1, "p2": 2}
    a = P("(p1 & ~p2) | o p1")
    assert term_to_text(coord_terms(a, idx)[0], unicode=True) == "(p1¹ ⊓ p2²) ⊔ p1³"
    assert term_to_text(coord_terms(fm.Not(a), idx)[0], unicode=True) == "(p1² ⊔ p2¹) ⊓ ∼p1³"


def test_base_and_constant_terms():
    assert coord_terms(P("p")) == (BVar(1, 1), BVar(1, 2), BVar(1, 3))
    top = coord_terms(P("T"))
    assert [type(t).__name__ for t in top] == ["BTop", "BBot", "BTop"]
    bot = coord_terms(P("F"))
    assert [type(t).__name__ for t in bot] == ["BBot", "BTop", "BTop"]


def test_constraint_terms():
    assert constraint_term(0) == BTop()
    assert term_to_text(constraint_term(1)) == "(p1^3 => (p1^1 + p1^2)) * -((p1^1 * p1^2) * p1^3)"
    assert constraint_term(2) == BMeet(constraint_term(1), constraint_term(2).right)
    # the constraint admits exactly the six snapshot triples
    ok = [bits for bits in itertools.product((0, 1), repeat=3)
          if ev(constraint_term(1), {(1, 1): bits[0], (1, 2): bits[1], (1, 3): bits[2]})]
    assert set(ok) == {v.triple for v in VALUES}


def test_reduce_examples():
    t = reduce_sequent(fm.parse_sequent("p |- p"))
    assert term_to_text(t).endswith("=> (p1^1 => p1^1)")
    assert cpl_taut(t).valid
    t = reduce_sequent(fm.parse_sequent("p |- o p"))
    ok, row = oracle_taut(t)
    assert not ok and not cpl_taut(t).valid
    # b = (1,1,0) falsifies it too
    assert not ev(t, {(1, 1): 1, (1, 2): 1, (1, 3): 0})
    assert cpl_taut(reduce_sequent(fm.parse_sequent("o p, p, ~p |- q"))).valid
    assert term_to_text(reduce_sequent(fm.parse_sequent("|- p"))) == (
        "((p1^3 => (p1^1 + p1^2)) * -((p1^1 * p1^2) * p1^3)) => p1^1")


def test_cpl_taut_basics():
    assert cpl_taut(BTop()).valid
    assert cpl_taut(BImp(BVar(1, 1), BVar(1, 1))).valid
    v = cpl_taut(BJoin(BVar(1, 1), BVar(1, 2)))
    assert not v.valid and v.countermodel == {"p1^1": 0, "p1^2": 0}


def test_countermodel_translation():
    v = cpl_entails(fm.parse_sequent("p |- o p"))
    assert not v.valid and v.countermodel["p"] in (Value6.T0, Value6.b)
    v = cpl_entails(fm.parse_sequent("|- p | ~p"))
    assert v.countermodel == {"p": Value6.n}


def test_coordinate_terms_track_evaluation():
    rng = random.Random(5)
    names = ["p1", "p2"]
    idx = {"p1": 1, "p2": 2}
    for _ in range(60):
        f = random_formula(rng, names, 4, constants=True)
        terms = coord_terms(f, idx)
        for z, w in itertools.product(VALUES, repeat=2):
            row = {(1, j + 1): z.triple[j] for j in range(3)} | {(2, j + 1): w.triple[j] for j in range(3)}
            assert tuple(ev(t, row) for t in terms) == eval6(f, {"p1": z, "p2": w}).triple


@pytest.mark.parametrize("fragment", list(fm.Fragment))
def test_agreement_with_matrix(fragment):
    for s in random_sequents(21, 300, max_vars=3, max_depth=4, fragment=fragment):
        verdict = cpl_entails(s, fragment)
        assert verdict.valid == entails6(s, fragment).valid
        if not verdict.valid:
            a = verdict.countermodel
            assert all(eval6(p, a).designated for p in s.premises)
            assert not eval6(s.conclusion, a).designated


def test_oracle_agrees_with_engine():
    for s in random_sequents(8, 100, max_vars=2, max_depth=3):
        t = reduce_sequent(s)
        assert oracle_taut(t)[0] == cpl_taut(t).valid


def _identity_term(lhs, rhs, k):
    """constraint => (t_j(lhs) <=> t_j(rhs)) for each coordinate j."""
    idx = {f"p{i}": i for i in range(1, k + 1)}
    out = []
    for a, b in zip(coord_terms(P(lhs), idx), coord_terms(P(rhs), idx)):
        out.append(BImp(constraint_term(k), BMeet(BImp(a, b), BImp(b, a))))
    return out


@pytest.mark.parametrize("lhs, rhs, k", [
    ("p1 & (p1 | p2)", "p1", 2),
    ("p1 | (p1 & p2)", "p1", 2),
    ("(p1 & p2) & p3", "p1 & (p2 & p3)", 3),
    ("(p1 | p2) | p3", "p1 | (p2 | p3)", 3),
])
def test_lattice_identities_as_tautologies(lhs, rhs, k):
    for t in _identity_term(lhs, rhs, k):
        assert cpl_taut(t).valid
