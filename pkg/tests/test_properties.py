"""Property-based cross checks between the decision procedures."""

from hypothesis import given, settings, strategies as st

from letlab import formula as fm
from letlab.boolean_algebra import FiniteBooleanAlgebra
from letlab.cpl_reduction import cpl_entails
from letlab.isa import degree_entails
from letlab.logics import Logic
from letlab.matrix6 import entails6, eval6
from letlab.nmatrix import nmatrix_entails
from letlab.twist import twist_entails

B4 = FiniteBooleanAlgebra(2)
FREE = fm.Fragment.IMPLICATION_FREE


def formulas(names=("p", "q", "r"), implication=True, constants=False):
    leaves = st.sampled_from(names).map(fm.Var)
    if constants:
        leaves = st.one_of(leaves, st.just(fm.Top()), st.just(fm.Bot()))
    binaries = [fm.And, fm.Or] + ([fm.Imp] if implication else [])

    def extend(kids):
        return st.one_of(
            kids.map(fm.Not), kids.map(fm.Circ),
            *[st.tuples(kids, kids).map(lambda t, k=k: k(*t)) for k in binaries],
        )

    return st.recursive(leaves, extend, max_leaves=8)


def sequents(**kw):
    return st.builds(fm.Sequent, st.lists(formulas(**kw), max_size=3), formulas(**kw))


@settings(max_examples=200, deadline=None)
@given(sequents())
def test_matrix_equals_cpl(s):
    assert entails6(s).valid == cpl_entails(s).valid


@settings(max_examples=150, deadline=None)
@given(sequents())
def test_matrix_equals_twist(s):
    assert entails6(s).valid == twist_entails(B4, s).valid


@settings(max_examples=150, deadline=None)
@given(sequents(implication=False, constants=True))
def test_degree_equals_matrix_without_implication(s):
    assert degree_entails(s, FREE).valid == entails6(s, FREE).valid


@settings(max_examples=100, deadline=None)
@given(sequents(names=("p", "q")))
def test_nmatrix_validity_transfers_to_matrix(s):
    if nmatrix_entails(s, Logic.LETK).valid:
        assert entails6(s).valid


@settings(max_examples=200, deadline=None)
@given(sequents())
def test_countermodels_are_genuine(s):
    v = entails6(s)
    if not v.valid:
        assert all(eval6(p, v.countermodel).designated for p in s.premises)
        assert not eval6(s.conclusion, v.countermodel).designated
