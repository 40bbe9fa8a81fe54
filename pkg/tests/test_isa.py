import itertools

import pytest

from letlab import formula as fm
from letlab.isa import LEQ, circ_via_nabla, degree_entails, leq, meet, nabla, nabla_via_circ
from letlab.matrix6 import entails6, eval6, op
from letlab.randgen import random_sequents
from letlab.snapshots import VALUES, Value6

T, T0, b, n, F0, F = Value6
P = fm.parse
FREE = fm.Fragment.IMPLICATION_FREE


def test_nabla():
    assert [nabla(z) for z in VALUES] == [T, T, T, T, T, F]


def test_interdefinability():
    for z in VALUES:
        assert nabla_via_circ(z) is nabla(z)
        assert circ_via_nabla(z) is op("circ", z)


def test_lattice_helpers():
    assert meet() is T and meet(b, n) is F0
    assert leq(F, b) and not leq(b, n)
    for z, w in itertools.product(VALUES, repeat=2):
        assert leq(meet(z, w), z) and leq(meet(z, w), w)
        assert bool(LEQ[z, w]) == (meet(z, w) is z)


def test_examples():
    assert degree_entails(fm.parse_sequent("p & q |- p")).valid
    v = degree_entails(fm.parse_sequent("|- o o p"))
    assert v.valid and v.stats["reason"] == "top-valued conclusion"
    assert not degree_entails(fm.parse_sequent("|- p | ~p")).valid


def test_implication_breaks_correspondence():
    s = fm.parse_sequent("~(p -> q) |- p")
    assert entails6(s).valid
    v = degree_entails(s)
    assert not v.valid
    # the reported witness and the b, n assignment both violate the order condition
    for a in (v.countermodel, {"p": b, "q": n}):
        assert not leq(eval6(s.premises[0], a), eval6(s.conclusion, a))
    assert eval6(P("~(p -> q)"), {"p": b, "q": n}) is n


def test_not_selfextensional():
    a, c = P("~~(p -> q)"), P("~(p & ~q)")
    differs = any(
        eval6(a, {"p": x, "q": y}) != eval6(c, {"p": x, "q": y}) for x, y in itertools.product(VALUES, repeat=2))
    assert differs
    d, e = P("~(p -> q)"), P("p & ~q")
    for x, y in itertools.product(VALUES, repeat=2):
        asg = {"p": x, "q": y}
        assert eval6(d, asg).designated == eval6(e, asg).designated
    assert entails6(fm.Sequent([d], e)).valid and entails6(fm.Sequent([e], d)).valid


def test_agreement_on_implication_free_fragment():
    for s in random_sequents(31, 500, max_vars=3, max_depth=4, fragment=FREE, constants=True):
        assert degree_entails(s, FREE).valid == entails6(s, FREE).valid, str(s)


def test_witness_is_first_in_order():
    s = fm.parse_sequent("p, q |- p & o q")
    v = degree_entails(s)
    for x, y in itertools.product(VALUES, repeat=2):
        a = {"p": x, "q": y}
        if not leq(meet(eval6(P("p"), a), eval6(P("q"), a)), eval6(s.conclusion, a)):
            assert v.countermodel == a
            break


def test_fragment():
    from letlab.errors import FragmentError

    with pytest.raises(FragmentError):
        degree_entails(fm.parse_sequent("|- p -> p"), FREE)
