import itertools

import pytest

from letlab import formula as fm
from letlab.errors import FragmentError
from letlab.logics import Logic
from letlab.matrix6 import TABLES
from letlab.nmatrix import (
    GENERATED,
    TRANSCRIBED,
    count_legal_valuations,
    legal_valuations,
    nmatrix_entails,
    nmatrix_table,
    options,
)
from letlab.snapshots import DESIGNATED, NON_DESIGNATED, VALUES, Value6

T, T0, b, n, F0, F = Value6


def coordinate_oracle():
    """Output sets from the first two coordinates; the third is unconstrained."""
    def members(u1, u2):
        return {v for v in VALUES if v.triple[0] == u1 and (u2 is None or v.triple[1] == u2)}

    ops = {
        "and": lambda z, w: members(z[0] & w[0], z[1] | w[1]),
        "or": lambda z, w: members(z[0] | w[0], z[1] & w[1]),
        "imp": lambda z, w: members((1 - z[0]) | w[0], z[0] & w[1]),
        "not": lambda z: members(z[1], z[0]),
        "circ": lambda z: members(z[2], None),
    }
    return ops


def test_tables_match_coordinate_oracle():
    ops = coordinate_oracle()
    for name in ("and", "or", "imp"):
        for z, w in itertools.product(VALUES, repeat=2):
            assert set(GENERATED[name][z][w]) == ops[name](z.triple, w.triple)
    for name in ("not", "circ"):
        for z in VALUES:
            assert set(GENERATED[name][z]) == ops[name](z.triple)
    assert GENERATED == TRANSCRIBED


def test_outputs_nonempty():
    for name, rows in GENERATED.items():
        cells = rows if name in ("not", "circ") else [c for row in rows for c in row]
        assert all(cells)


def test_quoted_entries():
    assert options("and", T, T0) == {T, T0}
    assert options("not", b) == {b}
    assert options("circ", T0) == NON_DESIGNATED == {F, F0, n}
    assert options("circ", T) == DESIGNATED


def test_matrix_is_a_selection():
    for name in ("and", "or", "imp"):
        for z, w in itertools.product(VALUES, repeat=2):
            assert Value6(int(TABLES[name][z, w])) in options(name, z, w)
    for name in ("not", "circ"):
        for z in VALUES:
            assert Value6(int(TABLES[name][z])) in options(name, z)


def test_implication_free_table_omits_imp():
    assert "imp" not in nmatrix_table(Logic.LETFM)
    assert "imp" in nmatrix_table(Logic.LETK)


def product_count(s):
    """Direct product of choice-set sizes, summed over variable assignments."""
    closure = fm.subformula_closure(s)
    names = list(fm.sequent_variables(s))
    total = 0
    for combo in itertools.product(VALUES, repeat=len(names)):
        def count(i, val):
            if i == len(closure):
                return 1
            g = closure[i]
            if isinstance(g, fm.Var):
                return count(i + 1, {**val, g: dict(zip(names, combo))[g.name]})
            kids = [val[c] for c in fm.children(g)]
            name = {fm.Not: "not", fm.Circ: "circ", fm.And: "and", fm.Or: "or", fm.Imp: "imp"}[type(g)]
            return sum(count(i + 1, {**val, g: u}) for u in options(name, *kids))
        total += count(0, {})
    return total


# negation fixes two coordinates only: T and F0-like inputs leave the third free
@pytest.mark.parametrize("text, expected", [("p", 6), ("~p", 10), ("o p", 18)])
def test_valuation_counts(text, expected):
    s = fm.Sequent([], fm.parse(text))
    assert count_legal_valuations(s) == expected == product_count(s)


@pytest.mark.parametrize("text", ["p & q", "o p | ~q", "~(p -> o p)", "o(p & ~p)"])
def test_valuation_counts_match_product(text):
    s = fm.Sequent([], fm.parse(text))
    vals = list(legal_valuations(s))
    assert len(vals) == product_count(s)
    assert len({tuple(v.items()) for v in vals}) == len(vals)


def test_valuations_are_legal():
    s = fm.parse_sequent("o p, p & ~q |- o(p | q)")
    for v in legal_valuations(s):
        for g, u in v.items():
            if isinstance(g, fm.Var):
                continue
            name = {fm.Not: "not", fm.Circ: "circ", fm.And: "and", fm.Or: "or", fm.Imp: "imp"}[type(g)]
            assert u in options(name, *[v[c] for c in fm.children(g)])


def test_entailment_examples():
    assert nmatrix_entails(fm.parse_sequent("o p, p, ~p |- q")).valid
    assert nmatrix_entails(fm.parse_sequent("|- p | (p -> q)")).valid
    v = nmatrix_entails(fm.parse_sequent("o p |- o ~p"))
    assert not v.valid
    cm = v.countermodel
    P = fm.parse
    assert cm[P("o p")].designated and not cm[P("o ~p")].designated
    assert cm[P("p")] is T and cm[P("~p")] is F0


def test_no_propagation_without_determinism():
    assert not nmatrix_entails(fm.parse_sequent("o p, o q |- o(p & q)")).valid
    assert not nmatrix_entails(fm.parse_sequent("|- o o p")).valid


def test_constants_are_fixed():
    assert count_legal_valuations(fm.Sequent([], fm.parse("T & p"))) == 10  # T & b and T & n are singletons


def test_fragment_enforced():
    with pytest.raises(FragmentError):
        nmatrix_entails(fm.parse_sequent("p |- p -> p"), Logic.LETFM)
