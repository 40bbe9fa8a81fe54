import random
import re

import pytest
from hypothesis import given, settings, strategies as st

from letlab import formula as fm
from letlab.errors import FragmentError, ParseError
from letlab.randgen import random_formula


# --- independent oracle: shunting-yard over the same token set ------------------

_TOKEN = re.compile(r"\s*(->|→|[~¬o@∘&∧|∨()⊤⊥]|[A-Za-z_][A-Za-z0-9_]*)")
_BIN = {"&": ("And", 3, "left"), "∧": ("And", 3, "left"), "|": ("Or", 2, "left"),
        "∨": ("Or", 2, "left"), "->": ("Imp", 1, "right"), "→": ("Imp", 1, "right")}
_UN = {"~": "Not", "¬": "Not", "o": "Circ", "@": "Circ", "∘": "Circ"}
_CONST = {"T": "Top", "top": "Top", "⊤": "Top", "F": "Bot", "bot": "Bot", "⊥": "Bot"}


def oracle_parse(text):
    """Returns nested tuples such as ("And", ("Var", "p"), ("Var", "q"))."""
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        assert m, f"bad token at {pos}"
        tokens.append(m.group(1))
        pos = m.end()
    out, ops = [], []

    def reduce_top():
        op = ops.pop()
        if op in _UN:
            out.append((_UN[op], out.pop()))
        else:
            r, l = out.pop(), out.pop()
            out.append((_BIN[op][0], l, r))

    for tok in tokens:
        if tok in _UN:
            ops.append(tok)
        elif tok in _CONST:
            out.append((_CONST[tok],))
        elif tok == "(":
            ops.append(tok)
        elif tok == ")":
            while ops[-1] != "(":
                reduce_top()
            ops.pop()
        elif tok in _BIN:
            _, prec, assoc = _BIN[tok]
            while ops and ops[-1] != "(":
                top = ops[-1]
                top_prec = 4 if top in _UN else _BIN[top][1]
                if top_prec > prec or (top_prec == prec and assoc == "left"):
                    reduce_top()
                else:
                    break
            ops.append(tok)
        else:
            out.append(("Var", tok))
        # prefix operators bind to the next complete operand
        while out and ops and ops[-1] in _UN and tok not in _UN and tok != "(" and tok not in _BIN:
            reduce_top()
    while ops:
        reduce_top()
    assert len(out) == 1
    return out[0]


def as_tuple(f):
    if isinstance(f, fm.Var):
        return ("Var", f.name)
    if isinstance(f, (fm.Top, fm.Bot)):
        return (type(f).__name__,)
    return (type(f).__name__,) + tuple(as_tuple(c) for c in fm.children(f))


CORPUS = [
    "p", "q1", "~p", "o p", "@p", "o o p", "~o p", "o ~p", "~~p", "p & q",
    "p | q", "p -> q", "p & q & r", "p | q | r", "p -> q -> r", "(p -> q) -> r",
    "p & q | r", "p | q & r", "p -> q | r", "p | q -> r", "~(p -> q)", "~(p & q)",
    "o(p | q)", "o p & ~p -> q", "o p & p & ~p -> q", "(p | q) & r", "p & (q | r)",
    "~p | ~q -> ~(p & q)", "o o p | ~o p", "T", "F", "top", "bot", "T -> p", "p & F",
    "~T | bot", "((p))", "((p & q))", "~(~(p))", "p -> (q -> (r -> s))",
    "((p -> q) -> r) -> s", "o(p -> q) & (p -> q)", "o(p & q) & ~(p & q)",
    "¬(p → q)", "∘p ∧ ¬p", "p ∨ q → r", "⊤ ∧ ⊥", "a_1 & b_2 | c_3",
    "~o~o p", "p & ~q | ~p & q -> o p",
]


def test_corpus_size():
    assert len(CORPUS) == 50


@pytest.mark.parametrize("text", CORPUS)
def test_parse_matches_oracle(text):
    assert as_tuple(fm.parse(text)) == oracle_parse(text)


def test_documented_parses():
    p, q = fm.Var("p"), fm.Var("q")
    assert fm.parse("p") == p
    assert fm.parse("~(p -> q)") == fm.Not(fm.Imp(p, q))
    assert fm.parse("o p & ~p -> q") == fm.Imp(fm.And(fm.Circ(p), fm.Not(p)), q)


def test_printing():
    p, q, r = fm.Var("p"), fm.Var("q"), fm.Var("r")
    assert fm.to_text(p) == "p"
    assert fm.to_text(fm.Not(fm.Imp(p, q))) == "~(p -> q)"
    assert fm.to_text(fm.And(fm.Or(p, q), r)) == "(p | q) & r"
    assert fm.to_text(fm.Imp(fm.Imp(p, q), r)) == "(p -> q) -> r"
    assert fm.to_text(fm.Imp(p, fm.Imp(q, r))) == "p -> q -> r"


@pytest.mark.parametrize("fragment", list(fm.Fragment))
def test_round_trip_seeded(fragment):
    rng = random.Random(7)
    names = ["p", "q", "r", "s"]
    for _ in range(1000):
        f = random_formula(rng, names, 6, fragment, constants=True)
        assert fm.parse(fm.to_text(f)) == f
        assert fm.parse(fm.to_text(f, unicode=True)) == f


def _asts():
    leaves = st.one_of(st.sampled_from(["p", "q", "x1", "y_2"]).map(fm.Var), st.just(fm.Top()), st.just(fm.Bot()))
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            kids.map(fm.Not), kids.map(fm.Circ),
            st.tuples(kids, kids).map(lambda t: fm.And(*t)),
            st.tuples(kids, kids).map(lambda t: fm.Or(*t)),
            st.tuples(kids, kids).map(lambda t: fm.Imp(*t)),
        ),
        max_leaves=20,
    )


@settings(max_examples=300, deadline=None)
@given(_asts())
def test_round_trip_property(f):
    assert fm.parse(fm.to_text(f)) == f
    assert oracle_parse(fm.to_text(f)) == as_tuple(f)


@pytest.mark.parametrize("text, offset", [("p &", 3), ("p & (q | ", 9), ("(p", 2), ("p q", 2), ("& p", 0), (")", 0)])
def test_parse_errors_carry_offset(text, offset):
    with pytest.raises(ParseError) as info:
        fm.parse(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_error_offset_is_in_bytes():
    with pytest.raises(ParseError) as info:
        fm.parse("¬ &")
    assert info.value.offset == len("¬ ".encode())


def test_reserved_words_are_not_variables():
    assert fm.parse("T") == fm.Top()
    with pytest.raises(ParseError):
        fm.parse("o")


def test_closure_examples():
    p, q = fm.Var("p"), fm.Var("q")
    assert fm.subformula_closure(fm.Sequent([], p)) == [p]
    assert fm.subformula_closure(fm.Sequent([], fm.parse("o p & ~p"))) == [
        p, fm.Circ(p), fm.Not(p), fm.And(fm.Circ(p), fm.Not(p))]
    assert fm.subformula_closure(fm.Sequent([fm.Or(p, q)], fm.Or(p, q))) == [p, q, fm.Or(p, q)]


def test_closure_is_closed_and_ordered():
    rng = random.Random(3)
    for _ in range(200):
        fs = [random_formula(rng, ["p", "q", "r"], 5) for _ in range(3)]
        cl = fm.subformula_closure(fm.Sequent(fs[:-1], fs[-1]))
        assert len(set(cl)) == len(cl)
        pos = {g: i for i, g in enumerate(cl)}
        for g in cl:
            for c in fm.children(g):
                assert pos[c] < pos[g]
        assert all(f in pos for f in fs)


def test_variables_first_occurrence():
    assert list(fm.variables(fm.parse("p"))) == ["p"]
    assert list(fm.variables(fm.parse("o p"))) == ["p"]
    assert list(fm.variables(fm.parse("(q & p) -> q"))) == ["q", "p"]


def test_fragment_check():
    fm.check_fragment([fm.parse("o p & ~q | r")], fm.Fragment.IMPLICATION_FREE)
    with pytest.raises(FragmentError):
        fm.check_fragment([fm.parse("p & (q -> r)")], fm.Fragment.IMPLICATION_FREE)


def test_sequent_syntax():
    s = fm.parse_sequent("o p, p, ~p |- q")
    assert len(s.premises) == 3 and s.conclusion == fm.Var("q")
    assert fm.parse_sequent("|- p").premises == ()
    assert str(s) == "o p, p, ~p |- q"


def test_parse_lines_skips_comments():
    text = "# heading\np & q\n\n  # indented comment\n~r\n"
    assert fm.parse_lines(text) == [fm.parse("p & q"), fm.parse("~r")]
