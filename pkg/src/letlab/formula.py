"""Formula AST, concrete syntax, printing and subformula machinery.

Grammar (loosest binding first)::

    imp   := or ( '->' imp )?          right associative
    or    := and ( '|' and )*          left associative
    and   := unary ( '&' unary )*      left associative
    unary := ('~' | 'o' | '@') unary | atom
    atom  := IDENT | 'T' | 'top' | 'F' | 'bot' | '(' imp ')'

Unicode aliases: ``¬ ∘ ∧ ∨ → ⊤ ⊥``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import FragmentError, ParseError


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _IDENT_FULL.fullmatch(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")
        if self.name in RESERVED:
            raise ValueError(f"{self.name!r} is a reserved word")


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Not:
    child: "Formula"


@dataclass(frozen=True, slots=True)
class Circ:
    child: "Formula"


@dataclass(frozen=True, slots=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True, slots=True)
class Imp:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Top, Bot, Not, Circ, And, Or, Imp]
UNARY = (Not, Circ)
BINARY = (And, Or, Imp)


class Fragment(enum.Enum):
    FULL = "full"
    IMPLICATION_FREE = "implication-free"


@dataclass(frozen=True)
class Sequent:
    premises: tuple
    conclusion: Formula

    def __init__(self, premises: Iterable[Formula], conclusion: Formula):
        object.__setattr__(self, "premises", tuple(premises))
        object.__setattr__(self, "conclusion", conclusion)

    def formulas(self) -> tuple:
        return self.premises + (self.conclusion,)

    def __str__(self):
        left = ", ".join(to_text(p) for p in self.premises)
        return f"{left} |- {to_text(self.conclusion)}" if left else f"|- {to_text(self.conclusion)}"


def children(f: Formula) -> tuple:
    if isinstance(f, UNARY):
        return (f.child,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


def has_implication(f: Formula) -> bool:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Imp):
            return True
        stack.extend(children(g))
    return False


def check_fragment(formulas, fragment: Fragment) -> None:
    if fragment is Fragment.IMPLICATION_FREE:
        for f in formulas:
            if has_implication(f):
                raise FragmentError(f"'->' is not available in the implication-free fragment: {to_text(f)}")


def variables(f: Formula) -> list:
    """Variable names in left-to-right first-occurrence order."""
    seen = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Var):
            seen.setdefault(g.name, None)
        else:
            stack.extend(reversed(children(g)))
    return list(seen)


def sequent_variables(s: Sequent) -> list:
    seen = {}
    for f in s.formulas():
        for name in variables(f):
            seen.setdefault(name, None)
    return list(seen)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order walk (children before parents), duplicates included."""
    stack = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if expanded:
            yield g
            continue
        stack.append((g, True))
        for c in reversed(children(g)):
            stack.append((c, False))


def subformula_closure(s) -> list:
    """Structurally deduplicated subformulas of a sequent, children first.

    Accepts a :class:`Sequent` or any iterable of formulas.
    """
    formulas = s.formulas() if isinstance(s, Sequent) else tuple(s)
    seen = {}
    for f in formulas:
        for g in subformulas(f):
            seen.setdefault(g, None)
    return list(seen)


def depth(f: Formula) -> int:
    cs = children(f)
    return 0 if not cs else 1 + max(depth(c) for c in cs)


def size(f: Formula) -> int:
    return sum(1 for _ in subformulas(f))


# --- derived formula builders -------------------------------------------------

def big_and(formulas):
    """Left-associated conjunction; None for an empty list."""
    formulas = list(formulas)
    if not formulas:
        return None
    acc = formulas[0]
    for f in formulas[1:]:
        acc = And(acc, f)
    return acc


def iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def equiv(a: Formula, b: Formula) -> Formula:
    """Triple equivalence: agreement of A, ~A and oA under <->."""
    return And(And(iff(a, b), iff(Not(a), Not(b))), iff(Circ(a), Circ(b)))


def true_part(a: Formula) -> Formula:
    """A^T := oA & A."""
    return And(Circ(a), a)


def false_part(a: Formula) -> Formula:
    """A^F := oA & ~A."""
    return And(Circ(a), Not(a))


# --- lexer --------------------------------------------------------------------

RESERVED = {"T": "TOP", "top": "TOP", "F": "BOT", "bot": "BOT", "o": "CIRC"}
_IDENT_FULL = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      |(?P<IMP>->|→)
      |(?P<NOT>~|¬)
      |(?P<CIRC>@|∘)
      |(?P<AND>&|∧)
      |(?P<OR>\||∨)
      |(?P<TOP>⊤)
      |(?P<BOT>⊥)
      |(?P<LP>\()
      |(?P<RP>\))
      |(?P<IDENT>[A-Za-z_][A-Za-z0-9_']*)
    """,
    re.VERBOSE,
)

_DISPLAY = {
    "IMP": "'->'", "NOT": "'~'", "CIRC": "'o'", "AND": "'&'", "OR": "'|'",
    "TOP": "'T'", "BOT": "'F'", "LP": "'('", "RP": "')'", "IDENT": "variable", "EOF": "end of input",
}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            lexeme = m.group()
            if kind == "IDENT" and lexeme in RESERVED:
                kind = RESERVED[lexeme]
            tokens.append((kind, lexeme, pos))
        pos = m.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    _ATOM_START = ("NOT", "CIRC", "IDENT", "TOP", "BOT", "LP")

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        kind, lexeme, pos = self.tokens[self.i]
        found = "end of input" if kind == "EOF" else repr(lexeme)
        raise ParseError(
            f"unexpected {found}", _byte_offset(self.text, pos), [_DISPLAY[e] for e in expected]
        )

    def parse(self):
        f = self.imp()
        if self.peek() != "EOF":
            self.fail(("AND", "OR", "IMP", "EOF"))
        return f

    def imp(self):
        left = self.disj()
        if self.peek() == "IMP":
            self.take()
            return Imp(left, self.imp())
        return left

    def disj(self):
        f = self.conj()
        while self.peek() == "OR":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.unary()
        while self.peek() == "AND":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        kind = self.peek()
        if kind == "NOT":
            self.take()
            return Not(self.unary())
        if kind == "CIRC":
            self.take()
            return Circ(self.unary())
        return self.atom()

    def atom(self):
        kind = self.peek()
        if kind == "IDENT":
            return Var(self.take()[1])
        if kind == "TOP":
            self.take()
            return Top()
        if kind == "BOT":
            self.take()
            return Bot()
        if kind == "LP":
            self.take()
            f = self.imp()
            if self.peek() != "RP":
                self.fail(("AND", "OR", "IMP", "RP"))
            self.take()
            return f
        self.fail(self._ATOM_START)


def parse(text: str) -> Formula:
    """Parse a formula; raises :class:`ParseError` with a byte offset."""
    return _Parser(text).parse()


def parse_sequent(text: str) -> Sequent:
    """Parse ``F1, F2, ... |- G``; a bare formula is a sequent without premises."""
    if "|-" in text:
        left, _, right = text.partition("|-")
        offset = _byte_offset(text, len(left) + 2)
        try:
            conclusion = parse(right)
        except ParseError as e:
            raise ParseError(str(e).split(" at byte")[0], e.offset + offset, e.expected) from None
    else:
        left, conclusion = "", parse(text)
    premises = []
    start = 0
    for chunk in left.split(",") if left.strip() else []:
        try:
            premises.append(parse(chunk))
        except ParseError as e:
            base = _byte_offset(text, start)
            raise ParseError(str(e).split(" at byte")[0], e.offset + base, e.expected) from None
        start += len(chunk) + 1
    return Sequent(premises, conclusion)


def parse_lines(text: str) -> list:
    """One formula per line; blank lines and ``#`` comment lines are skipped."""
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append(parse(stripped))
    return out


# --- printer ------------------------------------------------------------------

_PREC = {Imp: 1, Or: 2, And: 3, Not: 4, Circ: 4}
_SYMBOL = {Imp: "->", Or: "|", And: "&"}
_USYMBOL = {Imp: "→", Or: "∨", And: "∧"}


def _prec(f):
    return _PREC.get(type(f), 5)


def to_text(f: Formula, unicode: bool = False) -> str:
    """Render with the fewest parentheses that still round-trip through :func:`parse`."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "⊤" if unicode else "T"
    if isinstance(f, Bot):
        return "⊥" if unicode else "F"
    if isinstance(f, UNARY):
        inner = to_text(f.child, unicode)
        if _prec(f.child) < 4:
            inner = f"({inner})"
        if isinstance(f, Not):
            return ("¬" if unicode else "~") + inner
        if unicode:
            return "∘" + inner
        return "o" + inner if inner.startswith("(") else "o " + inner
    p = _PREC[type(f)]
    left, right = to_text(f.left, unicode), to_text(f.right, unicode)
    if isinstance(f, Imp):
        if _prec(f.left) <= p:
            left = f"({left})"
        if _prec(f.right) < p:
            right = f"({right})"
    else:
        if _prec(f.left) < p:
            left = f"({left})"
        if _prec(f.right) <= p:
            right = f"({right})"
    sym = (_USYMBOL if unicode else _SYMBOL)[type(f)]
    return f"{left} {sym} {right}"


print_formula = to_text
