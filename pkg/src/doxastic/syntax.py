"""Formula AST, concrete syntax, sugar expansion and the propositional oracle.

Concrete grammar (lowest to highest precedence)::

    formula  := iff
    iff      := impl { "<->" impl }
    impl     := or [ "->" impl ]
    or       := and { "|" and }
    and      := unary { "&" unary }
    unary    := "!" unary | modal | primary
    modal    := "B" set set unary
              | "K" set unary
              | "[" [idlist] "]" set set unary      # [C]{T}{X} or [C]{A;P}{X}
    set      := "{" [idlist] [";" [idlist]] "}"
    primary  := ident | "true" | "false" | "(" formula ")"

A ``B`` or ``K`` immediately followed by ``{`` opens a modality; otherwise it
is an ordinary atom.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom", "Neg", "Impl", "Belief", "Strategy",
    "And", "Or", "Iff", "Know", "Top", "Bottom",
    "Formula", "RESERVED_ATOM",
    "ParseError", "AbstractionTooLarge",
    "parse", "to_text", "expand_sugar", "is_core",
    "is_prop_tautology", "prop_letters", "subformulas",
    "variables_of", "actors_of", "atoms_of", "varset",
]

RESERVED_ATOM = "p0"
MAX_TAUTOLOGY_LETTERS = 20


def varset(items=()) -> frozenset[str]:
    """Normalize an iterable (or comma-separated string) of names into a frozenset."""
    if isinstance(items, str):
        items = [s.strip() for s in items.strip().strip("{}").split(",") if s.strip()]
    return frozenset(items)


# --- core constructors -----------------------------------------------------

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Neg:
    body: "Formula"


@dataclass(frozen=True)
class Impl:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Belief:
    """B^trust_data body."""
    trust: frozenset[str]
    data: frozenset[str]
    body: "Formula"


@dataclass(frozen=True)
class Strategy:
    """[coalition]^{ante,post}_data body; the single-trust form has ante == post."""
    coalition: frozenset[str]
    ante: frozenset[str]
    post: frozenset[str]
    data: frozenset[str]
    body: "Formula"


# --- sugar -----------------------------------------------------------------

@dataclass(frozen=True)
class And:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Or:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Iff:
    lhs: "Formula"
    rhs: "Formula"


@dataclass(frozen=True)
class Know:
    data: frozenset[str]
    body: "Formula"


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


Formula = Union[Atom, Neg, Impl, Belief, Strategy, And, Or, Iff, Know, Top, Bottom]
CORE = (Atom, Neg, Impl, Belief, Strategy)


# --- lexer -----------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class AbstractionTooLarge(ValueError):
    pass


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<op><->|->|[!&|\[\]{};,()])|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "op", "ident" or "eof"
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos]!r}", pos)
        if m.lastgroup != "ws":
            toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = m.end()
    # end-of-input errors point at the last character of the input
    toks.append(_Tok("eof", "", max(len(text.rstrip()) - 1, 0)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise ParseError(f"expected {text!r}, found {found}", self.tok.offset)
        tok = self.tok
        self.i += 1
        return tok

    def formula(self) -> Formula:
        f = self.impl()
        while self.at("<->"):
            self.i += 1
            f = Iff(f, self.impl())
        return f

    def impl(self) -> Formula:
        f = self.disj()
        if self.at("->"):
            self.i += 1
            return Impl(f, self.impl())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.i += 1
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.tok
        if self.at("!"):
            self.i += 1
            return Neg(self.unary())
        if self.at("["):
            self.i += 1
            coalition = self.idlist("]")
            self.expect("]")
            ante, post = self.trust_set()
            data = self.plain_set()
            return Strategy(coalition, ante, post, data, self.unary())
        if tok.kind == "ident" and tok.text in ("B", "K") and self.peek().text == "{":
            self.i += 1
            if tok.text == "K":
                data = self.plain_set()
                return Know(data, self.unary())
            trust = self.plain_set()
            data = self.plain_set()
            return Belief(trust, data, self.unary())
        return self.primary()

    def primary(self) -> Formula:
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            if tok.text == "true":
                return Top()
            if tok.text == "false":
                return Bottom()
            return Atom(tok.text)
        if self.at("("):
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(f"expected a formula, found {found}", tok.offset)

    def idlist(self, *stops: str) -> frozenset[str]:
        names: list[str] = []
        if any(self.at(s) for s in stops):
            return frozenset()
        while True:
            tok = self.tok
            if tok.kind != "ident":
                found = "end of input" if tok.kind == "eof" else repr(tok.text)
                raise ParseError(f"expected an identifier, found {found}", tok.offset)
            names.append(tok.text)
            self.i += 1
            if not self.at(","):
                return frozenset(names)
            self.i += 1

    def plain_set(self) -> frozenset[str]:
        self.expect("{")
        s = self.idlist("}")
        self.expect("}")
        return s

    def trust_set(self) -> tuple[frozenset[str], frozenset[str]]:
        self.expect("{")
        ante = self.idlist("}", ";")
        post = ante
        if self.at(";"):
            self.i += 1
            post = self.idlist("}")
        self.expect("}")
        return ante, post


def parse(text: str) -> Formula:
    """Parse concrete syntax into an AST; sugar nodes are kept."""
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.offset)
    return f


# --- printer ---------------------------------------------------------------

# binding strength: iff < impl < or < and < unary
_LEVEL = {Iff: 0, Impl: 1, Or: 2, And: 3}


def _set(s: frozenset[str]) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def _print(f: Formula, level: int) -> str:
    kind = type(f)
    if kind in _LEVEL:
        own = _LEVEL[kind]
        if kind is Iff:
            text = f"{_print(f.lhs, 0)} <-> {_print(f.rhs, 1)}"
        elif kind is Impl:
            text = f"{_print(f.lhs, 2)} -> {_print(f.rhs, 1)}"
        elif kind is Or:
            text = f"{_print(f.lhs, 2)} | {_print(f.rhs, 3)}"
        else:
            text = f"{_print(f.lhs, 3)} & {_print(f.rhs, 4)}"
        return f"({text})" if own < level else text
    if kind is Atom:
        return f.name
    if kind is Top:
        return "true"
    if kind is Bottom:
        return "false"
    if kind is Neg:
        return "!" + _print(f.body, 4)
    if kind is Know:
        return "K" + _set(f.data) + _print(f.body, 4)
    if kind is Belief:
        return "B" + _set(f.trust) + _set(f.data) + _print(f.body, 4)
    if kind is Strategy:
        trust = _set(f.ante)
        if f.ante != f.post:
            trust = "{" + ",".join(sorted(f.ante)) + ";" + ",".join(sorted(f.post)) + "}"
        return "[" + ",".join(sorted(f.coalition)) + "]" + trust + _set(f.data) + _print(f.body, 4)
    raise TypeError(f"not a formula: {f!r}")


def to_text(f: Formula) -> str:
    """Canonical text; ``parse(to_text(f)) == f``."""
    return _print(f, 0)


# --- desugaring ------------------------------------------------------------

def expand_sugar(f: Formula) -> Formula:
    """Rewrite every sugar node into the five core constructors."""
    kind = type(f)
    if kind is Atom:
        return f
    if kind is Neg:
        return Neg(expand_sugar(f.body))
    if kind is Impl:
        return Impl(expand_sugar(f.lhs), expand_sugar(f.rhs))
    if kind is Belief:
        return Belief(f.trust, f.data, expand_sugar(f.body))
    if kind is Strategy:
        return Strategy(f.coalition, f.ante, f.post, f.data, expand_sugar(f.body))
    if kind is Know:
        return Belief(frozenset(), f.data, expand_sugar(f.body))
    if kind is And:
        return Neg(Impl(expand_sugar(f.lhs), Neg(expand_sugar(f.rhs))))
    if kind is Or:
        return Impl(Neg(expand_sugar(f.lhs)), expand_sugar(f.rhs))
    if kind is Iff:
        lhs, rhs = expand_sugar(f.lhs), expand_sugar(f.rhs)
        return Neg(Impl(Impl(lhs, rhs), Neg(Impl(rhs, lhs))))
    if kind is Top:
        return Impl(Atom(RESERVED_ATOM), Atom(RESERVED_ATOM))
    if kind is Bottom:
        return Neg(Impl(Atom(RESERVED_ATOM), Atom(RESERVED_ATOM)))
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over ``f`` and all of its subformulas."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (Impl, And, Or, Iff)):
            stack.append(g.rhs)
            stack.append(g.lhs)
        elif isinstance(g, (Neg, Belief, Strategy, Know)):
            stack.append(g.body)


def is_core(f: Formula) -> bool:
    return all(isinstance(g, CORE) for g in subformulas(f))


def variables_of(f: Formula) -> frozenset[str]:
    out: set[str] = set()
    for g in subformulas(f):
        if isinstance(g, Belief):
            out |= g.trust | g.data
        elif isinstance(g, Strategy):
            out |= g.ante | g.post | g.data
        elif isinstance(g, Know):
            out |= g.data
    return frozenset(out)


def actors_of(f: Formula) -> frozenset[str]:
    return frozenset(a for g in subformulas(f) if isinstance(g, Strategy) for a in g.coalition)


def atoms_of(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


# --- propositional oracle --------------------------------------------------

def prop_letters(f: Formula) -> list[Formula]:
    """Maximal subformulas not built from ! and ->, in first-occurrence order."""
    letters: dict[Formula, None] = {}

    def walk(g):
        if isinstance(g, Neg):
            walk(g.body)
        elif isinstance(g, Impl):
            walk(g.lhs)
            walk(g.rhs)
        else:
            letters.setdefault(g)

    walk(f)
    return list(letters)


def _compile(f: Formula, index: dict[Formula, int]):
    if isinstance(f, Neg):
        body = _compile(f.body, index)
        return lambda v: not body(v)
    if isinstance(f, Impl):
        lhs, rhs = _compile(f.lhs, index), _compile(f.rhs, index)
        return lambda v: (not lhs(v)) or rhs(v)
    i = index[f]
    return lambda v: v[i]


def is_prop_tautology(f: Formula) -> bool:
    """Truth-table validity with modal subformulas and atoms treated as letters."""
    f = expand_sugar(f)
    letters = prop_letters(f)
    if len(letters) > MAX_TAUTOLOGY_LETTERS:
        raise AbstractionTooLarge(
            f"{len(letters)} propositional letters (limit {MAX_TAUTOLOGY_LETTERS})"
        )
    fn = _compile(f, {g: i for i, g in enumerate(letters)})
    return all(fn(v) for v in itertools.product((False, True), repeat=len(letters)))
