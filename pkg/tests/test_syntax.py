import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from doxastic.syntax import (
    AbstractionTooLarge, And, Atom, Belief, Bottom, Iff, Impl, Know, Neg, Or, ParseError,
    Strategy, Top, expand_sugar, is_core, is_prop_tautology, parse, prop_letters, to_text,
)
from strategies import formulas

p, q, r = Atom("p"), Atom("q"), Atom("r")
fs = frozenset


# --- parser ---------------------------------------------------------------

def test_parse_atom():
    assert parse("p") == Atom("p")


def test_parse_belief_shape():
    assert parse("B{x,v}{x,v} can_destroy") == Belief(fs({"x", "v"}), fs({"x", "v"}), Atom("can_destroy"))


def test_parse_single_superscript_strategy_goes_straight_to_core():
    f = parse("[patriot]{x,v,t}{x,v,t} destroyed")
    xvt = fs({"x", "v", "t"})
    assert f == Strategy(fs({"patriot"}), xvt, xvt, xvt, Atom("destroyed"))
    assert is_core(f)


def test_parse_two_superscripts():
    f = parse("[a,b]{yea;n}{yea} approved")
    assert f == Strategy(fs({"a", "b"}), fs({"yea"}), fs({"n"}), fs({"yea"}), Atom("approved"))


def test_parse_empty_sets():
    assert parse("[]{}{}p") == Strategy(fs(), fs(), fs(), fs(), p)
    assert parse("B{}{}p") == Belief(fs(), fs(), p)
    assert parse("[]{;t}{}p") == Strategy(fs(), fs(), fs({"t"}), fs(), p)


@pytest.mark.parametrize("text, expected", [
    ("p -> q -> r", Impl(p, Impl(q, r))),
    ("p & q | r", Or(And(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("p | q -> r", Impl(Or(p, q), r)),
    ("p -> q <-> r", Iff(Impl(p, q), r)),
    ("p <-> q <-> r", Iff(Iff(p, q), r)),
    ("!p & q", And(Neg(p), q)),
    ("B{}{}p & q", And(Belief(fs(), fs(), p), q)),
    ("K{x}!p", Know(fs({"x"}), Neg(p))),
    ("!!p", Neg(Neg(p))),
    ("true -> false", Impl(Top(), Bottom())),
    ("B", Atom("B")),
    ("K & B", And(Atom("K"), Atom("B"))),
])
def test_precedence_and_associativity(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("text, offset", [
    ("(p -> (q -> p)", 13),
    ("p ->", 3),
    ("p ~ q", 2),
    ("B{x", 2),
    ("B{x,}{}p", 4),
    ("[a]{x}p", 6),
    ("p q", 2),
    ("", 0),
    (")", 0),
])
def test_parse_errors_carry_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset


def test_unbalanced_brace_reported():
    with pytest.raises(ParseError, match="'}'"):
        parse("B{x{}p")


# --- printer ----------------------------------------------------------------

def test_print_examples():
    assert to_text(p) == "p"
    assert to_text(Belief(fs(), fs(), p)) == "B{}{}p"
    assert to_text(Strategy(fs({"b", "a"}), fs({"t"}), fs({"t"}), fs({"y", "x"}), p)) == "[a,b]{t}{x,y}p"
    assert to_text(Strategy(fs(), fs({"t"}), fs(), fs(), p)) == "[]{t;}{}p"


def test_print_minimal_parentheses():
    assert to_text(Impl(Impl(p, q), r)) == "(p -> q) -> r"
    assert to_text(Impl(p, Impl(q, r))) == "p -> q -> r"
    assert to_text(Neg(And(p, q))) == "!(p & q)"
    assert to_text(Belief(fs(), fs(), Impl(p, q))) == "B{}{}(p -> q)"


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_round_trip(f):
    assert parse(to_text(f)) == f


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_desugar_idempotent_and_core(f):
    once = expand_sugar(f)
    assert is_core(once)
    assert expand_sugar(once) == once
    assert parse(to_text(once)) == once


# --- sugar ------------------------------------------------------------------

def test_sugar_rules():
    x = fs({"x"})
    top = Impl(Atom("p0"), Atom("p0"))
    assert expand_sugar(parse("K{x}p")) == Belief(fs(), x, p)
    assert expand_sugar(parse("p & q")) == Neg(Impl(p, Neg(q)))
    assert expand_sugar(parse("p | q")) == Impl(Neg(p), q)
    assert expand_sugar(parse("p <-> q")) == Neg(Impl(Impl(p, q), Neg(Impl(q, p))))
    assert expand_sugar(Top()) == top
    assert expand_sugar(Bottom()) == Neg(top)


def test_sugar_expands_under_modalities():
    f = parse("[a]{t}{x}(p & K{}q)")
    g = expand_sugar(f)
    assert isinstance(g, Strategy) and g.ante == g.post == fs({"t"})
    assert g.body == Neg(Impl(p, Neg(Belief(fs(), fs(), q))))


# --- tautology oracle -------------------------------------------------------

def shannon_valid(f, letters):
    """Independent check: split on each letter in turn, substituting constants."""
    def ev(h, env):
        if isinstance(h, Neg):
            return not ev(h.body, env)
        if isinstance(h, Impl):
            return (not ev(h.lhs, env)) or ev(h.rhs, env)
        return env[h]

    def split(i, env):
        if i == len(letters):
            return ev(f, env)
        return split(i + 1, {**env, letters[i]: True}) and split(i + 1, {**env, letters[i]: False})

    return split(0, {})


@pytest.mark.parametrize("text, expected", [
    ("p -> p", True),
    ("B{t}{x}p -> B{t}{x}p", True),
    ("B{}{x}p -> p", False),
    ("p -> q -> p", True),
    ("(p -> q) -> (q -> r) -> p -> r", True),
    ("!!p -> p", True),
    ("p | !p", True),
    ("p & !p", False),
    ("true", True),
    ("false", False),
    ("B{}{}p -> B{}{}q", False),
    ("(p <-> q) -> (q <-> p)", True),
])
def test_tautology_examples(text, expected):
    assert is_prop_tautology(expand_sugar(parse(text))) is expected


_LETTER_POOL = [p, q, Belief(fs(), fs({"x"}), p)]


def _random_prop(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice(_LETTER_POOL)
    if rng.random() < 0.35:
        return Neg(_random_prop(rng, depth - 1))
    return Impl(_random_prop(rng, depth - 1), _random_prop(rng, depth - 1))


def test_tautology_agrees_with_shannon_expansion():
    rng = random.Random(3)
    seen = {True: 0, False: 0}
    for _ in range(800):
        f = _random_prop(rng, 5)
        letters = prop_letters(f)
        assert len(letters) <= 3
        got = is_prop_tautology(f)
        assert got == shannon_valid(f, letters), to_text(f)
        seen[got] += 1
    assert seen[True] > 20 and seen[False] > 20


def test_prop_letters_are_maximal_modal_subformulas():
    f = expand_sugar(parse("B{t}{x}(p -> q) -> !p"))
    assert prop_letters(f) == [Belief(fs({"t"}), fs({"x"}), Impl(p, q)), p]


def test_tautology_letter_limit():
    big = Atom("a0")
    for i in range(1, 21):
        big = Impl(Atom(f"a{i}"), big)
    with pytest.raises(AbstractionTooLarge):
        is_prop_tautology(big)
    ok = Atom("a0")
    for i in range(1, 20):
        ok = Impl(Atom(f"a{i}"), ok)
    assert is_prop_tautology(ok) is False


@given(st.lists(st.sampled_from(["p", "q", "r"]), min_size=1, max_size=6))
def test_implication_chain_to_member_is_tautology(names):
    f = Atom(names[0])
    for n in names:
        f = Impl(Atom(n), f)
    # every chain n_k -> ... -> n_1 -> names[0] is valid because names[0] is among the antecedents
    assert is_prop_tautology(f)


def test_truth_table_is_exhaustive_over_assignments():
    letters = [Atom(c) for c in "abc"]
    count = 0
    for values in itertools.product([True, False], repeat=3):
        clause = None
        for a, v in zip(letters, values):
            lit = a if v else Neg(a)
            clause = lit if clause is None else Neg(Impl(clause, Neg(lit)))
        # the negation of any single full conjunction is falsifiable
        assert not is_prop_tautology(Neg(clause))
        count += 1
    assert count == 8
