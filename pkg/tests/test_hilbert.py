import json
import random
from dataclasses import replace

import pytest

from doxastic.hilbert import (
    CORE_SCHEMAS, SCHEMAS, Derivation, PreconditionError, ProofBuilder, ProofFormatError,
    ProofLine, UnknownSchemaError, b_lift_transform, box_lift_transform, builtin_proofs,
    check_derivation, deduction_transform, dump_proof, load_proof, match_axiom,
    positive_introspection, s_necessitation, strategic_introspection_plus,
)
from doxastic.hilbert import schemas as ax
from doxastic.hilbert.derivation import dependencies
from doxastic.hilbert.transforms import discharge_all
from doxastic.syntax import Atom, Belief, Impl, Neg, expand_sugar, parse, to_text
from strategies import random_mp_derivation

fs = frozenset
p, q, r = Atom("p"), Atom("q"), Atom("r")


def F(text):
    return expand_sugar(parse(text))


# --- schema corpus: hand-written positives and negatives ---------------------------

CORPUS = {
    "Truth": (
        ["B{}{x}p -> p", "B{}{}(p -> q) -> p -> q", "B{}{x,y}B{t}{}q -> B{t}{}q"],
        ["B{t}{x}p -> p", "B{}{x}p -> q", "p -> B{}{x}p", "B{}{x}p"],
    ),
    "NegativeIntrospection": (
        ["!B{t}{x}p -> B{}{x}!B{t}{x}p", "!B{}{}q -> B{}{}!B{}{}q", "!B{t,v}{x}(p -> q) -> B{}{x}!B{t,v}{x}(p -> q)"],
        ["!B{t}{x}p -> B{t}{x}!B{t}{x}p", "!B{t}{x}p -> B{}{y}!B{t}{x}p", "B{t}{x}p -> B{}{x}B{t}{x}p"],
    ),
    "Distributivity": (
        ["B{t}{x}(p -> q) -> B{t}{x}p -> B{t}{x}q", "B{}{}(p -> p) -> B{}{}p -> B{}{}p",
         "B{a}{b,c}(!p -> q) -> B{a}{b,c}!p -> B{a}{b,c}q"],
        ["B{t}{x}(p -> q) -> B{t}{y}p -> B{t}{x}q", "B{t}{x}(p -> q) -> B{t}{x}q -> B{t}{x}p",
         "B{t}{x}(p -> q) -> B{}{x}p -> B{}{x}q"],
    ),
    "Trust": (
        ["B{t}{x}(B{t}{y}p -> p)", "B{}{}(B{}{}p -> p)", "B{t,v}{x}(B{t,v}{x,y}(p -> q) -> p -> q)"],
        ["B{t}{x}(B{v}{y}p -> p)", "B{t}{x}(B{t}{y}p -> q)", "B{t}{y}p -> p"],
    ),
    "MonotonicityB": (
        ["B{t}{x}p -> B{t}{x,y}p", "B{}{}p -> B{t}{x}p", "B{t}{x}q -> B{t}{x}q"],
        ["B{t}{x,y}p -> B{t}{x}p", "B{t,v}{x}p -> B{t}{x}p", "B{t}{x}p -> B{t}{x}q"],
    ),
    "MonotonicityS": (
        ["[a]{t}{x}p -> [a,b]{t}{x,y}p", "[]{}{}p -> [a]{t}{x}p", "[a]{t}{x}p -> [a]{t}{x}p"],
        ["[a,b]{t}{x}p -> [a]{t}{x}p", "[a]{t;v}{x}p -> [a]{t;v}{x}p", "[a]{t}{x}p -> [a]{}{x}p"],
    ),
    "Cooperation": (
        ["[a]{t}{x}(p -> q) -> [b]{t}{x}p -> [a,b]{t}{x}q",
         "[]{}{}(p -> q) -> []{}{}p -> []{}{}q",
         "[a]{}{x}(p -> q) -> []{}{x}p -> [a]{}{x}q"],
        ["[a]{t}{x}(p -> q) -> [a,b]{t}{x}p -> [a,b]{t}{x}q",
         "[a]{t}{x}(p -> q) -> [b]{t}{x}p -> [a]{t}{x}q",
         "[a]{t}{x}(p -> q) -> [b]{v}{x}p -> [a,b]{t}{x}q"],
    ),
    "StrategicIntrospection": (
        ["[a]{t}{x}p <-> B{t}{x}[a]{t}{x}p", "[]{}{}q <-> B{}{}[]{}{}q",
         "[a,b]{t,v}{x}(p -> q) <-> B{t,v}{x}[a,b]{t,v}{x}(p -> q)"],
        ["[a]{t}{x}p -> B{t}{x}[a]{t}{x}p", "[a]{t}{x}p <-> B{}{x}[a]{t}{x}p",
         "[a]{t;v}{x}p <-> B{t}{x}[a]{t;v}{x}p"],
    ),
    "BeliefInUnavoidability": (
        ["B{t}{x}[]{t}{y}p -> []{t}{x}p", "B{}{}[]{}{}p -> []{}{}p", "B{t}{x}[]{t}{x,y}(p -> q) -> []{t}{x}(p -> q)"],
        ["B{t}{x}[a]{t}{y}p -> [a]{t}{x}p", "B{t}{x}[]{v}{y}p -> []{t}{x}p", "B{t}{x}[]{t}{y}p -> []{t}{y}p"],
    ),
    "PublicBelief": (
        ["B{t}{}p -> []{t}{}p", "B{}{}p -> []{}{}p", "B{t,v}{}(p -> q) -> []{t,v}{}(p -> q)"],
        ["B{t}{x}p -> []{t}{x}p", "B{t}{}p -> [a]{t}{}p", "B{t}{}p -> []{;t}{}p"],
    ),
    "GeneralizedPublicBelief": (
        ["B{t}{}p -> []{;t}{}p", "B{}{}p -> []{}{}p", "B{t,v}{}!p -> []{;t,v}{}!p"],
        ["B{t}{}p -> []{t}{}p", "B{t}{x}p -> []{;t}{x}p", "B{t}{}p -> []{t;}{}p"],
    ),
}


def test_corpus_covers_every_schema():
    assert set(CORPUS) == set(SCHEMAS)
    assert len(CORE_SCHEMAS) == 10


@pytest.mark.parametrize("schema", sorted(CORPUS))
def test_schema_positives(schema):
    positives, _ = CORPUS[schema]
    assert len(positives) >= 3
    for text in positives:
        assert match_axiom(F(text), schema), text


@pytest.mark.parametrize("schema", sorted(CORPUS))
def test_schema_negatives(schema):
    _, negatives = CORPUS[schema]
    assert len(negatives) >= 3
    for text in negatives:
        assert not match_axiom(F(text), schema), text


def test_cooperation_overlap_rejected():
    assert not match_axiom(F("[a]{t}{x}(p -> q) -> [a,b]{t}{x}p -> [a,b]{t}{x}q"), "Cooperation")


def test_unknown_schema():
    with pytest.raises(UnknownSchemaError):
        match_axiom(F("p -> p"), "Nope")


# --- derivation checking -------------------------------------------------------------

def test_single_tautology_line():
    assert check_derivation(Derivation((), (ProofLine(F("p -> p"), "Taut"),)))


def test_empty_derivation_invalid():
    report = check_derivation(Derivation((), ()))
    assert not report and report.line == 0


@pytest.mark.parametrize("build, args", [
    (positive_introspection, ({"t"}, {"x"}, p)),
    (positive_introspection, ((), (), p)),
    (positive_introspection, ({"t", "v"}, {"x", "y"}, F("p -> B{}{}q"))),
    (strategic_introspection_plus, ({"a"}, {"t"}, {"x"}, p)),
    (strategic_introspection_plus, ((), (), (), p)),
    (s_necessitation, ({"t"}, {"x"}, F("p -> p"))),
    (s_necessitation, ((), (), F("p | !p"))),
])
def test_bundled_derivations_validate(build, args):
    d = build(*args)
    assert check_derivation(d), str(check_derivation(d))


def test_bundled_conclusions():
    T, X, C = fs({"t"}), fs({"x"}), fs({"a"})
    b = ax.belief(T, X, p)
    assert positive_introspection(T, X, p).conclusion == Impl(b, ax.belief(fs(), X, b))
    s = ax.box(C, T, X, p)
    assert strategic_introspection_plus(C, T, X, p).conclusion == Impl(s, ax.belief(fs(), X, s))
    assert s_necessitation(T, X).conclusion == ax.box(fs(), T, X, F("p -> p"))
    assert set(builtin_proofs()) == {"positive_introspection", "strategic_introspection_plus", "s_necessitation"}


def test_nec_on_hypothesis_rejected():
    d = Derivation((p,), (ProofLine(p, "Hyp", index=0), ProofLine(Belief(fs(), fs(), p), "Nec", premises=(1,))))
    report = check_derivation(d)
    assert not report and report.line == 2 and "depends on hypotheses" in report.reason


def test_nec_on_mp_of_hypothesis_rejected():
    out = ProofBuilder([p])
    h = out.hyp(0)
    out.nec(out.mp(h, out.taut(F("p -> q -> p"))))
    report = check_derivation(out.build())
    assert not report and report.line == 4


def test_generalized_public_belief_behind_flag():
    d = Derivation((), (ProofLine(F("B{t}{}p -> []{;t}{}p"), "Axiom", schema="GeneralizedPublicBelief"),))
    assert not check_derivation(d)
    assert check_derivation(d, allow_generalized=True)


def test_sugar_in_lines_rejected():
    d = Derivation((), (ProofLine(parse("p | !p"), "Taut"),))
    assert check_derivation(d).reason == "formula is not desugared"


# --- mutations ---------------------------------------------------------------------

def _mutations(d):
    """Yield (kind, line number, replacement line) for premise, rule and formula edits."""
    for k, ln in enumerate(d.lines, start=1):
        if ln.rule == "MP":
            i, j = ln.premises
            yield "premise", k, replace(ln, premises=(j, i))
            yield "rule", k, replace(ln, rule="Nec", premises=(i,))
        elif ln.rule == "Nec":
            yield "premise", k, replace(ln, premises=(k,))
        elif ln.rule == "Axiom":
            other = "Truth" if ln.schema != "Truth" else "Trust"
            yield "rule", k, replace(ln, schema=other)
        yield "formula", k, replace(ln, formula=Neg(ln.formula))


def _apply(d, k, line):
    lines = list(d.lines)
    lines[k - 1] = line
    return Derivation(d.hypotheses, tuple(lines))


def test_twenty_single_line_mutations_fail_at_their_line():
    proofs = [
        positive_introspection({"t"}, {"x"}, p),
        strategic_introspection_plus({"a"}, {"t"}, {"x"}, p),
        s_necessitation({"t"}, {"x"}),
    ]
    rng = random.Random(11)
    chosen = []
    for d in proofs:
        muts = list(_mutations(d))
        by_kind = {kind: [m for m in muts if m[0] == kind] for kind in ("premise", "rule", "formula")}
        for kind, items in by_kind.items():
            for m in rng.sample(items, min(len(items), 3 if d is not proofs[2] else 1)):
                chosen.append((d, *m))
    chosen = chosen[:20]
    assert len(chosen) == 20
    assert {c[1] for c in chosen} == {"premise", "rule", "formula"}
    for d, kind, k, line in chosen:
        report = check_derivation(_apply(d, k, line))
        assert not report and report.line == k, (kind, k, str(report))


def test_corrupted_premise_index_in_positive_introspection():
    d = positive_introspection({"t"}, {"x"}, p)
    k = next(k for k, ln in enumerate(d.lines, start=1) if ln.rule == "MP" and ln.premises[0] > 1)
    ln = d.lines[k - 1]
    bad = replace(ln, premises=(ln.premises[0] - 1, ln.premises[1]))
    report = check_derivation(_apply(d, k, bad))
    assert not report and report.line == k


# --- transformers --------------------------------------------------------------------

def modus_ponens_example():
    out = ProofBuilder([p, Impl(p, q)])
    out.mp(out.hyp(0), out.hyp(1))
    return out.build()


def test_deduction_discharges_one_hypothesis():
    d = deduction_transform(modus_ponens_example(), p)
    assert check_derivation(d)
    assert d.hypotheses == (Impl(p, q),)
    assert d.conclusion == Impl(p, q)


def test_discharging_everything():
    closed, hyps = discharge_all(modus_ponens_example())
    assert check_derivation(closed) and closed.hypotheses == ()
    assert closed.conclusion == Impl(p, Impl(Impl(p, q), q))
    assert hyps == [p, Impl(p, q)]


def test_deduction_preconditions():
    with pytest.raises(PreconditionError):
        deduction_transform(modus_ponens_example(), r)
    bad = Derivation((p,), (ProofLine(q, "Hyp", index=0),))
    with pytest.raises(PreconditionError):
        deduction_transform(bad, p)


def test_b_lift_example():
    T, X = fs({"t"}), fs({"x"})
    d = b_lift_transform(modus_ponens_example(), T, X)
    assert check_derivation(d)
    assert d.hypotheses == (ax.belief(T, X, p), ax.belief(T, X, Impl(p, q)))
    assert d.conclusion == ax.belief(T, X, q)


def test_box_lift_example_uses_cooperation():
    T, X = fs({"t"}), fs({"x"})
    d = box_lift_transform(modus_ponens_example(), T, X)
    assert check_derivation(d)
    assert d.conclusion == ax.box(fs(), T, X, q)
    assert any(ln.schema == "Cooperation" for ln in d.lines)


def test_lifts_of_theorems():
    T, X = fs({"t"}), fs({"x"})
    theorem = Derivation((), (ProofLine(F("p -> p"), "Taut"),))
    b = b_lift_transform(theorem, T, X)
    s = box_lift_transform(theorem, T, X)
    assert check_derivation(b) and b.conclusion == ax.belief(T, X, F("p -> p"))
    assert check_derivation(s) and s.conclusion == ax.box(fs(), T, X, F("p -> p"))


def random_corpus(n=100, seed=5):
    rng = random.Random(seed)
    return [random_mp_derivation(rng) for _ in range(n)]


def test_random_derivations_are_valid_and_varied():
    corpus = random_corpus()
    assert all(check_derivation(d) for d in corpus)
    assert sum(any(ln.rule == "Nec" for ln in d.lines) for d in corpus) > 5
    assert sum(len(set(d.hypotheses)) > 1 for d in corpus) > 20
    assert all(dependencies(d)[-1] for d in corpus)


def test_deduction_closure_on_random_derivations():
    for d in random_corpus():
        phi = d.hypotheses[0]
        out = deduction_transform(d, phi)
        assert check_derivation(out), str(check_derivation(out))
        assert out.conclusion == Impl(phi, d.conclusion)
        assert phi not in out.hypotheses


def test_lift_closure_on_random_derivations():
    T, X = fs({"t"}), fs({"x"})
    for d in random_corpus(50, seed=6):
        hyps = list(dict.fromkeys(d.hypotheses))
        b = b_lift_transform(d, T, X)
        assert check_derivation(b)
        assert b.conclusion == ax.belief(T, X, d.conclusion)
        assert list(b.hypotheses) == [ax.belief(T, X, h) for h in hyps]
        s = box_lift_transform(d, T, X)
        assert check_derivation(s)
        assert s.conclusion == ax.box(fs(), T, X, d.conclusion)


# --- proof files ---------------------------------------------------------------------

def test_proof_file_round_trip():
    d = strategic_introspection_plus({"a"}, {"t"}, {"x"}, p)
    doc = json.loads(json.dumps(dump_proof(d)))
    assert load_proof(doc) == d
    b = b_lift_transform(modus_ponens_example(), {"t"}, {"x"})
    assert load_proof(json.dumps(dump_proof(b))) == b


def test_proof_file_format():
    text = json.dumps({
        "hypotheses": ["p", "p -> q"],
        "lines": [
            {"formula": "p", "rule": "Hyp", "index": 0},
            {"formula": "p -> q", "rule": "Hyp", "index": 1},
            {"formula": "q", "rule": "MP", "premises": [1, 2]},
            {"formula": "B{}{x}q -> q", "rule": "Axiom:Truth"},
            {"formula": "p | !p", "rule": "Taut"},
            {"formula": "B{}{}(p | !p)", "rule": "Nec", "premise": 5},
        ],
    })
    d = load_proof(text)
    assert check_derivation(d)
    assert d.lines[3].schema == "Truth"


@pytest.mark.parametrize("doc", [
    {"hypotheses": []},
    {"lines": [], "extra": 1},
    {"lines": [{"formula": "p"}]},
    {"lines": [{"formula": "p ->", "rule": "Taut"}]},
    {"lines": [{"formula": "p", "rule": "MP", "premises": ["1", 2]}]},
    {"lines": [{"formula": "p", "rule": "Taut", "why": 1}]},
])
def test_malformed_proof_files(doc):
    with pytest.raises(ProofFormatError):
        load_proof(doc)


def test_unknown_rule_is_a_verdict_not_an_exception():
    d = load_proof({"lines": [{"formula": "p -> p", "rule": "Magic"}]})
    report = check_derivation(d)
    assert not report and report.line == 1
    assert str(report).startswith("invalid at line 1")


def test_bundled_lemma_file_validates():
    from importlib import resources
    text = resources.files("doxastic.data").joinpath("lemma1.proof").read_text()
    d = load_proof(text)
    assert check_derivation(d)
    assert to_text(d.conclusion) == "B{t}{x}p -> B{}{x}B{t}{x}p"
