"""Axiom schemas: instance builders and structural matchers.

Each matcher pulls the metavariables out of the candidate formula, rebuilds
the instance from them and compares; subset and disjointness side conditions
are then tested on the concrete sets.  Candidates must be desugared.
"""

from __future__ import annotations

from typing import Callable

from ..syntax import Belief, Formula, Impl, Neg, Strategy

__all__ = [
    "SCHEMAS", "CORE_SCHEMAS", "UnknownSchemaError", "match_axiom", "iff", "EMPTY",
    "truth", "negative_introspection", "distributivity", "trust",
    "monotonicity_b", "monotonicity_s", "cooperation", "strategic_introspection",
    "belief_in_unavoidability", "public_belief", "generalized_public_belief",
]

EMPTY: frozenset[str] = frozenset()


class UnknownSchemaError(KeyError):
    pass


def iff(a: Formula, b: Formula) -> Formula:
    """Desugared biconditional: !((a -> b) -> !(b -> a))."""
    return Neg(Impl(Impl(a, b), Neg(Impl(b, a))))


def box(coalition, trust, data, body) -> Strategy:
    """Single-trust strategy modality."""
    return Strategy(frozenset(coalition), frozenset(trust), frozenset(trust), frozenset(data), body)


def belief(trust, data, body) -> Belief:
    return Belief(frozenset(trust), frozenset(data), body)


# --- builders --------------------------------------------------------------

def truth(data, phi):
    return Impl(belief(EMPTY, data, phi), phi)


def negative_introspection(trust_set, data, phi):
    b = belief(trust_set, data, phi)
    return Impl(Neg(b), belief(EMPTY, data, Neg(b)))


def distributivity(trust_set, data, phi, psi):
    return Impl(
        belief(trust_set, data, Impl(phi, psi)),
        Impl(belief(trust_set, data, phi), belief(trust_set, data, psi)),
    )


def trust(trust_set, data, other, phi):
    return belief(trust_set, data, Impl(belief(trust_set, other, phi), phi))


def monotonicity_b(trust_set, data, trust_big, data_big, phi):
    return Impl(belief(trust_set, data, phi), belief(trust_big, data_big, phi))


def monotonicity_s(coalition, trust_set, data, coalition_big, trust_big, data_big, phi):
    return Impl(box(coalition, trust_set, data, phi), box(coalition_big, trust_big, data_big, phi))


def cooperation(c, d, trust_set, data, phi, psi):
    return Impl(
        box(c, trust_set, data, Impl(phi, psi)),
        Impl(box(d, trust_set, data, phi), box(frozenset(c) | frozenset(d), trust_set, data, psi)),
    )


def strategic_introspection(coalition, trust_set, data, phi):
    s = box(coalition, trust_set, data, phi)
    return iff(s, belief(trust_set, data, s))


def belief_in_unavoidability(trust_set, data, other, phi):
    return Impl(belief(trust_set, data, box(EMPTY, trust_set, other, phi)), box(EMPTY, trust_set, data, phi))


def public_belief(trust_set, phi):
    return Impl(belief(trust_set, EMPTY, phi), box(EMPTY, trust_set, EMPTY, phi))


def generalized_public_belief(trust_set, phi):
    """Public belief for the two-superscript modality: ex ante nothing, ex post T."""
    return Impl(
        belief(trust_set, EMPTY, phi),
        Strategy(EMPTY, EMPTY, frozenset(trust_set), EMPTY, phi),
    )


# --- matchers --------------------------------------------------------------

def _is_box(f) -> bool:
    return isinstance(f, Strategy) and f.ante == f.post


def _m_truth(f):
    return isinstance(f, Impl) and isinstance(f.lhs, Belief) and f == truth(f.lhs.data, f.lhs.body)


def _m_negative_introspection(f):
    if not (isinstance(f, Impl) and isinstance(f.lhs, Neg) and isinstance(f.lhs.body, Belief)):
        return False
    b = f.lhs.body
    return f == negative_introspection(b.trust, b.data, b.body)


def _m_distributivity(f):
    if not (isinstance(f, Impl) and isinstance(f.lhs, Belief) and isinstance(f.lhs.body, Impl)):
        return False
    b = f.lhs
    return f == distributivity(b.trust, b.data, b.body.lhs, b.body.rhs)


def _m_trust(f):
    if not (isinstance(f, Belief) and isinstance(f.body, Impl) and isinstance(f.body.lhs, Belief)):
        return False
    inner = f.body.lhs
    return f == trust(f.trust, f.data, inner.data, inner.body)


def _m_monotonicity_b(f):
    if not (isinstance(f, Impl) and isinstance(f.lhs, Belief) and isinstance(f.rhs, Belief)):
        return False
    a, b = f.lhs, f.rhs
    return a.body == b.body and a.trust <= b.trust and a.data <= b.data


def _m_monotonicity_s(f):
    if not (isinstance(f, Impl) and _is_box(f.lhs) and _is_box(f.rhs)):
        return False
    a, b = f.lhs, f.rhs
    return (
        a.body == b.body
        and a.coalition <= b.coalition
        and a.ante <= b.ante
        and a.data <= b.data
    )


def _m_cooperation(f):
    if not (isinstance(f, Impl) and _is_box(f.lhs) and isinstance(f.lhs.body, Impl)):
        return False
    if not (isinstance(f.rhs, Impl) and _is_box(f.rhs.lhs)):
        return False
    c, d = f.lhs.coalition, f.rhs.lhs.coalition
    if c & d:
        return False
    return f == cooperation(c, d, f.lhs.ante, f.lhs.data, f.lhs.body.lhs, f.lhs.body.rhs)


def _m_strategic_introspection(f):
    # !((s -> B s) -> !(B s -> s))
    try:
        s = f.body.lhs.lhs
    except AttributeError:
        return False
    return _is_box(s) and f == strategic_introspection(s.coalition, s.ante, s.data, s.body)


def _m_belief_in_unavoidability(f):
    if not (isinstance(f, Impl) and isinstance(f.lhs, Belief) and _is_box(f.lhs.body)):
        return False
    b = f.lhs
    return f == belief_in_unavoidability(b.trust, b.data, b.body.data, b.body.body)


def _m_public_belief(f):
    return isinstance(f, Impl) and isinstance(f.lhs, Belief) and f == public_belief(f.lhs.trust, f.lhs.body)


def _m_generalized_public_belief(f):
    return (
        isinstance(f, Impl)
        and isinstance(f.lhs, Belief)
        and f == generalized_public_belief(f.lhs.trust, f.lhs.body)
    )


SCHEMAS: dict[str, Callable[[Formula], bool]] = {
    "Truth": _m_truth,
    "NegativeIntrospection": _m_negative_introspection,
    "Distributivity": _m_distributivity,
    "Trust": _m_trust,
    "MonotonicityB": _m_monotonicity_b,
    "MonotonicityS": _m_monotonicity_s,
    "Cooperation": _m_cooperation,
    "StrategicIntrospection": _m_strategic_introspection,
    "BeliefInUnavoidability": _m_belief_in_unavoidability,
    "PublicBelief": _m_public_belief,
    "GeneralizedPublicBelief": _m_generalized_public_belief,
}

# the axiom system proper; GeneralizedPublicBelief is opt-in
CORE_SCHEMAS = tuple(name for name in SCHEMAS if name != "GeneralizedPublicBelief")


def match_axiom(f: Formula, schema: str) -> bool:
    """Whether ``f`` is an instance of the named schema (side conditions included)."""
    try:
        matcher = SCHEMAS[schema]
    except KeyError:
        raise UnknownSchemaError(f"unknown schema {schema!r}") from None
    return matcher(f)
