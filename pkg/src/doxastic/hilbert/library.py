"""Bundled derivations, parameterized by datasets, coalitions and a formula."""

from __future__ import annotations

from typing import Callable

from ..syntax import Atom, Formula, Impl, Neg
from . import schemas as ax
from .derivation import Derivation, ProofBuilder

__all__ = [
    "positive_introspection", "strategic_introspection_plus", "s_necessitation",
    "builtin_proofs",
]


def _positive_introspection_lines(out: ProofBuilder, trust, data, phi: Formula) -> int:
    """Append a proof of ``B^T_X phi -> B^{}_X B^T_X phi``; return its line."""
    beta = ax.belief(trust, data, phi)
    nb = ax.belief(ax.EMPTY, data, Neg(beta))  # B^{}_X !beta
    k_not_nb = ax.belief(ax.EMPTY, data, Neg(nb))
    k_beta = ax.belief(ax.EMPTY, data, beta)

    truth = out.axiom("Truth", ax.truth(data, Neg(beta)))
    contra = out.taut(Impl(Impl(nb, Neg(beta)), Impl(beta, Neg(nb))))
    l3 = out.mp(truth, contra)
    ni = out.axiom("NegativeIntrospection", ax.negative_introspection(ax.EMPTY, data, Neg(beta)))
    chain = out.taut(Impl(
        Impl(beta, Neg(nb)),
        Impl(Impl(Neg(nb), k_not_nb), Impl(beta, k_not_nb)),
    ))
    l6 = out.mp(l3, chain)
    eq2 = out.mp(ni, l6)  # beta -> B{}X !nb

    ni2 = out.axiom("NegativeIntrospection", ax.negative_introspection(trust, data, phi))
    contra2 = out.taut(Impl(Impl(Neg(beta), nb), Impl(Neg(nb), beta)))
    l10 = out.mp(ni2, contra2)
    nec = out.nec(l10)
    mono = out.axiom("MonotonicityB", ax.monotonicity_b(ax.EMPTY, ax.EMPTY, ax.EMPTY, data, Impl(Neg(nb), beta)))
    l13 = out.mp(nec, mono)
    dist = out.axiom("Distributivity", ax.distributivity(ax.EMPTY, data, Neg(nb), beta))
    l15 = out.mp(l13, dist)
    chain2 = out.taut(Impl(
        Impl(beta, k_not_nb),
        Impl(Impl(k_not_nb, k_beta), Impl(beta, k_beta)),
    ))
    l17 = out.mp(eq2, chain2)
    return out.mp(l15, l17)


def positive_introspection(trust=(), data=(), phi: Formula = Atom("p")) -> Derivation:
    """|- B^T_X phi -> B^{}_X B^T_X phi."""
    out = ProofBuilder()
    _positive_introspection_lines(out, frozenset(trust), frozenset(data), phi)
    return out.build()


def strategic_introspection_plus(coalition=(), trust=(), data=(), phi: Formula = Atom("p")) -> Derivation:
    """|- [C]^T_X phi -> B^{}_X [C]^T_X phi."""
    trust, data = frozenset(trust), frozenset(data)
    out = ProofBuilder()
    sigma = ax.box(coalition, trust, data, phi)
    beta = ax.belief(trust, data, sigma)
    k_beta = ax.belief(ax.EMPTY, data, beta)
    k_sigma = ax.belief(ax.EMPTY, data, sigma)

    si = out.axiom("StrategicIntrospection", ax.strategic_introspection(coalition, trust, data, phi))
    back = out.mp(si, out.taut(Impl(ax.iff(sigma, beta), Impl(beta, sigma))))
    nec = out.nec(back)
    mono = out.axiom("MonotonicityB", ax.monotonicity_b(ax.EMPTY, ax.EMPTY, ax.EMPTY, data, Impl(beta, sigma)))
    lifted = out.mp(nec, mono)
    dist = out.axiom("Distributivity", ax.distributivity(ax.EMPTY, data, beta, sigma))
    step_a = out.mp(lifted, dist)  # B{}X beta -> B{}X sigma
    step_b = _positive_introspection_lines(out, trust, data, sigma)  # beta -> B{}X beta
    step_c = out.mp(si, out.taut(Impl(ax.iff(sigma, beta), Impl(sigma, beta))))  # sigma -> beta

    glue = out.taut(Impl(
        Impl(sigma, beta),
        Impl(Impl(beta, k_beta), Impl(Impl(k_beta, k_sigma), Impl(sigma, k_sigma))),
    ))
    g1 = out.mp(step_c, glue)
    g2 = out.mp(step_b, g1)
    out.mp(step_a, g2)
    return out.build()


def s_necessitation(trust=(), data=(), phi: Formula = Impl(Atom("p"), Atom("p"))) -> Derivation:
    """From the tautology ``phi`` derive |- [{}]^T_X phi."""
    trust, data = frozenset(trust), frozenset(data)
    out = ProofBuilder()
    base = out.taut(phi)
    nec = out.nec(base)
    boxed = out.mp(nec, out.axiom("PublicBelief", ax.public_belief(ax.EMPTY, phi)))
    mono = out.axiom(
        "MonotonicityS", ax.monotonicity_s(ax.EMPTY, ax.EMPTY, ax.EMPTY, ax.EMPTY, trust, data, phi)
    )
    out.mp(boxed, mono)
    return out.build()


def builtin_proofs() -> dict[str, Callable[..., Derivation]]:
    """Named derivation templates; call with concrete parameters to instantiate."""
    return {
        "positive_introspection": positive_introspection,
        "strategic_introspection_plus": strategic_introspection_plus,
        "s_necessitation": s_necessitation,
    }
