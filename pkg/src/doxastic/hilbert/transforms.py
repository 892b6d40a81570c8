"""Derivation-to-derivation transformers: deduction, B-lifting, [∅]-lifting."""

from __future__ import annotations

from typing import Iterable

from ..syntax import Formula, Impl
from . import schemas as ax
from .derivation import Derivation, ProofBuilder, check_derivation, dependencies

__all__ = [
    "PreconditionError", "deduction_transform", "discharge_all",
    "b_lift_transform", "box_lift_transform",
]


class PreconditionError(ValueError):
    pass


def _require_valid(d: Derivation) -> None:
    report = check_derivation(d, allow_generalized=True)
    if not report:
        raise PreconditionError(f"input derivation is {report}")


def deduction_transform(d: Derivation, phi: Formula) -> Derivation:
    """Turn a derivation of ``F, phi |- psi`` into one of ``F |- phi -> psi``.

    Every occurrence of ``phi`` among the hypotheses is discharged.
    """
    _require_valid(d)
    if phi not in d.hypotheses:
        raise PreconditionError("formula is not among the hypotheses")
    rest = [h for h in d.hypotheses if h != phi]
    new_index = {}
    for i, h in enumerate(d.hypotheses):
        if h != phi:
            new_index[i] = rest.index(h)

    out = ProofBuilder(rest)
    deps = dependencies(d)
    copied: dict[int, int] = {}   # theorem line k -> its copy
    implied: dict[int, int] = {}  # line k -> line proving phi -> psi_k
    for k, ln in enumerate(d.lines, start=1):
        psi = ln.formula
        if not deps[k - 1]:
            # a theorem: keep it, then weaken
            copied[k] = out.copy(ln, copied)
            t = out.taut(Impl(psi, Impl(phi, psi)))
            implied[k] = out.mp(copied[k], t)
        elif ln.rule == "Hyp" and psi == phi:
            implied[k] = out.taut(Impl(phi, phi))
        elif ln.rule == "Hyp":
            h = out.hyp(new_index[ln.index])
            t = out.taut(Impl(psi, Impl(phi, psi)))
            implied[k] = out.mp(h, t)
        else:
            i, j = ln.premises
            psi_i = d.lines[i - 1].formula
            t = out.taut(Impl(
                Impl(phi, psi_i),
                Impl(Impl(phi, Impl(psi_i, psi)), Impl(phi, psi)),
            ))
            step = out.mp(implied[i], t)
            implied[k] = out.mp(implied[j], step)
    return out.build()


def _distinct(items: Iterable[Formula]) -> list[Formula]:
    return list(dict.fromkeys(items))


def discharge_all(d: Derivation) -> tuple[Derivation, list[Formula]]:
    """Discharge every hypothesis: ``|- h1 -> (h2 -> ... -> psi)``."""
    hyps = _distinct(d.hypotheses)
    for h in reversed(hyps):
        d = deduction_transform(d, h)
    return d, hyps


def _peel(out: ProofBuilder, current: int, hyps: list[Formula], split_schema: str, split) -> int:
    """Strip ``wrap(h1 -> rest)`` down to ``wrap(psi)`` using the lifted hypotheses."""
    for i in range(len(hyps)):
        inner = out.formula(current).body
        a = out.axiom(split_schema, split(inner.lhs, inner.rhs))
        step = out.mp(current, a)
        hyp_line = out.hyp(i)
        current = out.mp(hyp_line, step)
    return current


def b_lift_transform(d: Derivation, trust, data) -> Derivation:
    """From ``phi1..phin |- psi`` build ``B^T_X phi1..B^T_X phin |- B^T_X psi``."""
    trust, data = frozenset(trust), frozenset(data)
    _require_valid(d)
    closed, hyps = discharge_all(d)

    def wrap(f):
        return ax.belief(trust, data, f)

    out = ProofBuilder([wrap(h) for h in hyps])
    renumber: dict[int, int] = {}
    for k, ln in enumerate(closed.lines, start=1):
        renumber[k] = out.copy(ln, renumber)
    chi = closed.conclusion
    nec = out.nec(renumber[len(closed.lines)])
    mono = out.axiom("MonotonicityB", ax.monotonicity_b(ax.EMPTY, ax.EMPTY, trust, data, chi))
    current = out.mp(nec, mono)
    _peel(out, current, hyps, "Distributivity",
          lambda p, q: ax.distributivity(trust, data, p, q))
    return out.build()


def box_lift_transform(d: Derivation, trust, data) -> Derivation:
    """From ``phi1..phin |- psi`` build ``[]^T_X phi1..[]^T_X phin |- []^T_X psi``."""
    trust, data = frozenset(trust), frozenset(data)
    _require_valid(d)
    closed, hyps = discharge_all(d)

    def wrap(f):
        return ax.box(ax.EMPTY, trust, data, f)

    out = ProofBuilder([wrap(h) for h in hyps])
    renumber: dict[int, int] = {}
    for k, ln in enumerate(closed.lines, start=1):
        renumber[k] = out.copy(ln, renumber)
    chi = closed.conclusion
    # derived rule: from |- chi infer |- []^T_X chi
    nec = out.nec(renumber[len(closed.lines)])
    pb = out.axiom("PublicBelief", ax.public_belief(ax.EMPTY, chi))
    boxed = out.mp(nec, pb)
    mono = out.axiom("MonotonicityS", ax.monotonicity_s(ax.EMPTY, ax.EMPTY, ax.EMPTY, ax.EMPTY, trust, data, chi))
    current = out.mp(boxed, mono)
    _peel(out, current, hyps, "Cooperation",
          lambda p, q: ax.cooperation(ax.EMPTY, ax.EMPTY, trust, data, p, q))
    return out.build()
