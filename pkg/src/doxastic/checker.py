"""Satisfaction of belief and doxastic-strategy formulas over a finite game.

The main evaluator computes, per subformula, the set of states where it holds
(one memo table per evaluation call).  Belief and strategy modalities are
decided per indistinguishability class: every state in an ``X``-class sees
the same set of candidate states ``u``, so the verdict and the witness are
shared by the whole class.

A strategy ``s`` for coalition ``C`` fails only through some mechanism entry
leaving a candidate ``u`` towards a post-trusted ``v`` where the goal is
false.  Such an entry can be hit by a complete profile agreeing with ``s`` iff
its pattern does not contradict ``s`` on ``C``, so no complete profile is ever
enumerated.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .game import ActionProfile, Game, MechanismEntry, UnknownNameError, entry_compatible
from .syntax import (
    Atom, Belief, Formula, Impl, Neg, Strategy, actors_of, expand_sugar, variables_of,
)

__all__ = [
    "DEFAULT_BUDGET", "BudgetExceeded", "CheckResult",
    "satisfies", "evaluate_all", "find_strategy", "check", "refute_profile",
    "naive_satisfies", "Evaluator",
]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CheckResult:
    verdict: bool
    witness: Optional[ActionProfile] = None
    counterexample: Optional[tuple[str, ActionProfile, str]] = None


def _profiles(g: Game, coalition: frozenset[str], budget: int):
    """All profiles of ``coalition``: sorted actors, declared action order."""
    members = sorted(coalition)
    if len(g.actions) ** len(members) > budget:
        raise BudgetExceeded(
            f"{len(g.actions)}^{len(members)} coalition profiles exceed the budget of {budget}"
        )
    for combo in itertools.product(g.actions, repeat=len(members)):
        yield ActionProfile(tuple(zip(members, combo)))


def _check_names(g: Game, f: Formula) -> None:
    g.check_variables(variables_of(f))
    g.check_actors(actors_of(f))


class Evaluator:
    """Global model checking of core formulas with a per-instance memo table."""

    def __init__(self, game: Game, budget: int = DEFAULT_BUDGET):
        self.game = game
        self.budget = budget
        self.memo: dict[Formula, frozenset[str]] = {}
        self._witness: dict[tuple[Formula, tuple], Optional[ActionProfile]] = {}
        self._classes: dict[frozenset[str], dict[tuple, list[str]]] = {}

    def classes(self, dataset: frozenset[str]) -> dict[tuple, list[str]]:
        """Partition of the states by their tags on ``dataset``."""
        out = self._classes.get(dataset)
        if out is None:
            out = {}
            for s in self.game.states:
                out.setdefault(self.game.tag_key(s.name, dataset), []).append(s.name)
            self._classes[dataset] = out
        return out

    def extension(self, f: Formula) -> frozenset[str]:
        hit = self.memo.get(f)
        if hit is not None:
            return hit
        g = self.game
        if isinstance(f, Atom):
            out = frozenset(s.name for s in g.states if f.name in s.atoms)
        elif isinstance(f, Neg):
            out = frozenset(g.index) - self.extension(f.body)
        elif isinstance(f, Impl):
            out = (frozenset(g.index) - self.extension(f.lhs)) | self.extension(f.rhs)
        elif isinstance(f, Belief):
            good = self.extension(f.body)
            states: set[str] = set()
            for members in self.classes(f.data).values():
                seen = [u for u in members if f.trust <= g.state(u).trustworthy]
                if all(u in good for u in seen):
                    states.update(members)
            out = frozenset(states)
        elif isinstance(f, Strategy):
            states = set()
            for key, members in self.classes(f.data).items():
                if self.class_witness(f, key, members) is not None:
                    states.update(members)
            out = frozenset(states)
        else:
            raise TypeError(f"not a core formula: {f!r}")
        self.memo[f] = out
        return out

    def bad_entries(self, f: Strategy, members: list[str]) -> list[MechanismEntry]:
        """Entries from ante-trusted class members into post-trusted goal failures."""
        g = self.game
        good = self.extension(f.body)
        bad = []
        for u in members:
            if not f.ante <= g.state(u).trustworthy:
                continue
            for e in g.entries_from[u]:
                if f.post <= g.state(e.target).trustworthy and e.target not in good:
                    bad.append(e)
        return bad

    def class_witness(self, f: Strategy, key: tuple, members: list[str]) -> Optional[ActionProfile]:
        cache_key = (f, key)
        if cache_key in self._witness:
            return self._witness[cache_key]
        bad = self.bad_entries(f, members)
        found = None
        for s in _profiles(self.game, f.coalition, self.budget):
            if not any(entry_compatible(e, s) for e in bad):
                found = s
                break
        self._witness[cache_key] = found
        return found

    def witness(self, f: Strategy, w: str) -> Optional[ActionProfile]:
        key = self.game.tag_key(w, f.data)
        members = self.classes(f.data)[key]
        return self.class_witness(f, key, members)


def _prepare(g: Game, f: Formula) -> Formula:
    f = expand_sugar(f)
    _check_names(g, f)
    return f


def satisfies(g: Game, w: str, f: Formula, *, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``w`` satisfies ``f`` (sugar is expanded first)."""
    g.state(w)
    f = _prepare(g, f)
    return w in Evaluator(g, budget).extension(f)


def evaluate_all(g: Game, f: Formula, *, budget: int = DEFAULT_BUDGET) -> dict[str, bool]:
    f = _prepare(g, f)
    ext = Evaluator(g, budget).extension(f)
    return {s.name: s.name in ext for s in g.states}


def find_strategy(
    g: Game,
    w: str,
    coalition,
    ante,
    post,
    data,
    goal: Formula,
    *,
    budget: int = DEFAULT_BUDGET,
) -> Optional[ActionProfile]:
    """First profile (lexicographic) of ``coalition`` guaranteeing ``goal``, else None."""
    g.state(w)
    f = Strategy(frozenset(coalition), frozenset(ante), frozenset(post), frozenset(data), goal)
    f = _prepare(g, f)
    return Evaluator(g, budget).witness(f, w)


def refute_profile(
    g: Game, w: str, f: Strategy, profile: ActionProfile, *, budget: int = DEFAULT_BUDGET
) -> Optional[tuple[str, ActionProfile, str]]:
    """A mechanism triple ``(u, delta, v)`` showing ``profile`` does not work, else None."""
    g.state(w)
    f = _prepare(g, f)
    if not isinstance(f, Strategy):
        raise TypeError("refute_profile needs a strategy formula")
    if profile.domain != f.coalition:
        raise UnknownNameError(f"profile covers {sorted(profile.domain)}, coalition is {sorted(f.coalition)}")
    ev = Evaluator(g, budget)
    members = ev.classes(f.data)[g.tag_key(w, f.data)]
    fixed = profile.as_dict()
    for e in ev.bad_entries(f, members):
        if entry_compatible(e, profile):
            delta = ActionProfile(tuple(
                (a, fixed.get(a) or e.action_for(a) or g.actions[0]) for a in sorted(g.actors)
            ))
            return e.source, delta, e.target
    return None


def check(
    g: Game, w: str, f: Formula, *, profile: Optional[ActionProfile] = None, budget: int = DEFAULT_BUDGET
) -> CheckResult:
    """Verdict plus a witness (true strategy formulas) or a counterexample triple.

    The counterexample is only produced when ``profile`` is given and fails.
    """
    g.state(w)
    core = _prepare(g, f)
    ev = Evaluator(g, budget)
    verdict = w in ev.extension(core)
    if not isinstance(core, Strategy):
        return CheckResult(verdict)
    witness = ev.witness(core, w) if verdict else None
    counter = refute_profile(g, w, core, profile, budget=budget) if profile is not None else None
    return CheckResult(verdict, witness, counter)


# --- independent oracle ----------------------------------------------------

def naive_satisfies(g: Game, w: str, f: Formula) -> bool:
    """Direct, unmemoized reading of the satisfaction clauses.

    Enumerates every complete profile and every state; shares no code with
    :class:`Evaluator` beyond the data structures.
    """
    g.state(w)
    f = _prepare(g, f)
    states = [s.name for s in g.states]
    tags = {s.name: dict(s.values) for s in g.states}
    trust = {s.name: s.trustworthy for s in g.states}
    atoms = {s.name: s.atoms for s in g.states}
    actors = list(g.actors)
    complete = [dict(zip(actors, c)) for c in itertools.product(g.actions, repeat=len(actors))]

    def same(a, b, dataset):
        return all(tags[a][x] == tags[b][x] for x in dataset)

    def in_m(u, delta, v):
        for e in g.mechanism:
            if e.source == u and e.target == v and all(delta[a] == act for a, act in e.pattern):
                return True
        return False

    def sat(x, h):
        if isinstance(h, Atom):
            return h.name in atoms[x]
        if isinstance(h, Neg):
            return not sat(x, h.body)
        if isinstance(h, Impl):
            return (not sat(x, h.lhs)) or sat(x, h.rhs)
        if isinstance(h, Belief):
            return all(sat(u, h.body) for u in states if same(x, u, h.data) and h.trust <= trust[u])
        if isinstance(h, Strategy):
            members = sorted(h.coalition)
            for choice in itertools.product(g.actions, repeat=len(members)):
                s = dict(zip(members, choice))
                if all(
                    sat(v, h.body)
                    for u in states
                    if same(x, u, h.data) and h.ante <= trust[u]
                    for delta in complete
                    if all(delta[a] == s[a] for a in members)
                    for v in states
                    if h.post <= trust[v] and in_m(u, delta, v)
                ):
                    return True
            return False
        raise TypeError(f"not a core formula: {h!r}")

    return sat(w, f)
