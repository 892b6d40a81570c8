"""Random games and formulas, and the soundness fuzzer.

Each (schema, trial) pair draws from its own ``random.Random`` seeded with
``"{seed}:{schema}:{trial}"``, so reports are reproducible and independent of
trial order.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import asdict, dataclass
from typing import Iterable, Optional

from .checker import Evaluator, evaluate_all
from .game import Game, dump_game, load_game
from .hilbert import schemas as ax
from .hilbert.schemas import match_axiom
from .syntax import (
    And, Atom, Belief, Bottom, Formula, Iff, Impl, Know, Neg, Or, Strategy, Top,
    expand_sugar, to_text,
)

__all__ = [
    "GenConfig", "ATOM_POOL", "gen_game", "gen_formula", "fuzz_soundness",
    "FUZZ_TARGETS", "NEGATIVE_CONTROL", "single_trust_strategy_holds",
]

ATOM_POOL = ("p", "q", "r")
NEGATIVE_CONTROL = "CorruptedTruth"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_states: int = 6
    max_variables: int = 3
    max_actors: int = 2
    max_actions: int = 3
    max_mech_entries: int = 8
    max_formula_depth: int = 4
    trials: int = 200

    def __post_init__(self):
        for name in ("max_states", "max_variables", "max_actors", "max_actions", "max_formula_depth"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.max_mech_entries < 0 or self.trials < 0:
            raise ValueError("max_mech_entries and trials must be non-negative")


def _subset(rng: random.Random, universe: Iterable[str]) -> frozenset[str]:
    return frozenset(x for x in sorted(universe) if rng.random() < 0.5)


def _superset(rng: random.Random, base: frozenset[str], universe: Iterable[str]) -> frozenset[str]:
    return base | _subset(rng, universe)


def gen_game(cfg: GenConfig, rng: random.Random) -> Game:
    """A random valid game with at least one state."""
    n_states = rng.randint(1, cfg.max_states)
    variables = [f"x{i}" for i in range(rng.randint(1, cfg.max_variables))]
    actors = [f"a{i}" for i in range(rng.randint(1, cfg.max_actors))]
    actions = [f"s{i}" for i in range(rng.randint(1, cfg.max_actions))]
    names = [f"w{i}" for i in range(n_states)]
    tags = {}
    for x in variables:
        k = rng.randint(1, n_states)  # number of distinct values
        tags[x] = [f"c{rng.randrange(k)}" for _ in names]
    states = [
        {
            "name": w,
            "values": {x: tags[x][i] for x in variables},
            "trustworthy": sorted(_subset(rng, variables)),
            "atoms": sorted(_subset(rng, ATOM_POOL)),
        }
        for i, w in enumerate(names)
    ]
    mechanism = []
    for _ in range(rng.randint(0, cfg.max_mech_entries)):
        profile = {a: rng.choice(actions) for a in actors if rng.random() >= 1 / 3}
        mechanism.append({"from": rng.choice(names), "profile": profile, "to": rng.choice(names)})
    return load_game({
        "variables": variables, "actors": actors, "actions": actions,
        "states": states, "mechanism": mechanism,
    })


_KINDS = ("atom", "neg", "impl", "belief", "strategy", "and", "or", "iff", "know", "top", "bottom")


def gen_formula(cfg: GenConfig, g: Game, rng: random.Random, depth: Optional[int] = None) -> Formula:
    """Uniform recursive sample over the constructors and sugar; names come from ``g``."""
    if depth is None:
        depth = cfg.max_formula_depth
    if depth <= 0:
        return Atom(rng.choice(ATOM_POOL))
    kind = rng.choice(_KINDS)
    sub = lambda: gen_formula(cfg, g, rng, depth - 1)  # noqa: E731
    if kind == "atom":
        return Atom(rng.choice(ATOM_POOL))
    if kind == "neg":
        return Neg(sub())
    if kind in ("impl", "and", "or", "iff"):
        cls = {"impl": Impl, "and": And, "or": Or, "iff": Iff}[kind]
        return cls(sub(), sub())
    if kind == "belief":
        return Belief(_subset(rng, g.variables), _subset(rng, g.variables), sub())
    if kind == "know":
        return Know(_subset(rng, g.variables), sub())
    if kind == "strategy":
        ante = _subset(rng, g.variables)
        post = ante if rng.random() < 0.5 else _subset(rng, g.variables)
        return Strategy(_subset(rng, g.actors), ante, post, _subset(rng, g.variables), sub())
    return Top() if kind == "top" else Bottom()


# --- schema instance generators -------------------------------------------

def _disjoint_pair(rng: random.Random, actors) -> tuple[frozenset[str], frozenset[str]]:
    c, d = set(), set()
    for a in sorted(actors):
        slot = rng.randrange(3)
        (c if slot == 0 else d if slot == 1 else set()).add(a)
    return frozenset(c), frozenset(d)


def _instance(name: str, cfg: GenConfig, g: Game, rng: random.Random) -> Formula:
    depth = max(cfg.max_formula_depth - 2, 0)
    phi = expand_sugar(gen_formula(cfg, g, rng, depth))
    psi = expand_sugar(gen_formula(cfg, g, rng, depth))
    V, A = g.variables, g.actors
    T, X, Y = _subset(rng, V), _subset(rng, V), _subset(rng, V)
    C = _subset(rng, A)
    if name == "Truth":
        return ax.truth(X, phi)
    if name == "NegativeIntrospection":
        return ax.negative_introspection(T, X, phi)
    if name == "Distributivity":
        return ax.distributivity(T, X, phi, psi)
    if name == "Trust":
        return ax.trust(T, X, Y, phi)
    if name == "MonotonicityB":
        return ax.monotonicity_b(T, X, _superset(rng, T, V), _superset(rng, X, V), phi)
    if name == "MonotonicityS":
        return ax.monotonicity_s(C, T, X, _superset(rng, C, A), _superset(rng, T, V), _superset(rng, X, V), phi)
    if name == "Cooperation":
        c, d = _disjoint_pair(rng, A)
        return ax.cooperation(c, d, T, X, phi, psi)
    if name == "StrategicIntrospection":
        return ax.strategic_introspection(C, T, X, phi)
    if name == "BeliefInUnavoidability":
        return ax.belief_in_unavoidability(T, X, Y, phi)
    if name == "PublicBelief":
        return ax.public_belief(T, phi)
    if name == "GeneralizedPublicBelief":
        return ax.generalized_public_belief(T, phi)
    if name == "PositiveIntrospection":
        b = ax.belief(T, X, phi)
        return Impl(b, ax.belief(ax.EMPTY, X, b))
    if name == "KnowledgeIsEmptyTrustBelief":
        return expand_sugar(Iff(Know(X, phi), Belief(frozenset(), X, phi)))
    if name == NEGATIVE_CONTROL:
        # truth with a nonempty trust superscript; not valid
        return Impl(ax.belief(T | {rng.choice(V)}, X, phi), phi)
    raise KeyError(name)


def single_trust_strategy_holds(g: Game, w: str, coalition, trust, data, ext: frozenset[str]) -> bool:
    """The one-superscript strategy clause, read literally over complete profiles.

    ``ext`` is the set of states where the goal holds.
    """
    members = sorted(coalition)
    actors = list(g.actors)
    for choice in itertools.product(g.actions, repeat=len(members)):
        s = dict(zip(members, choice))
        ok = True
        for u in g.states:
            if not (g.tag_key(w, data) == g.tag_key(u.name, data) and trust <= u.trustworthy):
                continue
            for combo in itertools.product(g.actions, repeat=len(actors)):
                delta = dict(zip(actors, combo))
                if any(delta[a] != s[a] for a in members):
                    continue
                for e in g.entries_from[u.name]:
                    if all(delta[a] == act for a, act in e.pattern) and trust <= g.state(e.target).trustworthy:
                        if e.target not in ext:
                            ok = False
        if ok:
            return True
    return False


def _collapse_failures(cfg: GenConfig, g: Game, rng: random.Random) -> tuple[str, list[str]]:
    """[C]{T;T}{X} phi agrees with the single-trust clause at every state."""
    phi = expand_sugar(gen_formula(cfg, g, rng, max(cfg.max_formula_depth - 2, 0)))
    C, T, X = _subset(rng, g.actors), _subset(rng, g.variables), _subset(rng, g.variables)
    f = Strategy(C, T, T, X, phi)
    ev = Evaluator(g)
    general, ext = ev.extension(f), ev.extension(phi)
    bad = [
        s.name for s in g.states
        if (s.name in general) != single_trust_strategy_holds(g, s.name, C, T, X, ext)
    ]
    return to_text(f), bad


AXIOM_TARGETS = (
    "Truth", "NegativeIntrospection", "Distributivity", "Trust", "MonotonicityB", "MonotonicityS",
    "Cooperation", "StrategicIntrospection", "BeliefInUnavoidability", "PublicBelief",
    "GeneralizedPublicBelief",
)
DERIVED_TARGETS = ("PositiveIntrospection", "TwoSuperscriptCollapse", "KnowledgeIsEmptyTrustBelief")
FUZZ_TARGETS = AXIOM_TARGETS + DERIVED_TARGETS


def _trial(name: str, cfg: GenConfig, trial: int) -> Optional[dict]:
    rng = random.Random(f"{cfg.seed}:{name}:{trial}")
    g = gen_game(cfg, rng)
    if name == "TwoSuperscriptCollapse":
        text, bad = _collapse_failures(cfg, g, rng)
        reason = "general and single-trust readings disagree"
    else:
        f = _instance(name, cfg, g, rng)
        text = to_text(f)
        if name in AXIOM_TARGETS and not match_axiom(f, name):
            return {"trial": trial, "reason": "generated instance rejected by matcher",
                    "instance": text, "states": [], "game": dump_game(g)}
        verdicts = evaluate_all(g, f)
        bad = [w for w, ok in verdicts.items() if not ok]
        reason = "instance false"
    if not bad:
        return None
    return {"trial": trial, "reason": reason, "instance": text, "states": bad, "game": dump_game(g)}


def fuzz_soundness(cfg: GenConfig, schemas: Optional[Iterable[str]] = None) -> dict:
    """Check schema instances and derived theorems at every state of random games.

    ``schemas`` defaults to all of :data:`FUZZ_TARGETS`; the negative control
    :data:`NEGATIVE_CONTROL` must be asked for by name.
    """
    names = list(FUZZ_TARGETS if schemas is None else schemas)
    for n in names:
        if n not in FUZZ_TARGETS and n != NEGATIVE_CONTROL:
            raise KeyError(f"unknown fuzz target {n!r}")
    results = []
    if cfg.trials > 0:
        for n in names:
            failures = [f for t in range(cfg.trials) if (f := _trial(n, cfg, t)) is not None]
            results.append({"schema": n, "trials": cfg.trials, "failures": failures})
    return {
        "config": asdict(cfg),
        "results": results,
        "total_failures": sum(len(r["failures"]) for r in results),
    }
