"""Finite games: states with data-variable values, trustworthiness, a mechanism.

Indistinguishability is stored as opaque value tags: two states are
indistinguishable by variable ``x`` iff they carry the same tag for ``x``.
Mechanism entries carry per-actor action patterns; an actor missing from a
pattern (or mapped to ``"*"``) matches any action.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Optional

__all__ = [
    "GameError", "SchemaError", "UndeclaredNameError", "DuplicateStateError",
    "EmptyActionSetError", "UnknownNameError",
    "ActionProfile", "State", "MechanismEntry", "Game",
    "load_game", "load_game_file", "dump_game", "indist", "successors",
]

WILDCARD = "*"


class GameError(ValueError):
    pass


class SchemaError(GameError):
    pass


class UndeclaredNameError(GameError):
    pass


class DuplicateStateError(GameError):
    pass


class EmptyActionSetError(GameError):
    pass


class UnknownNameError(GameError, KeyError):
    """A query named a state, variable or actor the game does not declare."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class ActionProfile:
    """An assignment of one action to each actor of a coalition."""

    items: tuple[tuple[str, str], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, str] | None = None, **kw: str) -> "ActionProfile":
        merged = dict(mapping or {}, **kw)
        return cls(tuple(sorted(merged.items())))

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.items)

    def as_dict(self) -> dict[str, str]:
        return dict(self.items)

    def __getitem__(self, actor: str) -> str:
        for a, act in self.items:
            if a == actor:
                return act
        raise KeyError(actor)

    def __len__(self) -> int:
        return len(self.items)

    def agrees_on(self, other: "ActionProfile", coalition: Iterable[str]) -> bool:
        """``self =_C other``."""
        mine, theirs = self.as_dict(), other.as_dict()
        return all(mine[a] == theirs[a] for a in coalition)

    def __str__(self) -> str:
        return ", ".join(f"{a}={act}" for a, act in self.items) or "(empty profile)"


@dataclass(frozen=True)
class State:
    name: str
    values: tuple[tuple[str, str], ...]
    trustworthy: frozenset[str] = frozenset()
    atoms: frozenset[str] = frozenset()

    def value(self, var: str) -> str:
        return dict(self.values)[var]


@dataclass(frozen=True)
class MechanismEntry:
    source: str
    pattern: tuple[tuple[str, str], ...]
    target: str

    def action_for(self, actor: str) -> Optional[str]:
        """The fixed action for ``actor``, or None for a wildcard."""
        for a, act in self.pattern:
            if a == actor:
                return act
        return None


@dataclass(frozen=True)
class Game:
    variables: tuple[str, ...]
    actors: tuple[str, ...]
    actions: tuple[str, ...]
    states: tuple[State, ...] = ()
    mechanism: tuple[MechanismEntry, ...] = ()

    def __post_init__(self):
        _validate(self)

    @cached_property
    def index(self) -> dict[str, int]:
        return {s.name: i for i, s in enumerate(self.states)}

    @cached_property
    def _tags(self) -> list[dict[str, str]]:
        return [dict(s.values) for s in self.states]

    @cached_property
    def entries_from(self) -> dict[str, tuple[MechanismEntry, ...]]:
        out: dict[str, list[MechanismEntry]] = {s.name: [] for s in self.states}
        for e in self.mechanism:
            out[e.source].append(e)
        return {k: tuple(v) for k, v in out.items()}

    def state(self, name: str) -> State:
        try:
            return self.states[self.index[name]]
        except KeyError:
            raise UnknownNameError(f"unknown state {name!r}") from None

    def tag_key(self, name: str, dataset: Iterable[str]) -> tuple[str, ...]:
        """Tuple of tags for ``dataset`` (sorted); equal keys means indistinguishable."""
        tags = self._tags[self.index[name]]
        return tuple(tags[x] for x in sorted(dataset))

    def check_variables(self, names: Iterable[str]) -> None:
        missing = set(names) - set(self.variables)
        if missing:
            raise UnknownNameError(f"unknown variable(s) {sorted(missing)}")

    def check_actors(self, names: Iterable[str]) -> None:
        missing = set(names) - set(self.actors)
        if missing:
            raise UnknownNameError(f"unknown actor(s) {sorted(missing)}")


def _validate(g: Game) -> None:
    if not g.actions:
        raise EmptyActionSetError("the action set must be nonempty")
    for kind, names in (("variable", g.variables), ("actor", g.actors), ("action", g.actions)):
        if len(set(names)) != len(names):
            raise SchemaError(f"duplicate {kind} declaration")
    if WILDCARD in g.actions:
        raise SchemaError(f"{WILDCARD!r} is reserved for wildcards")
    variables, actors, actions = set(g.variables), set(g.actors), set(g.actions)
    seen: set[str] = set()
    for s in g.states:
        if s.name in seen:
            raise DuplicateStateError(f"duplicate state name {s.name!r}")
        seen.add(s.name)
        keys = {k for k, _ in s.values}
        if keys - variables:
            raise UndeclaredNameError(f"state {s.name!r} values undeclared variable(s) {sorted(keys - variables)}")
        if variables - keys:
            raise SchemaError(f"state {s.name!r} gives no value for {sorted(variables - keys)}")
        if s.trustworthy - variables:
            raise UndeclaredNameError(
                f"state {s.name!r} trusts undeclared variable(s) {sorted(s.trustworthy - variables)}"
            )
    for i, e in enumerate(g.mechanism):
        for end in (e.source, e.target):
            if end not in seen:
                raise UndeclaredNameError(f"mechanism entry {i} references undeclared state {end!r}")
        for actor, act in e.pattern:
            if actor not in actors:
                raise UndeclaredNameError(f"mechanism entry {i} references undeclared actor {actor!r}")
            if act not in actions:
                raise UndeclaredNameError(f"mechanism entry {i} references undeclared action {act!r}")


# --- file format -----------------------------------------------------------

def _require(obj, keys: set[str], optional: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    unknown = set(obj) - keys - optional
    if unknown:
        raise SchemaError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = keys - set(obj)
    if missing:
        raise SchemaError(f"{where}: missing field(s) {sorted(missing)}")


def _names(obj, where: str) -> list[str]:
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise SchemaError(f"{where}: expected a list of strings")
    return obj


def load_game(document: str | bytes | Mapping) -> Game:
    """Build and validate a game from its JSON document (text or parsed)."""
    doc = json.loads(document) if isinstance(document, (str, bytes)) else document
    _require(doc, {"variables", "actors", "actions", "states"}, {"mechanism"}, "game")
    variables = _names(doc["variables"], "variables")
    actors = _names(doc["actors"], "actors")
    actions = _names(doc["actions"], "actions")
    if not actions:
        raise EmptyActionSetError("the action set must be nonempty")
    if not isinstance(doc["states"], list):
        raise SchemaError("states: expected a list")
    states = []
    for i, s in enumerate(doc["states"]):
        _require(s, {"name", "values"}, {"trustworthy", "atoms"}, f"states[{i}]")
        if not isinstance(s["values"], dict) or not all(isinstance(v, str) for v in s["values"].values()):
            raise SchemaError(f"states[{i}].values: expected an object of string tags")
        states.append(State(
            name=s["name"],
            values=tuple(sorted(s["values"].items())),
            trustworthy=frozenset(_names(s.get("trustworthy", []), f"states[{i}].trustworthy")),
            atoms=frozenset(_names(s.get("atoms", []), f"states[{i}].atoms")),
        ))
    entries = []
    for i, e in enumerate(doc.get("mechanism", [])):
        _require(e, {"from", "to"}, {"profile"}, f"mechanism[{i}]")
        profile = e.get("profile", {})
        if not isinstance(profile, dict):
            raise SchemaError(f"mechanism[{i}].profile: expected an object")
        pattern = tuple(sorted((a, act) for a, act in profile.items() if act != WILDCARD))
        entries.append(MechanismEntry(e["from"], pattern, e["to"]))
    return Game(tuple(variables), tuple(actors), tuple(actions), tuple(states), tuple(entries))


def load_game_file(path: str | Path) -> Game:
    return load_game(Path(path).read_text(encoding="utf-8"))


def dump_game(g: Game) -> dict:
    """Inverse of :func:`load_game`: a JSON-ready document."""
    return {
        "variables": list(g.variables),
        "actors": list(g.actors),
        "actions": list(g.actions),
        "states": [
            {
                "name": s.name,
                "values": dict(s.values),
                "trustworthy": sorted(s.trustworthy),
                "atoms": sorted(s.atoms),
            }
            for s in g.states
        ],
        "mechanism": [
            {"from": e.source, "profile": dict(e.pattern), "to": e.target} for e in g.mechanism
        ],
    }


# --- queries ---------------------------------------------------------------

def indist(g: Game, w: str, u: str, dataset: Iterable[str]) -> bool:
    """True iff ``w`` and ``u`` agree on every variable of ``dataset``."""
    dataset = frozenset(dataset)
    g.state(w), g.state(u)
    g.check_variables(dataset)
    return g.tag_key(w, dataset) == g.tag_key(u, dataset)


def entry_compatible(e: MechanismEntry, constraint: ActionProfile) -> bool:
    """Some complete profile agreeing with ``constraint`` matches ``e``."""
    for actor, act in constraint.items:
        fixed = e.action_for(actor)
        if fixed is not None and fixed != act:
            return False
    return True


def successors(g: Game, u: str, constraint: ActionProfile = ActionProfile()) -> Iterator[tuple[ActionProfile, str]]:
    """Lazily yield every ``(delta, v)`` with ``(u, delta, v)`` in M and ``delta =_C constraint``.

    Complete profiles are materialized one at a time; duplicates produced by
    overlapping entries are suppressed.
    """
    g.state(u)
    g.check_actors(constraint.domain)
    fixed = constraint.as_dict()
    seen: set[tuple[ActionProfile, str]] = set()
    for e in g.entries_from[u]:
        if not entry_compatible(e, constraint):
            continue
        choices = []
        for actor in sorted(g.actors):
            if actor in fixed:
                choices.append((fixed[actor],))
            else:
                act = e.action_for(actor)
                choices.append(g.actions if act is None else (act,))
        for combo in itertools.product(*choices):
            delta = ActionProfile(tuple(zip(sorted(g.actors), combo)))
            if (delta, e.target) not in seen:
                seen.add((delta, e.target))
                yield delta, e.target
