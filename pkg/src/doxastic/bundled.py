"""Bundled example games and proofs.

``voting5.game`` is produced by :func:`voting_game`.  Pre-vote states carry a
newspaper count of planned yes (``yea``) and no (``nay``) votes.  When a count
is trustworthy in a state, the members it describes really vote that way, so
the mechanism has no transition in which they deviate.  Each vote leads to an
honest tally (``n`` equals the real count and is trustworthy) or to any
dishonest tally (``n`` arbitrary, untrustworthy).  A regulation is approved
iff the announced ``n`` reaches the threshold.
"""

from __future__ import annotations

import itertools
import json
from importlib import resources
from pathlib import Path

from .game import Game, dump_game, load_game
from .hilbert import dump_proof, positive_introspection
from .syntax import Atom

__all__ = ["patriot_game", "voting_game", "lemma1_proof", "bundled_files", "write_examples"]

YES, NO = "yes", "no"


def patriot_game() -> Game:
    return load_game(resources.files("doxastic.data").joinpath("patriot.game").read_text())


def voting_game(
    yes_block=("bob", "cathy"),
    no_block=("dave", "eve"),
    undecided=("alice",),
    threshold: int = 3,
) -> Game:
    members = sorted(set(yes_block) | set(no_block) | set(undecided))
    size = len(members)
    yea, nay = str(len(yes_block)), str(len(no_block))
    everyone_else = tuple(m for m in members if m not in undecided)
    pre = [
        # name, yea tag, nay tag, trustworthy, members forced to yes, members forced to no
        ("w", yea, nay, ["nay", "yea"], yes_block, no_block),
        ("w_yea_false", yea, nay, ["nay"], (), no_block),
        ("w_nay_false", yea, nay, ["yea"], yes_block, ()),
        ("z", "0", str(len(everyone_else)), ["nay", "yea"], (), everyone_else),
    ]
    states = []
    for name, y, n_, trusted, _, _ in pre:
        states.append({"name": name, "values": {"yea": y, "nay": n_, "n": "-"},
                       "trustworthy": trusted, "atoms": []})
    for k in range(size + 1):
        outcome = ["approved"] if k >= threshold else ["rejected"]
        states.append({"name": f"h{k}", "values": {"yea": "-", "nay": "-", "n": str(k)},
                       "trustworthy": ["n", "nay", "yea"], "atoms": outcome})
        states.append({"name": f"d{k}", "values": {"yea": "-", "nay": "-", "n": str(k)},
                       "trustworthy": ["nay", "yea"], "atoms": outcome})
    mechanism = []
    for name, _, _, _, forced_yes, forced_no in pre:
        for votes in itertools.product((YES, NO), repeat=size):
            profile = dict(zip(members, votes))
            if any(profile[m] != YES for m in forced_yes) or any(profile[m] != NO for m in forced_no):
                continue
            count = votes.count(YES)
            mechanism.append({"from": name, "profile": profile, "to": f"h{count}"})
            for k in range(size + 1):
                mechanism.append({"from": name, "profile": profile, "to": f"d{k}"})
    return load_game({
        "variables": ["yea", "nay", "n"],
        "actors": members,
        "actions": [YES, NO],
        "states": states,
        "mechanism": mechanism,
    })


def lemma1_proof():
    return positive_introspection({"t"}, {"x"}, Atom("p"))


def bundled_files() -> dict[str, str]:
    """File name -> JSON text for everything the ``examples`` command writes."""
    return {
        "patriot.game": json.dumps(dump_game(patriot_game()), indent=2) + "\n",
        "voting5.game": json.dumps(dump_game(voting_game()), indent=1) + "\n",
        "lemma1.proof": json.dumps(dump_proof(lemma1_proof()), indent=2) + "\n",
    }


def write_examples(directory: str | Path) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in bundled_files().items():
        path = directory / name
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
