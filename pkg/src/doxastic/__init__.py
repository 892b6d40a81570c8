"""Model checking and proof checking for doxastic strategies over finite games."""

from .checker import CheckResult, check, evaluate_all, find_strategy, naive_satisfies, satisfies
from .game import ActionProfile, Game, indist, load_game, load_game_file, successors
from .syntax import expand_sugar, is_prop_tautology, parse, to_text

__version__ = "0.1.0"

__all__ = [
    "CheckResult", "check", "evaluate_all", "find_strategy", "naive_satisfies", "satisfies",
    "ActionProfile", "Game", "indist", "load_game", "load_game_file", "successors",
    "expand_sugar", "is_prop_tautology", "parse", "to_text",
]
