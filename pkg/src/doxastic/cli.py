"""Command-line front end.

Exit codes: 0 true/valid/found/no failures, 1 false/invalid/none/failures,
2 evaluation error, 64 usage error, 66 unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bundled import write_examples
from .checker import BudgetExceeded, DEFAULT_BUDGET, check, find_strategy
from .game import GameError, load_game
from .harness import FUZZ_TARGETS, NEGATIVE_CONTROL, GenConfig, fuzz_soundness
from .hilbert import ProofFormatError, check_derivation, load_proof
from .syntax import ParseError, parse, varset

EX_USAGE = 64
EX_NOINPUT = 66
EX_EVAL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EX_USAGE)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise FileNotFoundError(f"cannot read {path}: {e.strerror}") from None


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_check(args) -> int:
    g = load_game(_read(args.game))
    result = check(g, args.state, parse(args.formula), budget=args.budget)
    payload = {"verdict": result.verdict, "state": args.state, "formula": args.formula}
    if result.witness is not None:
        payload["witness"] = result.witness.as_dict()
    _emit(args, payload, "true" if result.verdict else "false")
    return 0 if result.verdict else 1


def cmd_synth(args) -> int:
    g = load_game(_read(args.game))
    s = find_strategy(
        g, args.state, varset(args.coalition), varset(args.ante), varset(args.post),
        varset(args.data), parse(args.goal), budget=args.budget,
    )
    payload = {"witness": None if s is None else s.as_dict()}
    _emit(args, payload, "none" if s is None else str(s))
    return 0 if s is not None else 1


def cmd_prove(args) -> int:
    d = load_proof(_read(args.proof))
    report = check_derivation(d, allow_generalized=args.generalized)
    payload = {"valid": report.valid, "line": report.line, "reason": report.reason}
    _emit(args, payload, str(report))
    return 0 if report.valid else 1


def cmd_fuzz(args) -> int:
    cfg = GenConfig(seed=args.seed, trials=args.trials)
    report = fuzz_soundness(cfg, args.schema or None)
    text = json.dumps(report, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    if args.format == "json" or not args.out:
        print(text)
    else:
        for r in report["results"]:
            print(f"{r['schema']}: {len(r['failures'])} failures / {r['trials']} trials")
    return 0 if report["total_failures"] == 0 else 1


def cmd_examples(args) -> int:
    for path in write_examples(args.dir):
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="doxastic", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="evaluate a formula at a state")
    c.add_argument("--game", required=True)
    c.add_argument("--state", required=True)
    c.add_argument("--formula", required=True)
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("synth", help="find a witness profile for a strategy modality")
    s.add_argument("--game", required=True)
    s.add_argument("--state", required=True)
    s.add_argument("--coalition", required=True, help="comma-separated actors, e.g. a,b or {}")
    s.add_argument("--ante", default="")
    s.add_argument("--post", default="")
    s.add_argument("--data", default="")
    s.add_argument("--goal", required=True)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.set_defaults(func=cmd_synth)

    pr = sub.add_parser("prove", help="validate a proof file")
    pr.add_argument("--proof", required=True)
    pr.add_argument("--generalized", action="store_true", help="admit GeneralizedPublicBelief lines")
    pr.set_defaults(func=cmd_prove)

    f = sub.add_parser("fuzz", help="soundness fuzzing over random games")
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--trials", type=int, default=200)
    f.add_argument("--schema", action="append", choices=FUZZ_TARGETS + (NEGATIVE_CONTROL,))
    f.add_argument("--out")
    f.set_defaults(func=cmd_fuzz)

    e = sub.add_parser("examples", help="write the bundled games and proof")
    e.add_argument("--dir", default=".")
    e.set_defaults(func=cmd_examples)

    for sp in (c, s, pr, f, e):
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_NOINPUT
    except json.JSONDecodeError as e:
        print(f"error: malformed JSON: {e}", file=sys.stderr)
        return EX_EVAL
    except (GameError, ParseError, ProofFormatError, BudgetExceeded, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_EVAL


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
