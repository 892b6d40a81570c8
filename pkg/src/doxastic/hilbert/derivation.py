"""Hilbert-style derivations and their checker.

Line references are 1-based (as in proof files); hypothesis indices are
0-based.  Necessitation only applies to lines that do not depend on any
hypothesis, so a derivation from hypotheses ``F`` uses Modus Ponens alone on
hypothesis-dependent lines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence

from ..syntax import (
    AbstractionTooLarge, Belief, Formula, Impl, ParseError, expand_sugar, is_core,
    is_prop_tautology, parse, to_text,
)
from .schemas import EMPTY, SCHEMAS, match_axiom

__all__ = [
    "ProofLine", "Derivation", "CheckReport", "ProofFormatError", "ProofBuilder",
    "check_derivation", "dependencies", "load_proof", "load_proof_file", "dump_proof",
]

RULES = ("Taut", "Axiom", "Hyp", "MP", "Nec")


class ProofFormatError(ValueError):
    pass


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    rule: str
    schema: Optional[str] = None
    premises: tuple[int, ...] = ()
    index: Optional[int] = None

    @property
    def label(self) -> str:
        return f"Axiom:{self.schema}" if self.rule == "Axiom" else self.rule


@dataclass(frozen=True)
class Derivation:
    hypotheses: tuple[Formula, ...]
    lines: tuple[ProofLine, ...]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    line: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid

    def __str__(self) -> str:
        return "valid" if self.valid else f"invalid at line {self.line}: {self.reason}"


def dependencies(d: Derivation) -> list[bool]:
    """Per line: does it depend on a hypothesis?  Assumes references are in range."""
    deps: list[bool] = []
    for ln in d.lines:
        if ln.rule == "Hyp":
            deps.append(True)
        elif ln.rule == "MP":
            deps.append(any(deps[i - 1] for i in ln.premises))
        else:
            deps.append(False)
    return deps


def _line_error(k: int, ln: ProofLine, d: Derivation, deps: list[bool], allow_generalized: bool) -> Optional[str]:
    f = ln.formula
    if not is_core(f):
        return "formula is not desugared"
    if ln.rule == "Taut":
        try:
            ok = is_prop_tautology(f)
        except AbstractionTooLarge as e:
            return str(e)
        return None if ok else "not a propositional tautology"
    if ln.rule == "Axiom":
        if ln.schema not in SCHEMAS:
            return f"unknown axiom schema {ln.schema!r}"
        if ln.schema == "GeneralizedPublicBelief" and not allow_generalized:
            return "GeneralizedPublicBelief is not enabled"
        return None if match_axiom(f, ln.schema) else f"not an instance of {ln.schema}"
    if ln.rule == "Hyp":
        if ln.index is None or not 0 <= ln.index < len(d.hypotheses):
            return f"no hypothesis {ln.index}"
        return None if d.hypotheses[ln.index] == f else f"formula differs from hypothesis {ln.index}"
    if ln.rule == "MP":
        if len(ln.premises) != 2:
            return "MP needs two premises"
        i, j = ln.premises
        if not (1 <= i < k and 1 <= j < k):
            return f"MP premises {i}, {j} must be earlier lines"
        if d.lines[j - 1].formula != Impl(d.lines[i - 1].formula, f):
            return f"line {j} is not line {i} -> this formula"
        return None
    if ln.rule == "Nec":
        if len(ln.premises) != 1:
            return "Nec needs one premise"
        (i,) = ln.premises
        if not 1 <= i < k:
            return f"Nec premise {i} must be an earlier line"
        if deps[i - 1]:
            return f"Nec applied to line {i}, which depends on hypotheses"
        if f != Belief(EMPTY, EMPTY, d.lines[i - 1].formula):
            return f"formula is not B{{}}{{}} of line {i}"
        return None
    return f"unknown rule {ln.rule!r}"


def check_derivation(d: Derivation, *, allow_generalized: bool = False) -> CheckReport:
    """Validate every line; report the first failing one (1-based)."""
    if not d.lines:
        return CheckReport(False, 0, "empty derivation")
    for i, h in enumerate(d.hypotheses):
        if not is_core(h):
            return CheckReport(False, 0, f"hypothesis {i} is not desugared")
    deps: list[bool] = []
    for k, ln in enumerate(d.lines, start=1):
        err = _line_error(k, ln, d, deps, allow_generalized)
        if err is not None:
            return CheckReport(False, k, err)
        if ln.rule == "Hyp":
            deps.append(True)
        elif ln.rule == "MP":
            deps.append(any(deps[i - 1] for i in ln.premises))
        else:
            deps.append(False)
    return CheckReport(True)


class ProofBuilder:
    """Appends lines and hands back their 1-based numbers."""

    def __init__(self, hypotheses: Sequence[Formula] = ()):
        self.hypotheses = list(hypotheses)
        self.lines: list[ProofLine] = []

    def _add(self, line: ProofLine) -> int:
        self.lines.append(line)
        return len(self.lines)

    def formula(self, n: int) -> Formula:
        return self.lines[n - 1].formula

    def taut(self, f: Formula) -> int:
        return self._add(ProofLine(f, "Taut"))

    def axiom(self, schema: str, f: Formula) -> int:
        return self._add(ProofLine(f, "Axiom", schema=schema))

    def hyp(self, index: int) -> int:
        return self._add(ProofLine(self.hypotheses[index], "Hyp", index=index))

    def mp(self, minor: int, major: int) -> int:
        """From ``minor`` and ``major`` = minor -> c, conclude c."""
        imp = self.formula(major)
        assert isinstance(imp, Impl) and imp.lhs == self.formula(minor), "bad MP"
        return self._add(ProofLine(imp.rhs, "MP", premises=(minor, major)))

    def nec(self, n: int) -> int:
        return self._add(ProofLine(Belief(EMPTY, EMPTY, self.formula(n)), "Nec", premises=(n,)))

    def copy(self, line: ProofLine, renumber: Mapping[int, int]) -> int:
        """Append ``line`` with its references mapped through ``renumber``."""
        premises = tuple(renumber[i] for i in line.premises)
        return self._add(ProofLine(line.formula, line.rule, line.schema, premises, line.index))

    def build(self) -> Derivation:
        return Derivation(tuple(self.hypotheses), tuple(self.lines))


# --- proof files -----------------------------------------------------------

def _formula(text, where: str) -> Formula:
    if not isinstance(text, str):
        raise ProofFormatError(f"{where}: expected formula text")
    try:
        return expand_sugar(parse(text))
    except ParseError as e:
        raise ProofFormatError(f"{where}: {e}") from None


def load_proof(document: str | bytes | Mapping) -> Derivation:
    """Read the JSON proof format; formulas are parsed and desugared."""
    doc = json.loads(document) if isinstance(document, (str, bytes)) else document
    if not isinstance(doc, dict) or "lines" not in doc:
        raise ProofFormatError("proof: expected an object with 'lines'")
    unknown = set(doc) - {"hypotheses", "lines"}
    if unknown:
        raise ProofFormatError(f"proof: unknown key(s) {sorted(unknown)}")
    hyps = tuple(_formula(h, f"hypotheses[{i}]") for i, h in enumerate(doc.get("hypotheses", [])))
    lines = []
    for n, raw in enumerate(doc["lines"], start=1):
        where = f"lines[{n}]"
        if not isinstance(raw, dict) or "formula" not in raw or "rule" not in raw:
            raise ProofFormatError(f"{where}: needs 'formula' and 'rule'")
        unknown = set(raw) - {"formula", "rule", "premises", "premise", "index"}
        if unknown:
            raise ProofFormatError(f"{where}: unknown key(s) {sorted(unknown)}")
        f = _formula(raw["formula"], where)
        rule = raw["rule"]
        schema = None
        if isinstance(rule, str) and rule.startswith("Axiom:"):
            rule, schema = "Axiom", rule.split(":", 1)[1]
        premises = tuple(raw.get("premises", ()))
        if "premise" in raw:
            premises = (raw["premise"],)
        if not all(isinstance(p, int) for p in premises):
            raise ProofFormatError(f"{where}: premises must be integers")
        lines.append(ProofLine(f, rule, schema, premises, raw.get("index")))
    return Derivation(hyps, tuple(lines))


def load_proof_file(path: str | Path) -> Derivation:
    return load_proof(Path(path).read_text(encoding="utf-8"))


def dump_proof(d: Derivation) -> dict:
    lines = []
    for ln in d.lines:
        out: dict = {"formula": to_text(ln.formula), "rule": ln.label}
        if ln.rule == "MP":
            out["premises"] = list(ln.premises)
        elif ln.rule == "Nec":
            out["premise"] = ln.premises[0]
        elif ln.rule == "Hyp":
            out["index"] = ln.index
        lines.append(out)
    return {"hypotheses": [to_text(h) for h in d.hypotheses], "lines": lines}
