"""Hilbert-style proof checking.

Axioms are schemata over uppercase metavariables; a line is justified by a
schema instance, a premise, or modus ponens. Substitution is implicit in
schema matching.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional, Union

from ..syntax import (
    Connective, FormulaSyntaxError, MetaVar, app, imp_power, match_schema, parse,
    parse_schema, substitute, to_text,
)

C = Connective


@dataclass(frozen=True)
class AxiomSystem:
    id: str
    schemata: tuple  # (name, schema) pairs
    implication: Connective = C.ImpL
    rules: frozenset = frozenset({"ModusPonens", "Substitution"})

    def __post_init__(self):
        names = [n for n, _ in self.schemata]
        if len(names) != len(set(names)):
            raise ValueError(f"duplicate schema names in {self.id}")

    def schema(self, name: str):
        for n, s in self.schemata:
            if n == name:
                return s
        raise KeyError(f"{self.id} has no axiom {name!r}")

    @property
    def names(self) -> list:
        return [n for n, _ in self.schemata]


@dataclass
class Line:
    formula: object
    just: tuple  # ("axiom", name, sigma or None) | ("premise", k) | ("mp", i, j)


@dataclass
class HilbertProof:
    system: str
    lines: list
    premises: list = field(default_factory=list)

    @property
    def conclusion(self):
        return self.lines[-1].formula if self.lines else None


@dataclass(frozen=True)
class Accept:
    conclusion: object = None

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Reject:
    line: object
    reason: str

    def __bool__(self):
        return False


# ---------------------------------------------------------------- systems

@lru_cache(maxsize=None)
def _table() -> dict:
    text = resources.files("mvlogic.data").joinpath("hilbert.json").read_text(encoding="utf-8")
    return json.loads(text)["systems"]


def _from_table(ident: str) -> AxiomSystem:
    entry = _table()[ident]
    schemata = tuple((n, parse_schema(s)) for n, s in entry["axioms"].items())
    return AxiomSystem(ident, schemata, C.from_name(entry["implication"]))


def tuziak(n: int) -> AxiomSystem:
    """Axioms for the n-valued Łukasiewicz calculus (Tuziak's formalization)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    A, B, R = MetaVar("A"), MetaVar("B"), MetaVar("C")
    imp = C.ImpL

    def i(a, b):
        return app(imp, a, b)

    def iff(a, b):
        return app(C.Meet, i(a, b), i(b, a))

    ax = [
        ("T1", i(i(A, B), i(i(B, R), i(A, R)))),
        ("T2", i(A, i(B, A))),
        ("T3", i(i(i(A, B), B), i(i(B, A), A))),
        ("T4", i(imp_power(n, A, B), imp_power(n - 1, A, B))),
        ("T5", i(app(C.Meet, A, B), A)),
        ("T6", i(app(C.Meet, A, B), B)),
        ("T7", i(i(A, B), i(i(A, R), i(A, app(C.Meet, B, R))))),
        ("T8", i(A, app(C.Join, A, B))),
        ("T9", i(B, app(C.Join, A, B))),
        ("T10", i(i(A, R), i(i(B, R), i(app(C.Join, A, B), R)))),
        ("T11", i(i(app(C.NegL, A), app(C.NegL, B)), i(B, A))),
    ]
    for s in range(1, n):
        if (n - 1) % s:
            lhs = iff(A, imp_power(s - 1, A, app(C.NegL, A)))
            ax.append((f"T12.{s}", imp_power(n - 1, lhs, A)))
    return AxiomSystem(f"tuziak:{n}", tuple(ax), imp)


SYSTEM_IDS = ("classical", "luk-inf", "godel", "product", "bl-luk", "bl-godel", "bl-product", "inl")


@lru_cache(maxsize=None)
def get_system(ident: str) -> AxiomSystem:
    if ident.startswith("tuziak:"):
        return tuziak(int(ident.split(":", 1)[1]))
    if ident not in _table():
        raise KeyError(f"unknown axiom system {ident!r}; known: {', '.join(SYSTEM_IDS)}, tuziak:n")
    return _from_table(ident)


# ---------------------------------------------------------------- checking

def check_hilbert(system: Union[AxiomSystem, str], premises: list, proof: HilbertProof) -> Union[Accept, Reject]:
    """Lines are numbered from 1; MP(i, j) needs line j = line i -> current."""
    sys_ = get_system(system) if isinstance(system, str) else system
    if not proof.lines:
        return Reject(0, "empty proof")
    for k, line in enumerate(proof.lines, 1):
        why = _check_line(sys_, premises, proof.lines, k, line)
        if why:
            return Reject(k, why)
    return Accept(proof.conclusion)


def _check_line(sys_, premises, lines, k, line) -> Optional[str]:
    kind = line.just[0]
    f = line.formula
    if kind == "axiom":
        name, sigma = line.just[1], line.just[2] if len(line.just) > 2 else None
        try:
            schema = sys_.schema(name)
        except KeyError as e:
            return str(e.args[0])
        if sigma:
            try:
                inst = substitute(schema, sigma)
            except KeyError:
                return f"incomplete substitution for {name}"
            if inst != f:
                return f"not the stated instance of {name}"
        elif match_schema(schema, f) is None:
            return f"not an instance of {name}"
        return None
    if kind == "premise":
        idx = line.just[1]
        if not 0 <= idx < len(premises):
            return f"no premise {idx}"
        return None if premises[idx] == f else "premise mismatch"
    if kind == "mp":
        i, j = line.just[1], line.just[2]
        if not (1 <= i < k and 1 <= j < k):
            return "modus ponens refers to a later or missing line"
        minor, major = lines[i - 1].formula, lines[j - 1].formula
        expected = app(sys_.implication, minor, f)
        if major != expected:
            return "major premise shape"
        return None
    return f"unknown justification {kind!r}"


# ---------------------------------------------------------------- scripts

def _parse_sigma(raw) -> Optional[dict]:
    if not raw:
        return None
    return {k: parse(v) for k, v in raw.items()}


def load_hilbert(data: dict) -> HilbertProof:
    """Build a proof from its JSON form; raises FormulaSyntaxError on bad text."""
    lines = []
    for entry in data["lines"]:
        just = entry["just"]
        kind = just[0]
        if kind == "axiom":
            j = ("axiom", just[1], _parse_sigma(just[2] if len(just) > 2 else None))
        elif kind == "mp":
            j = ("mp", int(just[1]), int(just[2]))
        elif kind == "premise":
            j = ("premise", int(just[1]))
        else:
            j = tuple(just)
        lines.append(Line(parse(entry["formula"]), j))
    return HilbertProof(data["system"], lines, [parse(p) for p in data.get("premises", [])])


def dump_hilbert(proof: HilbertProof) -> dict:
    out = []
    for line in proof.lines:
        just = list(line.just)
        if just[0] == "axiom" and len(just) > 2:
            just[2] = {k: to_text(v) for k, v in (just[2] or {}).items()}
        out.append({"formula": to_text(line.formula), "just": just})
    return {"system": proof.system, "premises": [to_text(p) for p in proof.premises], "lines": out}


def check_script(data: dict) -> Union[Accept, Reject]:
    try:
        proof = load_hilbert(data)
    except FormulaSyntaxError as e:
        return Reject(None, f"syntax error: {e}")
    return check_hilbert(proof.system, proof.premises, proof)


__all__ = [
    "AxiomSystem", "Line", "HilbertProof", "Accept", "Reject", "tuziak", "get_system",
    "check_hilbert", "load_hilbert", "dump_hilbert", "check_script", "SYSTEM_IDS",
]
