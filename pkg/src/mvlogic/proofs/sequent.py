"""Two-sided sequents, hypersequents and table-driven proof checking.

Rule tables are JSON files in mvlogic/data. A rule pattern is written like a
hypersequent: components separated by "|", sides by "=>", items by ",".
Items are formula schemata (uppercase metavariables), context variables
(Gamma, Delta, Pi, Sigma with optional digits or primes, optionally "*n"
for n-fold repetition) or, as whole components, the hyper-contexts G and H.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterator, Mapping, Optional, Union

from ..syntax import FormulaSyntaxError, parse, parse_schema, substitute, to_text
from ..syntax import match_schema
from .hilbert import Accept, Reject


def _key(f):
    return to_text(f)


def _ms(items) -> tuple:
    return tuple(sorted(items, key=_key))


@dataclass(frozen=True)
class Sequent:
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", _ms(self.left))
        object.__setattr__(self, "right", _ms(self.right))

    def __str__(self) -> str:
        return format_sequent(self)


def _comp_key(s: Sequent):
    return (tuple(map(_key, s.left)), tuple(map(_key, s.right)))


@dataclass(frozen=True)
class Hypersequent:
    components: tuple

    def __post_init__(self):
        comps = tuple(sorted(self.components, key=_comp_key))
        if not comps:
            raise ValueError("a hypersequent needs at least one component")
        object.__setattr__(self, "components", comps)

    def __str__(self) -> str:
        return format_hypersequent(self)


def _split_items(text: str) -> list:
    """Split on top-level commas."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


def _split_arrow(text: str):
    if text.count("=>") != 1:
        raise FormulaSyntaxError(f"expected exactly one '=>' in {text!r}", 0, "sequent")
    left, right = text.split("=>")
    return left, right


def parse_sequent(text: str) -> Sequent:
    left, right = _split_arrow(text)
    return Sequent(tuple(parse(s) for s in _split_items(left)),
                   tuple(parse(s) for s in _split_items(right)))


def parse_hypersequent(text: str) -> Hypersequent:
    return Hypersequent(tuple(parse_sequent(c) for c in text.split("|")))


def format_sequent(s: Sequent, unicode: bool = False) -> str:
    left = ", ".join(to_text(f, unicode) for f in s.left)
    right = ", ".join(to_text(f, unicode) for f in s.right)
    arrow = "↪" if unicode else "=>"
    return f"{left} {arrow} {right}".strip()


def format_hypersequent(h: Hypersequent, unicode: bool = False) -> str:
    return " | ".join(format_sequent(c, unicode) for c in h.components)


# ---------------------------------------------------------------- patterns

_CTX = re.compile(r"^(Gamma|Delta|Pi|Sigma)\d*'*$")
_HYP = ("G", "H")


@dataclass(frozen=True)
class SidePattern:
    formulas: tuple  # schemata
    contexts: tuple  # (name, multiplicity var or None)


@dataclass(frozen=True)
class CompPattern:
    left: SidePattern
    right: SidePattern


@dataclass(frozen=True)
class HyperPattern:
    comps: tuple
    hvars: tuple


def _side_pattern(text: str) -> SidePattern:
    forms, ctxs = [], []
    for item in _split_items(text):
        name, _, mult = item.partition("*")
        name, mult = name.strip(), mult.strip() or None
        if _CTX.match(name):
            ctxs.append((name, mult))
        elif mult:
            raise ValueError(f"repetition is only allowed on contexts: {item!r}")
        else:
            forms.append(parse_schema(item))
    return SidePattern(tuple(forms), tuple(ctxs))


def parse_pattern(text: str) -> HyperPattern:
    comps, hvars = [], []
    for part in text.split("|"):
        part = part.strip()
        if part in _HYP:
            hvars.append(part)
            continue
        left, right = _split_arrow(part)
        comps.append(CompPattern(_side_pattern(left), _side_pattern(right)))
    return HyperPattern(tuple(comps), tuple(hvars))


def _drop_hvar(p: HyperPattern, name: str) -> HyperPattern:
    return HyperPattern(p.comps, tuple(h for h in p.hvars if h != name))


# ---------------------------------------------------------------- multisets

def _remove(big: tuple, small: tuple) -> Optional[tuple]:
    rest = list(big)
    for x in small:
        try:
            rest.remove(x)
        except ValueError:
            return None
    return tuple(rest)


def _compositions(total: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _splits(items: tuple, mults: list) -> Iterator[list]:
    """Ways to write items as a sum of m_k copies of multisets X_k."""
    counts = Counter(items)
    keys = list(counts)

    def go(i, acc):
        if i == len(keys):
            yield [tuple(x for x in acc_k) for acc_k in acc]
            return
        x = keys[i]
        for comp in _compositions(counts[x], len(mults)):
            if any(c % m for c, m in zip(comp, mults)):
                continue
            nxt = [a + (x,) * (c // m) for a, c, m in zip(acc, comp, mults)]
            yield from go(i + 1, nxt)

    yield from go(0, [() for _ in mults])


# ---------------------------------------------------------------- matching

def _match_forms(pats, items, b) -> Iterator[tuple]:
    if not pats:
        yield items, b
        return
    head, rest = pats[0], pats[1:]
    seen = set()
    for i, x in enumerate(items):
        if x in seen:
            continue
        seen.add(x)
        meta = {k: v for k, v in b.items() if isinstance(k, str) and not _CTX.match(k)
                and k not in _HYP and not k.startswith("#")}
        sigma = match_schema(head, x, meta)
        if sigma is None:
            continue
        nb = dict(b)
        nb.update(sigma)
        yield from _match_forms(rest, items[:i] + items[i + 1:], nb)


def _mult(m, b):
    if m is None:
        return 1
    return b.get("#" + m)


def _match_side(sp: SidePattern, items: tuple, b: dict) -> Iterator[dict]:
    for rest, b1 in _match_forms(sp.formulas, tuple(items), b):
        yield from _match_contexts(sp.contexts, rest, b1)


def _match_contexts(ctxs, rest, b) -> Iterator[dict]:
    # bound contexts with known multiplicity first
    free = []
    for name, m in ctxs:
        k = _mult(m, b)
        if name in b and k is not None:
            rest = _remove(rest, b[name] * k)
            if rest is None:
                return
        else:
            free.append((name, m))
    # bound contexts whose multiplicity is still open fix it by counting
    still = []
    for name, m in free:
        if name in b and b[name]:
            g = b[name]
            x = g[0]
            c_rest, c_g = rest.count(x), g.count(x)
            if c_rest % c_g:
                return
            k = c_rest // c_g
            if k < 1:
                return
            b = dict(b)
            b["#" + m] = k
            rest = _remove(rest, g * k)
            if rest is None:
                return
        elif name in b:
            b = dict(b)
            b.setdefault("#" + m, 1)
        else:
            still.append((name, m))
    if not still:
        if not rest:
            yield b
        return
    mults = []
    for name, m in still:
        k = _mult(m, b)
        if k is None:
            k = 1
            b = dict(b)
            b["#" + m] = 1
        mults.append(k)
    names = [n for n, _ in still]
    if len(set(names)) != len(names):
        # the same unbound context twice on one side: treat as one with summed multiplicity
        merged = Counter()
        for n, k in zip(names, mults):
            merged[n] += k
        names, mults = list(merged), list(merged.values())
    for parts in _splits(rest, mults):
        nb = dict(b)
        for n, part in zip(names, parts):
            nb[n] = _ms(part)
        yield nb


def _match_comp(cp: CompPattern, s: Sequent, b: dict) -> Iterator[dict]:
    for b1 in _match_side(cp.left, s.left, b):
        yield from _match_side(cp.right, s.right, b1)


def _match_comps(cps, comps, b) -> Iterator[tuple]:
    if not cps:
        yield comps, b
        return
    seen = set()
    for i, c in enumerate(comps):
        if c in seen:
            continue
        seen.add(c)
        for b1 in _match_comp(cps[0], c, b):
            yield from _match_comps(cps[1:], comps[:i] + comps[i + 1:], b1)


def match_pattern(p: HyperPattern, h: Hypersequent, b: Optional[dict] = None) -> Iterator[dict]:
    """All bindings under which the pattern instantiates to h."""
    b = dict(b or {})
    comps = tuple(h.components)
    free = []
    for hv in p.hvars:
        if hv in b:
            comps = _remove(comps, b[hv])
            if comps is None:
                return
        else:
            free.append(hv)
    for rest, b1 in _match_comps(p.comps, comps, b):
        if not free:
            if not rest:
                yield b1
            continue
        for parts in _splits(rest, [1] * len(free)):
            nb = dict(b1)
            for hv, part in zip(free, parts):
                nb[hv] = tuple(sorted(part, key=_comp_key))
            yield nb


def instantiate(p: HyperPattern, b: Mapping) -> Hypersequent:
    """Build the concrete hypersequent a pattern denotes under bindings b."""
    meta = {k: v for k, v in b.items() if not _CTX.match(k) and k not in _HYP and not k.startswith("#")}

    def side(sp):
        out = [substitute(f, meta) for f in sp.formulas]
        for name, m in sp.contexts:
            out.extend(tuple(b.get(name, ())) * (_mult(m, b) or 1))
        return tuple(out)

    comps = [Sequent(side(c.left), side(c.right)) for c in p.comps]
    for hv in p.hvars:
        comps.extend(b.get(hv, ()))
    return Hypersequent(tuple(comps))


# ---------------------------------------------------------------- calculi

@dataclass(frozen=True)
class Rule:
    name: str
    premises: tuple  # HyperPatterns
    conclusion: HyperPattern
    note: str = ""

    @property
    def is_axiom(self) -> bool:
        return not self.premises


@dataclass(frozen=True)
class Calculus:
    id: str
    hyper: bool
    rules: tuple
    orientation: str = ""

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(f"{self.id} has no rule {name!r}")


SEQUENT_CALCULI = ("classical-LK", "MOG-Ł∞", "G-sequent", "Π-sequent")
HYPER_CALCULI = ("Avron-Ł3", "MOG-Ł∞", "G-hyper", "Π-hyper")

_FILES = {
    ("classical-LK", False): "lk.json",
    ("MOG-Ł∞", False): "mog_sequent.json",
    ("MOG-Ł∞", True): "mog_hyper.json",
    ("G-sequent", False): "godel_sequent.json",
    ("G-hyper", True): "godel_hyper.json",
    ("Π-sequent", False): "product_sequent.json",
    ("Π-hyper", True): "product_hyper.json",
    ("Avron-Ł3", True): "avron_l3.json",
}

_ALIASES = {"MOG-L-inf": "MOG-Ł∞", "MOG": "MOG-Ł∞", "Pi-sequent": "Π-sequent",
            "Pi-hyper": "Π-hyper", "Avron-L3": "Avron-Ł3", "LK": "classical-LK"}


def _compile_rule(entry: dict) -> Rule:
    prem = [parse_pattern(t) for t in entry.get("premises", [])]
    concl = parse_pattern(entry["conclusion"])
    # G and H always written side by side carry no extra information: merge them
    pats = prem + [concl]
    if all("H" in p.hvars and "G" in p.hvars for p in pats):
        prem = [_drop_hvar(p, "H") for p in prem]
        concl = _drop_hvar(concl, "H")
    return Rule(entry["name"], tuple(prem), concl, entry.get("note", ""))


@lru_cache(maxsize=None)
def load_calculus(ident: str, hyper: bool = False) -> Calculus:
    ident = _ALIASES.get(ident, ident)
    try:
        fname = _FILES[(ident, hyper)]
    except KeyError:
        kind = "hypersequent" if hyper else "sequent"
        known = HYPER_CALCULI if hyper else SEQUENT_CALCULI
        raise KeyError(f"unknown {kind} calculus {ident!r}; known: {', '.join(known)}") from None
    data = json.loads(resources.files("mvlogic.data").joinpath(fname).read_text(encoding="utf-8"))
    rules = tuple(_compile_rule(e) for e in data["rules"])
    return Calculus(data["calculus"], data.get("hyper", False), rules, data.get("orientation", ""))


# ---------------------------------------------------------------- proofs

@dataclass
class ProofNode:
    rule: str
    conclusion: Hypersequent
    children: list

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


class UnknownRule(KeyError):
    pass


def load_proof(data: dict, hyper: bool) -> ProofNode:
    text = data["conclusion"]
    concl = parse_hypersequent(text) if hyper else Hypersequent((parse_sequent(text),))
    return ProofNode(data["rule"], concl, [load_proof(c, hyper) for c in data.get("children", [])])


def dump_proof(node: ProofNode) -> dict:
    return {"rule": node.rule, "conclusion": format_hypersequent(node.conclusion),
            "children": [dump_proof(c) for c in node.children]}


def _premises_match(pats, kids, b) -> bool:
    if not pats:
        return True
    return any(_premises_match(pats[1:], kids[1:], b1) for b1 in match_pattern(pats[0], kids[0], b))


def check_step(calc: Calculus, node: ProofNode) -> Optional[str]:
    """None if node is a correct instance of its rule given its children's conclusions."""
    try:
        rule = calc.rule(node.rule)
    except KeyError as e:
        raise UnknownRule(e.args[0]) from None
    if len(rule.premises) != len(node.children):
        return f"{rule.name} takes {len(rule.premises)} premise(s), got {len(node.children)}"
    kids = [c.conclusion for c in node.children]
    for b in match_pattern(rule.conclusion, node.conclusion):
        if _premises_match(rule.premises, kids, b):
            return None
    return f"not an instance of {rule.name}"


def _check_tree(calc: Calculus, node: ProofNode, path: tuple):
    why = check_step(calc, node)
    if why:
        return Reject(path, why)
    for i, c in enumerate(node.children):
        r = _check_tree(calc, c, path + (i,))
        if r is not None:
            return r
    return None


def _check(calc_id: str, proof, hyper: bool):
    calc = load_calculus(calc_id, hyper)
    if isinstance(proof, dict):
        try:
            proof = load_proof(proof, hyper)
        except FormulaSyntaxError as e:
            return Reject((), f"syntax error: {e}")
    if not hyper and len(proof.conclusion.components) != 1:
        return Reject((), "sequent proofs have one component")
    r = _check_tree(calc, proof, ())
    return r if r is not None else Accept(format_hypersequent(proof.conclusion))


def check_sequent_proof(calculus: str, proof) -> Union[Accept, Reject]:
    """Reject.line is the path of child indices to the offending node."""
    return _check(calculus, proof, False)


def check_hypersequent_proof(calculus: str, proof) -> Union[Accept, Reject]:
    return _check(calculus, proof, True)


# ---------------------------------------------------------------- semantics

def _shifted_value(f, v: Mapping) -> Fraction:
    from ..matrices import evaluate, get_logic
    return evaluate(get_logic("luk-inf"), f, {k: Fraction(x) + 1 for k, x in v.items()}) - 1


def hyperseq_semantics(h: Union[Hypersequent, Sequent], v: Mapping) -> bool:
    """Validity under v (values in [-1,0]): some component has
    sum over the antecedent <= sum over the succedent."""
    if isinstance(h, Sequent):
        h = Hypersequent((h,))
    for x in v.values():
        if not -1 <= Fraction(x) <= 0:
            raise ValueError("valuations take values in [-1,0]")
    for c in h.components:
        lhs = sum((_shifted_value(f, v) for f in c.left), Fraction(0))
        rhs = sum((_shifted_value(f, v) for f in c.right), Fraction(0))
        if lhs <= rhs:
            return True
    return False


__all__ = [
    "Sequent", "Hypersequent", "parse_sequent", "parse_hypersequent", "format_sequent",
    "format_hypersequent", "HyperPattern", "parse_pattern", "match_pattern", "instantiate",
    "Rule", "Calculus", "load_calculus", "ProofNode", "load_proof", "dump_proof", "check_step",
    "check_sequent_proof", "check_hypersequent_proof", "hyperseq_semantics", "UnknownRule",
    "SEQUENT_CALCULI", "HYPER_CALCULI",
]
