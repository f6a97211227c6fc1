"""Many-sided sequents for finite matrix logics.

An n-sequent has one place per truth value; place i (1-based) collects
formulas that would make it true by taking value i-1. Introduction rules
are derived from truth tables through a clause form, and a cut-free
backward search decides p-validity for small formulas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from ..matrices import MatrixLogic, evaluate
from ..syntax import Apply, Connective, Var, parse, size, to_text, variables

MAX_VARS = 6


def _ms(items) -> tuple:
    return tuple(sorted(items, key=to_text))


@dataclass(frozen=True)
class NSequent:
    places: tuple  # one sorted tuple of formulas per place

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(_ms(p) for p in self.places))

    @property
    def n(self) -> int:
        return len(self.places)

    def formulas(self):
        for i, place in enumerate(self.places):
            for f in place:
                yield i, f

    def add(self, place: int, *fs) -> "NSequent":
        """Add formulas at a 0-based place."""
        ps = list(self.places)
        ps[place] = ps[place] + tuple(fs)
        return NSequent(tuple(ps))

    def remove(self, place: int, f) -> "NSequent":
        ps = [list(p) for p in self.places]
        ps[place].remove(f)
        return NSequent(tuple(tuple(p) for p in ps))

    def contains(self, other: "NSequent") -> bool:
        """Multiset inclusion place by place."""
        for mine, theirs in zip(self.places, other.places):
            rest = list(mine)
            for f in theirs:
                if f not in rest:
                    return False
                rest.remove(f)
        return len(self.places) == len(other.places)

    def variables(self) -> list:
        out = []
        for _, f in self.formulas():
            for v in variables(f):
                if v not in out:
                    out.append(v)
        return out

    def __str__(self) -> str:
        return format_nsequent(self)


def empty(n: int) -> NSequent:
    return NSequent(((),) * n)


def at(n: int, values, f) -> NSequent:
    """[values : f]: f placed at place v+1 for each truth value v."""
    if isinstance(values, int):
        values = (values,)
    s = empty(n)
    for v in values:
        s = s.add(v, f)
    return s


def parse_nsequent(text: str) -> NSequent:
    """Places separated by "|", formulas by ","."""
    from .sequent import _split_items
    return NSequent(tuple(tuple(parse(x) for x in _split_items(part)) for part in text.split("|")))


def format_nsequent(s: NSequent) -> str:
    return " | ".join(", ".join(to_text(f) for f in place) for place in s.places)


# ---------------------------------------------------------------- semantics

def _check_logic(logic: MatrixLogic, s: NSequent):
    if logic.values is None:
        raise ValueError(f"{logic.id} is not finite")
    if s.n != logic.n:
        raise ValueError(f"sequent has {s.n} places but {logic.id} has {logic.n} values")


def psat(logic: MatrixLogic, s: NSequent, v) -> bool:
    _check_logic(logic, s)
    return any(evaluate(logic, f, v) == logic.values[i] for i, f in s.formulas())


def nsat(logic: MatrixLogic, s: NSequent, v) -> bool:
    _check_logic(logic, s)
    return any(evaluate(logic, f, v) != logic.values[i] for i, f in s.formulas())


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Countermodel:
    valuation: dict

    def __bool__(self):
        return False


def _valuations(logic, names):
    for combo in itertools.product(logic.values, repeat=len(names)):
        yield dict(zip(names, combo))


def pvalid(logic: MatrixLogic, s: NSequent, max_vars: int = MAX_VARS) -> Union[Valid, Countermodel]:
    _check_logic(logic, s)
    names = sorted(s.variables())
    if len(names) > max_vars:
        raise ValueError(f"{len(names)} variables exceed the bound of {max_vars}")
    for v in _valuations(logic, names):
        if not psat(logic, s, v):
            return Countermodel(v)
    return Valid()


def nvalid(logic: MatrixLogic, s: NSequent, max_vars: int = MAX_VARS) -> Union[Valid, Countermodel]:
    _check_logic(logic, s)
    names = sorted(s.variables())
    if len(names) > max_vars:
        raise ValueError(f"{len(names)} variables exceed the bound of {max_vars}")
    for v in _valuations(logic, names):
        if not nsat(logic, s, v):
            return Countermodel(v)
    return Valid()


# ---------------------------------------------------------------- rule generation

@dataclass(frozen=True)
class GeneratedRule:
    """Clause j puts argument k at every (1-based) place in clauses[j][k]."""
    conn: Connective
    place: int
    n: int
    clauses: tuple  # tuple of tuples of frozensets

    @property
    def name(self) -> str:
        return f"{self.conn.tag}:{self.place - 1}"

    @property
    def arity(self) -> int:
        return self.conn.arity

    def premises(self, args, context: Optional[NSequent] = None) -> list:
        ctx = context or empty(self.n)
        out = []
        for clause in self.clauses:
            s = ctx
            for k, places in enumerate(clause):
                for r in sorted(places):
                    s = s.add(r - 1, args[k])
            out.append(s)
        return out

    def conclusion(self, args, context: Optional[NSequent] = None) -> NSequent:
        ctx = context or empty(self.n)
        return ctx.add(self.place - 1, Apply(self.conn, tuple(args)))

    def text(self) -> str:
        """Premises and conclusion with Γ contexts and ψ, φ, χ as arguments."""
        names = ["ψ", "φ", "χ"][: self.arity]

        def seq(extra):
            return " | ".join(", ".join([f"Γ{i + 1}"] + extra.get(i + 1, [])) for i in range(self.n))

        prem = []
        for clause in self.clauses:
            extra = {}
            for k, places in enumerate(clause):
                for r in sorted(places):
                    extra.setdefault(r, []).append(names[k])
            prem.append(seq(extra))
        sym = self.conn.token
        principal = f"{sym} {names[0]}" if self.arity == 1 else f"{names[0]} {sym} {names[1]}"
        return "   ".join(prem) + f"  /  {seq({self.place: [principal]})}   ({self.name})"


def _satisfies(clause, args) -> bool:
    return any(a in places for a, places in zip(args, clause))


def _clause_key(c):
    return (sum(len(r) for r in c), tuple(tuple(sorted(r)) for r in c))


def generate_rules(logic: MatrixLogic, conn: Connective, place: int) -> GeneratedRule:
    """Clause form of "conn(args) == value place-1" over atoms "arg_k at place r".

    Prime implicates of the target set, then a smallest cover of the
    non-target tuples (fewest clauses, then fewest literals, then the
    canonical order).
    """
    if logic.values is None:
        raise ValueError(f"{logic.id} is not finite")
    if conn.arity not in (1, 2):
        raise ValueError(f"arity {conn.arity} is not supported")
    n, m = logic.n, conn.arity
    if not 1 <= place <= n:
        raise ValueError(f"place must lie in 1..{n}")
    target_value = logic.values[place - 1]
    tuples = list(itertools.product(range(n), repeat=m))
    value_of = {t: logic.apply(conn, *(logic.values[i] for i in t)) for t in tuples}
    target = [t for t in tuples if value_of[t] == target_value]
    others = [t for t in tuples if value_of[t] != target_value]

    places = range(1, n + 1)
    subsets = [frozenset(c) for r in range(n + 1) for c in itertools.combinations(places, r)]

    def implicate(c):
        return all(_satisfies(c, [i + 1 for i in t]) for t in target)

    primes = []
    for c in itertools.product(subsets, repeat=m):
        if not implicate(c):
            continue
        smaller = (c[:k] + (c[k] - {r},) + c[k + 1:] for k in range(m) for r in c[k])
        if any(implicate(s) for s in smaller):
            continue
        primes.append(c)
    primes.sort(key=_clause_key)

    kills = [frozenset(t for t in others if not _satisfies(c, [i + 1 for i in t])) for c in primes]
    need = frozenset(others)
    best = None
    for k in range(0, len(primes) + 1):
        for combo in itertools.combinations(range(len(primes)), k):
            covered = frozenset().union(*(kills[i] for i in combo)) if combo else frozenset()
            if covered != need:
                continue
            key = (sum(_clause_key(primes[i])[0] for i in combo), combo)
            if best is None or key < best:
                best = key
        if best is not None:
            break
    clauses = tuple(primes[i] for i in best[1])
    return GeneratedRule(conn, place, n, clauses)


def validate_rule(logic: MatrixLogic, rule: GeneratedRule):
    """None if the rule's clauses are equivalent to the connective taking value place-1,
    otherwise the first argument tuple where they disagree."""
    n = logic.n
    for t in itertools.product(range(n), repeat=rule.arity):
        holds = logic.apply(rule.conn, *(logic.values[i] for i in t)) == logic.values[rule.place - 1]
        sat = all(_satisfies(c, [i + 1 for i in t]) for c in rule.clauses)
        if holds != sat:
            return tuple(logic.values[i] for i in t)
    return None


# ---------------------------------------------------------------- proofs

@dataclass
class NProof:
    rule: str  # "axiom", "weakening" or a generated rule name
    conclusion: NSequent
    children: list

    @property
    def depth(self) -> int:
        """Logical rule applications on the longest branch."""
        own = 0 if self.rule in ("axiom", "weakening") else 1
        return own + max((c.depth for c in self.children), default=0)

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass(frozen=True)
class Fail:
    leaf: NSequent
    reason: str = "open atomic leaf"

    def __bool__(self):
        return False


@dataclass(frozen=True)
class ResourceBound:
    depth: int

    def __bool__(self):
        return False


class Calculus:
    """Generated introduction rules for a finite logic, built on demand."""

    def __init__(self, logic: MatrixLogic):
        if logic.values is None:
            raise ValueError(f"{logic.id} is not finite")
        self.logic = logic
        self._rules = {}

    def rule(self, conn: Connective, place: int) -> GeneratedRule:
        key = (conn, place)
        if key not in self._rules:
            self._rules[key] = generate_rules(self.logic, conn, place)
        return self._rules[key]


def _atomic(f) -> bool:
    return not isinstance(f, Apply)


def _constant_closes(logic, i, f) -> bool:
    if isinstance(f, (Var, Apply)):
        return False
    return evaluate(logic, f, {}) == logic.values[i]


def _leaf(logic, s: NSequent):
    """Proof of an atomic sequent from an axiom by weakening, if one exists."""
    n = s.n
    for i, f in s.formulas():
        if _constant_closes(logic, i, f):
            ax = at(n, i, f)
            node = NProof("axiom", ax, [])
            return node if ax == s else NProof("weakening", s, [node])
    for name in sorted(s.variables()):
        f = Var(name)
        if all(f in place for place in s.places):
            ax = NSequent(((f,),) * n)
            node = NProof("axiom", ax, [])
            return node if ax == s else NProof("weakening", s, [node])
    return None


def prove_bounded(logic: MatrixLogic, s: NSequent, depth: int = 16,
                  calculus: Optional[Calculus] = None):
    """Backward search with the invertible generated rules; returns an NProof,
    Fail(open leaf) or ResourceBound."""
    _check_logic(logic, s)
    calc = calculus or Calculus(logic)
    r = _search(calc, s, depth)
    return ResourceBound(depth) if isinstance(r, ResourceBound) else r


def _search(calc: Calculus, s: NSequent, budget: int):
    compound = [(i, f) for i, f in s.formulas() if not _atomic(f)]
    if not compound:
        leaf = _leaf(calc.logic, s)
        return leaf if leaf is not None else Fail(s)
    leaf = _leaf(calc.logic, s)
    if leaf is not None:
        return leaf
    if budget <= 0:
        return ResourceBound(0)
    i, f = min(compound, key=lambda x: (size(x[1]), x[0], to_text(x[1])))
    rule = calc.rule(f.conn, i + 1)
    ctx = s.remove(i, f)
    kids = []
    for prem in rule.premises(f.args, ctx):
        r = _search(calc, prem, budget - 1)
        if not isinstance(r, NProof):
            return r
        kids.append(r)
    return NProof(rule.name, s, kids)


def check_nproof(calc: Calculus, node: NProof) -> Optional[str]:
    """None if every node is an axiom, a weakening or a generated rule instance."""
    n = calc.logic.n
    if node.rule == "axiom":
        if node.children:
            return "axioms have no premises"
        fs = list(node.conclusion.formulas())
        if len(fs) == n and len({f for _, f in fs}) == 1 and all(len(p) == 1 for p in node.conclusion.places):
            return None
        if len(fs) == 1 and _constant_closes(calc.logic, *fs[0]):
            return None
        return "not an axiom"
    if node.rule == "weakening":
        if len(node.children) != 1 or not node.conclusion.contains(node.children[0].conclusion):
            return "bad weakening"
        return check_nproof(calc, node.children[0])
    # generated rule: find the principal formula and rebuild the premises
    tag, _, value = node.rule.partition(":")
    try:
        conn = Connective.from_name(tag)
        place = int(value) + 1
    except (KeyError, ValueError):
        return f"unknown rule {node.rule!r}"
    rule = calc.rule(conn, place)
    kids = [c.conclusion for c in node.children]
    for f in set(node.conclusion.places[place - 1]):
        if isinstance(f, Apply) and f.conn is conn:
            ctx = node.conclusion.remove(place - 1, f)
            if rule.premises(f.args, ctx) == kids:
                break
    else:
        return f"not an instance of {node.rule}"
    for c in node.children:
        why = check_nproof(calc, c)
        if why:
            return why
    return None


# ---------------------------------------------------------------- corpus

def formula_corpus(conns, names=("p", "q"), max_connectives: int = 3) -> list:
    """All formulas over the given variables with at most k connectives."""
    levels = [[Var(x) for x in names]]
    for k in range(1, max_connectives + 1):
        out = []
        for c in conns:
            if c.arity == 1:
                out.extend(Apply(c, (a,)) for a in levels[k - 1])
            else:
                for i in range(k):
                    for a in levels[i]:
                        for b in levels[k - 1 - i]:
                            out.append(Apply(c, (a, b)))
        levels.append(out)
    return [f for level in levels for f in level]


__all__ = [
    "NSequent", "empty", "at", "parse_nsequent", "format_nsequent", "psat", "nsat",
    "pvalid", "nvalid", "Valid", "Countermodel", "GeneratedRule", "generate_rules",
    "validate_rule", "NProof", "Fail", "ResourceBound", "Calculus", "prove_bounded",
    "check_nproof", "formula_corpus",
]
