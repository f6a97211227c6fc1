"""p-adic ensemble probability, probability of formulas, a windowed
ultrafilter measure and fuzzy-set operations.

An ensemble is a finite tower: floor j holds l_j * p**j elements, and the
volume N = sum l_j p**j is read modulo p**K. Elements are integer ids
numbered floor by floor. Events are finite sets of ids or complements of
finite sets, so every event has a volume.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import padic as pa
from .hyper import (
    Standard, Window, h_algebraic_sum, h_neg, hmax, hmin, normalize,
)
from .matrices import evaluate, padic_luk
from .padic import PadicInt


class UndefinedProbability(ArithmeticError):
    """The denominator is not invertible modulo p**K."""


@dataclass(frozen=True)
class Ensemble:
    p: int
    K: int
    floors: tuple  # l_j for j = 0..J

    def __post_init__(self):
        if not pa.is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        floors = tuple(int(x) for x in self.floors)
        if len(floors) > self.K:
            raise ValueError(f"a tower has at most K={self.K} floors")
        for j, l in enumerate(floors):
            if l < 0:
                raise ValueError("floor populations are nonnegative")
            if l >= self.p ** (self.K - j):
                raise ValueError(f"l_{j} = {l} is not faithful at precision K={self.K}")
        object.__setattr__(self, "floors", floors)

    @property
    def size(self) -> int:
        """Number of elements as an ordinary integer."""
        return sum(l * self.p ** j for j, l in enumerate(self.floors))

    @property
    def volume(self) -> PadicInt:
        return pa.from_int(self.size, self.p, self.K)

    def floor_of(self, element: int) -> int:
        start = 0
        for j, l in enumerate(self.floors):
            stop = start + l * self.p ** j
            if start <= element < stop:
                return j
            start = stop
        raise ValueError(f"element {element} is not in the ensemble")

    def prefix_size(self, k: int) -> int:
        """|T_k|, the population of floors 0..k."""
        return sum(l * self.p ** j for j, l in enumerate(self.floors[: k + 1]))


def s_minus_one(p: int, K: int) -> Ensemble:
    """The largest ensemble: volume N_max = -1."""
    return Ensemble(p, K, (p - 1,) * K)


def s_n(N: int, p: int, K: int) -> Ensemble:
    """An ensemble of volume N, floors given by the base-p digits of N mod p**K."""
    return Ensemble(p, K, pa.from_int(N, p, K).digits)


@dataclass(frozen=True)
class Event:
    ids: frozenset
    complement: bool = False

    def __invert__(self) -> "Event":
        return Event(self.ids, not self.complement)

    def __or__(self, other: "Event") -> "Event":
        a, b = self, other
        if not a.complement and not b.complement:
            return Event(a.ids | b.ids)
        if a.complement and b.complement:
            return Event(a.ids & b.ids, True)
        fin, co = (a, b) if b.complement else (b, a)
        return Event(co.ids - fin.ids, True)

    def __and__(self, other: "Event") -> "Event":
        return ~((~self) | (~other))

    def contains(self, element: int) -> bool:
        return (element in self.ids) != self.complement

    def subset_of(self, other: "Event") -> bool:
        if not self.complement:
            return all(other.contains(x) for x in self.ids)
        if not other.complement:
            return False
        return other.ids <= self.ids


def event(ids=(), complement: bool = False) -> Event:
    return Event(frozenset(ids), complement)


EVERYTHING = Event(frozenset(), True)
NOTHING = Event(frozenset())


def _validate(S: Ensemble, A: Event):
    for x in A.ids:
        S.floor_of(x)


def volume(S: Ensemble, A: Event) -> PadicInt:
    """n(A) = lim |A ∩ T_k|; for a finite tower the last count."""
    _validate(S, A)
    n = len(A.ids)
    if A.complement:
        n = S.size - n
    return pa.from_int(n, S.p, S.K)


def floor_counts(S: Ensemble, A: Event) -> list:
    """n_k(A) for k = 0..J (the sequence whose limit is the volume)."""
    _validate(S, A)
    out = []
    for k in range(len(S.floors)):
        inside = sum(1 for x in A.ids if S.floor_of(x) <= k)
        out.append(S.prefix_size(k) - inside if A.complement else inside)
    return out


@dataclass(frozen=True)
class EventProb:
    numerator: PadicInt
    denominator: PadicInt

    @property
    def defined(self) -> bool:
        return pa.is_unit(self.denominator)

    @property
    def value(self) -> PadicInt:
        if not self.defined:
            raise UndefinedProbability(
                f"{pa.format_padic(self.denominator)} is not invertible mod "
                f"{self.denominator.p}^{self.denominator.K}")
        return pa.divide(self.numerator, self.denominator)

    def value_or_none(self) -> Optional[PadicInt]:
        return self.value if self.defined else None


def event_prob(S: Ensemble, A: Event) -> EventProb:
    return EventProb(volume(S, A), S.volume)


def bayes(S: Ensemble, A: Event, B: Event) -> EventProb:
    """P_A(B) = n(B) / n(A), i.e. P_S(B) / P_S(A) when both are defined."""
    if not B.subset_of(A):
        raise ValueError("bayes needs B ⊆ A")
    return EventProb(volume(S, B), volume(S, A))


def subensemble_prob(S: Ensemble, N: int) -> EventProb:
    """P_S(S_N) for a finite subensemble of N elements (ids 0..N-1)."""
    if N > S.size:
        raise ValueError(f"the ensemble has only {S.size} elements")
    return event_prob(S, event(range(N)))


# ---------------------------------------------------------------- formulas

def formula_prob(p: int, K: int, f, v: Mapping) -> PadicInt:
    """P(f) = val(f) / N_max = -val(f) in the p-adic Łukasiewicz matrix."""
    logic = padic_luk(p, K)
    return pa.neg(evaluate(logic, f, v))


def probability_axioms(p: int, K: int, f, g, v: Mapping) -> dict:
    """Which formula-probability axioms hold at v for the pair (f, g).

    "additivity" is None when its premise val(f ∧ g) = 0 does not hold.
    """
    from .syntax import Apply, Connective
    logic = padic_luk(p, K)
    a, b = evaluate(logic, f, v), evaluate(logic, g, v)
    Pf, Pg = pa.neg(a), pa.neg(b)
    out = {}
    meet = evaluate(logic, Apply(Connective.Meet, (f, g)), v)
    join = evaluate(logic, Apply(Connective.Join, (f, g)), v)
    if meet == pa.zero(p, K):
        out["additivity"] = pa.neg(join) == pa.add(Pf, Pg)
    else:
        out["additivity"] = None
    out["min"] = pa.neg(meet) == pa.pmin(Pf, Pg)
    out["complement"] = formula_prob(p, K, Apply(Connective.NegL, (f,)), v) == pa.sub(pa.one(p, K), Pf)
    return out


# ---------------------------------------------------------------- hyper measure

class _Undecided:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Undecided"

    def __str__(self) -> str:
        return "undecided"


Undecided = _Undecided()


def hyper_measure(W: int, A, tau: int = 2):
    """1 if A misses at most tau window indices, 0 if A has at most tau,
    otherwise Undecided (only an ultrafilter settles it)."""
    if W <= 3 * tau:
        raise ValueError("the window model needs W > 3*tau")
    A = set(A)
    if not A <= set(range(W)):
        raise ValueError(f"indices must lie in 0..{W - 1}")
    if W - len(A) <= tau:
        return 1
    if len(A) <= tau:
        return 0
    return Undecided


# ---------------------------------------------------------------- fuzzy sets

def _padic_sum(x, y):
    return pa.sub(pa.add(x, y), pa.pmin(x, y))


FUZZY = {
    "hyper": {"and": hmin, "or": hmax, "sum": h_algebraic_sum, "not": h_neg},
    "padic": {"and": pa.pmin, "or": pa.pmax, "sum": _padic_sum, "not": pa.complement},
}

_OP_ALIASES = {"∩": "and", "cap": "and", "∪": "or", "cup": "or", "+": "sum", "¬": "not", "neg": "not"}


def fuzzy_ops(domain: str, op: str, *values):
    op = _OP_ALIASES.get(op, op)
    try:
        fn = FUZZY[domain][op]
    except KeyError:
        raise ValueError(f"unknown fuzzy operation {domain}/{op}") from None
    kind = (Standard, Window) if domain == "hyper" else PadicInt
    for x in values:
        if not isinstance(x, kind):
            raise TypeError(f"{x!r} is not a {domain} value")
    arity = 1 if op == "not" else 2
    if len(values) != arity:
        raise ValueError(f"{op} takes {arity} argument(s)")
    return fn(*values)


def crispness(domain: str, mu) -> bool:
    if domain == "hyper":
        mu = normalize(mu)
        return isinstance(mu, Standard) and mu.q in (0, 1)
    if domain == "padic":
        return pa.norm(mu).value in (0, 1)
    raise ValueError(f"unknown domain {domain!r}")


# ---------------------------------------------------------------- ensemble files

_LINE = re.compile(r"^\s*(\w+)\s*(\d*)\s*:\s*(.*?)\s*$")


@dataclass
class EnsembleFile:
    ensemble: Ensemble
    events: dict = field(default_factory=dict)


def parse_ensemble(text: str) -> EnsembleFile:
    """Lines: "p: 2", "K: 8", "floor j: l_j" or "volume: -1", and
    "event NAME: 1,2,3" (prefix the list with "~" for a complement).
    Blank lines and "#" comments are ignored."""
    p = K = None
    floors, events, vol = {}, {}, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("event "):
            head, _, body = line[6:].partition(":")
            body = body.strip()
            comp = body.startswith("~")
            ids = [int(x) for x in body.lstrip("~").split(",") if x.strip()]
            events[head.strip()] = event(ids, comp)
            continue
        m = _LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: cannot read {raw!r}")
        key, idx, val = m.groups()
        if key == "p":
            p = int(val)
        elif key == "K":
            K = int(val)
        elif key == "floor":
            floors[int(idx)] = int(val)
        elif key == "volume":
            vol = int(val)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if p is None or K is None:
        raise ValueError("ensemble files need p and K")
    if vol is not None:
        S = s_minus_one(p, K) if vol == -1 else s_n(vol, p, K)
    else:
        J = max(floors, default=-1)
        S = Ensemble(p, K, tuple(floors.get(j, 0) for j in range(J + 1)))
    return EnsembleFile(S, events)


__all__ = [
    "Ensemble", "s_minus_one", "s_n", "Event", "event", "EVERYTHING", "NOTHING", "volume",
    "floor_counts", "EventProb", "UndefinedProbability", "event_prob", "bayes",
    "subensemble_prob", "formula_prob", "probability_axioms", "hyper_measure", "Undecided",
    "fuzzy_ops", "crispness", "FUZZY", "EnsembleFile", "parse_ensemble",
]
