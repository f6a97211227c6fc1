"""A finite symbolic model of non-Archimedean truth values.

Standard values are exact rationals in [0,1]. Nonstandard values are
represented by a window of W rationals (a finite prefix of a sequence
class); the ultrafilter quantifier is replaced by "at every index of the
window". Every positive standard value dominates every window, and
Standard(0) lies below all of them.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .order import Order, compare_vectors


class WindowMismatch(ValueError):
    pass


def _unit(q) -> Fraction:
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"{q} is outside [0,1]")
    return q


@dataclass(frozen=True)
class Standard:
    q: Fraction

    def __post_init__(self):
        object.__setattr__(self, "q", _unit(self.q))

    def __str__(self) -> str:
        return f"std {self.q}"


@dataclass(frozen=True)
class Window:
    seq: tuple

    def __post_init__(self):
        seq = tuple(_unit(x) for x in self.seq)
        if not seq:
            raise ValueError("empty window")
        object.__setattr__(self, "seq", seq)

    @property
    def W(self) -> int:
        return len(self.seq)

    def __str__(self) -> str:
        return "win [" + ",".join(str(x) for x in self.seq) + "]"


HyperValue = Union[Standard, Window]

ZERO = Standard(Fraction(0))
ONE = Standard(Fraction(1))


def hyper(x) -> HyperValue:
    """Build a normalized value from a rational or a sequence of rationals."""
    if isinstance(x, (Standard, Window)):
        return normalize(x)
    if isinstance(x, (list, tuple)):
        return normalize(Window(tuple(x)))
    return Standard(x)


def normalize(x: HyperValue) -> HyperValue:
    if isinstance(x, Window) and len(set(x.seq)) == 1:
        return Standard(x.seq[0])
    return x


def window_size(*xs) -> int:
    """Common window size of the arguments (1 if all are standard)."""
    sizes = {x.W for x in xs if isinstance(x, Window)}
    if len(sizes) > 1:
        raise WindowMismatch(f"window sizes differ: {sorted(sizes)}")
    return sizes.pop() if sizes else 1


def _seq(x: HyperValue, W: int) -> tuple:
    if isinstance(x, Standard):
        return (x.q,) * W
    if x.W != W:
        raise WindowMismatch(f"window size {x.W} != {W}")
    return x.seq


def hleq(a: HyperValue, b: HyperValue) -> Order:
    window_size(a, b)
    a, b = normalize(a), normalize(b)
    if isinstance(a, Standard) and isinstance(b, Standard):
        return compare_vectors((a.q,), (b.q,))
    if isinstance(a, Standard):
        return Order.LE if a.q == 0 else Order.GE
    if isinstance(b, Standard):
        return Order.GE if b.q == 0 else Order.LE
    return compare_vectors(a.seq, b.seq)


def pointwise(fn: Callable, *args: HyperValue) -> HyperValue:
    """Apply a rational function index by index and normalize."""
    W = window_size(*args)
    if all(isinstance(a, Standard) for a in args):
        return Standard(fn(*(a.q for a in args)))
    cols = zip(*(_seq(a, W) for a in args))
    return normalize(Window(tuple(fn(*c) for c in cols)))


def hmin(a: HyperValue, b: HyperValue) -> HyperValue:
    o = hleq(a, b)
    if o.below:
        return normalize(a)
    if o is Order.GE:
        return normalize(b)
    return pointwise(min, a, b)


def hmax(a: HyperValue, b: HyperValue) -> HyperValue:
    o = hleq(a, b)
    if o.below:
        return normalize(b)
    if o is Order.GE:
        return normalize(a)
    return pointwise(max, a, b)


def lattice_degenerate(a: HyperValue, b: HyperValue) -> bool:
    """True for incomparable windows whose pointwise min or max collapses to
    a constant strictly inside (0,1).

    The collapsed constant is a standard value, which dominates both windows,
    so it is not a lower bound (for min) nor a least upper bound (for max):
    the finite model has no meet or join for such pairs.
    """
    if hleq(a, b) is not Order.INCOMPARABLE:
        return False
    for r in (pointwise(min, a, b), pointwise(max, a, b)):
        if isinstance(r, Standard) and 0 < r.q < 1:
            return True
    return False


def is_standard(x: HyperValue) -> bool:
    return isinstance(normalize(x), Standard)


# ---------------------------------------------------------------- arithmetic

def _clip(q: Fraction) -> Fraction:
    return min(Fraction(1), max(Fraction(0), q))


def h_neg(x):
    return pointwise(lambda a: 1 - a, x)


def h_add(x, y):
    return pointwise(lambda a, b: _clip(a + b), x, y)


def h_mul(x, y):
    return pointwise(lambda a, b: a * b, x, y)


def h_imp_luk(x, y):
    return pointwise(lambda a, b: min(Fraction(1), 1 - a + b), x, y)


def h_conj_luk(x, y):
    return pointwise(lambda a, b: max(Fraction(0), a + b - 1), x, y)


def h_div(x, y):
    """y/x clipped to 1; pointwise zero denominators are an error."""
    def f(a, b):
        if a == 0:
            raise ZeroDivisionError("pointwise division by zero")
        return min(Fraction(1), b / a)
    return pointwise(f, x, y)


def h_imp_godel(x, y):
    return ONE if hleq(x, y).below else normalize(y)


def h_imp_product(x, y):
    if hleq(x, y).below:
        return ONE
    return pointwise(lambda a, b: Fraction(1) if a <= b else b / a, x, y)


def h_algebraic_sum(x, y):
    return pointwise(lambda a, b: a + b - a * b, x, y)


ARITH = {
    "neg": h_neg,
    "add": h_add,
    "mul": h_mul,
    "imp": h_imp_luk,
    "div": h_div,
}


def hyper_arith(op: str, *args: HyperValue) -> HyperValue:
    try:
        fn = ARITH[op]
    except KeyError:
        raise ValueError(f"unknown hyper operation {op!r}; choose from {sorted(ARITH)}") from None
    return fn(*args)


# ---------------------------------------------------------------- text form

_WIN = re.compile(r"^win\s*\[(.*)\]$")


def parse_hyper(text: str) -> HyperValue:
    text = text.strip()
    if text.startswith("std"):
        return Standard(Fraction(text[3:].strip()))
    m = _WIN.match(text)
    if m:
        return hyper([Fraction(s) for s in m.group(1).split(",")])
    return Standard(Fraction(text))


def format_hyper(x: HyperValue) -> str:
    return str(normalize(x))


# ---------------------------------------------------------------- hyper-power set

@dataclass(frozen=True)
class HyperPowerSet:
    n: int
    elements: tuple  # frozensets of membership patterns

    @property
    def cardinality(self) -> int:
        return len(self.elements)

    def expressions(self) -> list:
        return [element_text(e) for e in self.elements]


def _patterns(n: int) -> list:
    """Nonempty subsets of {1..n}: the regions of the Venn diagram."""
    idx = range(1, n + 1)
    return [frozenset(c) for r in range(1, n + 1) for c in itertools.combinations(idx, r)]


def hyperpower_set(n: int) -> HyperPowerSet:
    """Closure of {∅, θ1..θn} under ∩ and ∪.

    Each element is the set of membership patterns it covers, which is a
    monotone Boolean function and hence a unique normal form.
    """
    if not 1 <= n <= 4:
        raise ValueError("hyperpower_set supports 1 <= n <= 4")
    pats = _patterns(n)
    atoms = [frozenset(p for p in pats if i in p) for i in range(1, n + 1)]
    found = {frozenset()} | set(atoms)
    frontier = set(found)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(found):
                for c in (a & b, a | b):
                    if c not in found:
                        new.add(c)
        found |= new
        frontier = new
    ordered = sorted(found, key=lambda e: (len(e), sorted(sorted(p) for p in e)))
    return HyperPowerSet(n, tuple(ordered))


def element_text(e: frozenset) -> str:
    """Minimal union-of-intersections form, e.g. "θ1∩θ2 ∪ θ3"."""
    if not e:
        return "∅"
    minimal = [p for p in e if not any(q < p for q in e)]
    minimal.sort(key=lambda p: (len(p), sorted(p)))
    return " ∪ ".join("∩".join(f"θ{i}" for i in sorted(p)) for p in minimal)
