"""Vague sets, interval neutrosophic sets and the INL matrix logics."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import hyper as hy
from . import padic as pa
from .matrices import DomainError
from .syntax import Apply, Connective as C, Var, connectives, variables

F0, F1 = Fraction(0), Fraction(1)


# ---------------------------------------------------------------- vague sets

@dataclass(frozen=True)
class VagueValue:
    """Membership bounded below by t and above by 1 - f."""
    t: Fraction
    f: Fraction

    def __post_init__(self):
        t, f = Fraction(self.t), Fraction(self.f)
        if not (0 <= t <= 1 and 0 <= f <= 1 and t + f <= 1):
            raise ValueError(f"invalid vague value t={t}, f={f}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "f", f)

    @property
    def interval(self):
        return (self.t, 1 - self.f)


def vague_neg(x: VagueValue) -> VagueValue:
    return VagueValue(x.f, x.t)


def vague_and(x: VagueValue, y: VagueValue) -> VagueValue:
    return VagueValue(min(x.t, y.t), max(x.f, y.f))


def vague_or(x: VagueValue, y: VagueValue) -> VagueValue:
    return VagueValue(max(x.t, y.t), min(x.f, y.f))


def vague_ops(op: str, *args: VagueValue) -> VagueValue:
    table = {"neg": vague_neg, "and": vague_and, "or": vague_or}
    if op not in table:
        raise ValueError(f"unknown vague operation {op!r}")
    return table[op](*args)


# ---------------------------------------------------------------- intervals

@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo},{hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x) -> "Interval":
        return cls(x, x)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __str__(self) -> str:
        return f"{self.lo},{self.hi}"


def _iv(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def iv_add(a, b) -> Interval:
    a, b = _iv(a), _iv(b)
    return Interval(a.lo + b.lo, a.hi + b.hi)


def iv_sub(a, b) -> Interval:
    a, b = _iv(a), _iv(b)
    return Interval(a.lo - b.hi, a.hi - b.lo)


def iv_mul(a, b) -> Interval:
    a, b = _iv(a), _iv(b)
    ps = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi]
    return Interval(min(ps), max(ps))


def iv_min(a, b) -> Interval:
    a, b = _iv(a), _iv(b)
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))


def iv_max(a, b) -> Interval:
    a, b = _iv(a), _iv(b)
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def iv_clip(a: Interval) -> Interval:
    """Intersect with [0,1]; the exact image of every connective lies there."""
    return Interval(min(F1, max(F0, a.lo)), max(F0, min(F1, a.hi)))


INTERVAL_OPS = {
    "+": iv_add, "-": iv_sub, "*": iv_mul, "min": iv_min, "max": iv_max,
    "scalar+": lambda c, b: iv_add(Interval.point(c), b),
}


def interval_combine(op: str, s1, s2) -> Interval:
    if op not in INTERVAL_OPS:
        raise ValueError(f"unknown interval operation {op!r}")
    return INTERVAL_OPS[op](s1, s2)


# ---------------------------------------------------------------- neutrosophic sets

@dataclass(frozen=True)
class NeutroInterval:
    t: Interval
    i: Optional[Interval]  # None is the empty indeterminacy interval
    f: Interval

    def __post_init__(self):
        for name in ("t", "i", "f"):
            x = getattr(self, name)
            if x is None and name == "i":
                continue
            x = _iv(x)
            if x.lo < 0 or x.hi > 1:
                raise ValueError(f"{name} interval {x} is not inside [0,1]")
            object.__setattr__(self, name, x)

    @property
    def i_or_zero(self) -> Interval:
        return self.i if self.i is not None else Interval.point(0)

    def components(self):
        return (self.t, self.i_or_zero, self.f)

    def __str__(self) -> str:
        i = "empty" if self.i is None else str(self.i)
        return f"<{self.t} | {i} | {self.f}>"


def parse_neutro(text: str) -> NeutroInterval:
    """Read "<t_lo,t_hi | i_lo,i_hi | f_lo,f_hi>"; the i part may be "empty" or "∅"."""
    body = text.strip()
    if not (body.startswith("<") and body.endswith(">")):
        raise ValueError(f"expected <t | i | f>, got {text!r}")
    parts = [s.strip() for s in body[1:-1].split("|")]
    if len(parts) != 3:
        raise ValueError("expected three components")

    def comp(s):
        if s in ("empty", "∅", ""):
            return None
        nums = [Fraction(x) for x in s.split(",")]
        if len(nums) == 1:
            nums *= 2
        return Interval(*nums)

    t, i, f = map(comp, parts)
    if t is None or f is None:
        raise ValueError("only the indeterminacy component may be empty")
    return NeutroInterval(t, i, f)


# componentwise images for each flavor; all results are hulls of the exact image

def _luk_neg(a: Interval) -> Interval:
    return iv_sub(Interval.point(1), a)


def _luk_imp(a: Interval, b: Interval) -> Interval:
    return iv_clip(iv_add(iv_sub(Interval.point(1), iv_max(a, b)), b))


def _luk_and(a: Interval, b: Interval) -> Interval:
    return iv_clip(iv_sub(iv_add(iv_max(a, _luk_neg(b)), b), Interval.point(1)))


def _godel_imp(a: Interval, b: Interval) -> Interval:
    if a.lo > b.hi:  # every pair has s1 > s2
        return b
    if a.hi > b.lo:  # both branches occur
        return Interval(b.lo, F1)
    return Interval.point(1)


def _product_imp(a: Interval, b: Interval) -> Interval:
    # the ratio branch only sees s1 > s2 >= 0, so no denominator is zero
    if a.lo > b.hi:
        return Interval(b.lo / a.hi, b.hi / a.lo)
    if a.hi > b.lo:
        return Interval(b.lo / a.hi, F1)
    return Interval.point(1)


_FLAVORS = {
    "L": (_luk_neg, _luk_imp, _luk_and),
    "G": (lambda a: _godel_imp(a, Interval.point(0)), _godel_imp, iv_min),
    "P": (lambda a: _product_imp(a, Interval.point(0)), _product_imp, iv_mul),
}


def _flavor(name: str):
    key = {"Ł": "L", "L": "L", "luk": "L", "G": "G", "godel": "G",
           "Π": "P", "P": "P", "Pi": "P", "product": "P"}.get(name)
    if key is None:
        raise ValueError(f"unknown flavor {name!r}")
    return _FLAVORS[key]


def neutro_complement(flavor: str, a: NeutroInterval) -> NeutroInterval:
    neg = _flavor(flavor)[0]
    return NeutroInterval(*(neg(x) for x in a.components()))


def neutro_implication(flavor: str, a: NeutroInterval, b: NeutroInterval) -> NeutroInterval:
    imp = _flavor(flavor)[1]
    return NeutroInterval(*(imp(x, y) for x, y in zip(a.components(), b.components())))


def neutro_intersection(flavor: str, a: NeutroInterval, b: NeutroInterval) -> NeutroInterval:
    conj = _flavor(flavor)[2]
    return NeutroInterval(*(conj(x, y) for x, y in zip(a.components(), b.components())))


# p-adic neutrosophic values carry single p-adic components

@dataclass(frozen=True)
class PadicNeutro:
    t: pa.PadicInt
    i: pa.PadicInt
    f: pa.PadicInt


def padic_neutro_complement(flavor: str, a: PadicNeutro) -> PadicNeutro:
    from .matrices import padic_luk
    L = padic_luk(a.t.p, a.t.K)
    conn = {"L": C.NegL, "G": C.NegG, "P": C.NegPi}[_flavor_key(flavor)]
    return PadicNeutro(*(L.apply(conn, x) for x in (a.t, a.i, a.f)))


def padic_neutro_implication(flavor: str, a: PadicNeutro, b: PadicNeutro) -> PadicNeutro:
    from .matrices import padic_luk
    L = padic_luk(a.t.p, a.t.K)
    conn = {"L": C.ImpL, "G": C.ImpG, "P": C.ImpPi}[_flavor_key(flavor)]
    return PadicNeutro(*(L.apply(conn, x, y) for x, y in zip((a.t, a.i, a.f), (b.t, b.i, b.f))))


def padic_neutro_intersection(flavor: str, a: PadicNeutro, b: PadicNeutro) -> PadicNeutro:
    from .matrices import padic_luk
    L = padic_luk(a.t.p, a.t.K)
    conn = {"L": C.ConjL, "G": C.Meet, "P": C.ConjPi}[_flavor_key(flavor)]
    return PadicNeutro(*(L.apply(conn, x, y) for x, y in zip((a.t, a.i, a.f), (b.t, b.i, b.f))))


def _flavor_key(name: str) -> str:
    fl = _flavor(name)
    return next(k for k, v in _FLAVORS.items() if v is fl)


# ---------------------------------------------------------------- classification

LABELS = ("classical", "fuzzy", "interval-fuzzy", "intuitionistic",
          "interval-intuitionistic", "paraconsistent", "interval-paraconsistent", "general")


def classify_interval_neutro(a: NeutroInterval) -> str:
    """First matching special case, tested in a fixed order."""
    if a.i is not None:
        return "general"
    t, f = a.t, a.f
    point = t.degenerate and f.degenerate
    if point and t.lo in (0, 1) and f.lo in (0, 1) and t.hi + f.hi == 1:
        return "classical"
    if point and t.hi + f.hi == 1:
        return "fuzzy"
    if t.hi + f.lo == 1 and t.lo + f.hi == 1:
        return "interval-fuzzy"
    if point and t.hi + f.hi <= 1:
        return "intuitionistic"
    if t.hi + f.lo <= 1:
        return "interval-intuitionistic"
    if point and t.hi + f.hi > 1:
        return "paraconsistent"
    if t.hi + f.lo > 1:
        return "interval-paraconsistent"
    return "general"


# ---------------------------------------------------------------- INL

@dataclass(frozen=True)
class INLTriple:
    t: object
    i: object
    f: object

    def __iter__(self):
        return iter((self.t, self.i, self.f))

    def __str__(self) -> str:
        from .matrices import format_value
        return "<" + ", ".join(format_value(x) for x in self) + ">"


class _HyperINL:
    one, zero = hy.ONE, hy.ZERO

    def check(self, x):
        if not isinstance(x, (hy.Standard, hy.Window)):
            raise DomainError(f"{x!r} is not a hyper value")
        return hy.normalize(x)

    def neg(self, a):
        return INLTriple(a.f, hy.h_neg(a.i), a.t)

    def imp(self, a, b):
        return INLTriple(hy.h_imp_luk(a.t, b.t),
                         hy.pointwise(lambda x, y: max(F0, y - x), a.i, b.i),
                         hy.pointwise(lambda x, y: max(F0, y - x), a.f, b.f))

    def meet(self, a, b):
        return INLTriple(hy.hmin(a.t, b.t), hy.hmax(a.i, b.i), hy.hmax(a.f, b.f))

    def join(self, a, b):
        return INLTriple(hy.hmax(a.t, b.t), hy.hmin(a.i, b.i), hy.hmin(a.f, b.f))

    def designated_triple(self, like=None):
        return INLTriple(hy.ONE, hy.ZERO, hy.ZERO)


class _PadicINL:
    def check(self, x):
        if not isinstance(x, pa.PadicInt):
            raise DomainError(f"{x!r} is not a p-adic integer")
        return x

    def neg(self, a):
        return INLTriple(a.f, pa.sub(pa.one(a.i.p, a.i.K), a.i), a.t)

    def imp(self, a, b):
        top = pa.n_max(a.t.p, a.t.K)
        zero = pa.zero(a.t.p, a.t.K)
        return INLTriple(pa.add(pa.sub(top, pa.pmax(a.t, b.t)), b.t),
                         pa.pmax(zero, pa.sub(b.i, a.i)),
                         pa.pmax(zero, pa.sub(b.f, a.f)))

    def meet(self, a, b):
        return INLTriple(pa.pmin(a.t, b.t), pa.pmax(a.i, b.i), pa.pmax(a.f, b.f))

    def join(self, a, b):
        return INLTriple(pa.pmax(a.t, b.t), pa.pmin(a.i, b.i), pa.pmin(a.f, b.f))

    def designated_triple(self, like):
        p, K = like.t.p, like.t.K
        return INLTriple(pa.n_max(p, K), pa.zero(p, K), pa.zero(p, K))


_VARIANTS = {"hyper": _HyperINL(), "padic": _PadicINL()}

INL_CONNECTIVES = ("neg", "imp", "and", "or", "iff")


def inl_apply(variant: str, conn: str, *args: INLTriple) -> INLTriple:
    """Apply an INL connective: neg, imp, and, or, or iff = (a->b) and (b->a)."""
    dom = _VARIANTS.get(variant)
    if dom is None:
        raise ValueError(f"unknown INL variant {variant!r}")
    args = tuple(INLTriple(*(dom.check(x) for x in a)) for a in args)
    arity = 1 if conn == "neg" else 2
    if conn not in INL_CONNECTIVES:
        raise ValueError(f"unknown INL connective {conn!r}")
    if len(args) != arity:
        raise ValueError(f"{conn} takes {arity} argument(s)")
    if conn == "neg":
        return dom.neg(*args)
    if conn == "imp":
        return dom.imp(*args)
    if conn == "and":
        return dom.meet(*args)
    if conn == "or":
        return dom.join(*args)
    a, b = args
    return dom.meet(dom.imp(a, b), dom.imp(b, a))


def inl_designated(variant: str, a: INLTriple) -> bool:
    return INLTriple(*a) == _VARIANTS[variant].designated_triple(a)


# formulas over the INL signature reuse the shared AST: NegL, ImpL, Meet, Join, Iff

_CONN_NAMES = {C.NegL: "neg", C.ImpL: "imp", C.Meet: "and", C.Join: "or", C.Iff: "iff"}


def inl_evaluate(variant: str, f, v) -> INLTriple:
    if isinstance(f, Var):
        return v[f.name]
    if isinstance(f, Apply):
        if f.conn not in _CONN_NAMES:
            raise DomainError(f"INL does not interpret {f.conn.tag}")
        return inl_apply(variant, _CONN_NAMES[f.conn], *(inl_evaluate(variant, a, v) for a in f.args))
    raise DomainError(f"INL has no interpretation for {f}")


def _scalar_inl(f, v):
    """INL on plain rational triples; agrees with the hyper variant on standard values."""
    if isinstance(f, Var):
        return v[f.name]
    args = [_scalar_inl(a, v) for a in f.args]
    if f.conn is C.NegL:
        (t, i, fa), = args
        return (fa, 1 - i, t)
    (t1, i1, f1), (t2, i2, f2) = args
    if f.conn is C.ImpL:
        return (min(F1, 1 - t1 + t2), max(F0, i2 - i1), max(F0, f2 - f1))
    if f.conn is C.Meet:
        return (min(t1, t2), max(i1, i2), max(f1, f2))
    if f.conn is C.Join:
        return (max(t1, t2), min(i1, i2), min(f1, f2))
    if f.conn is C.Iff:
        a = (min(F1, 1 - t1 + t2), max(F0, i2 - i1), max(F0, f2 - f1))
        b = (min(F1, 1 - t2 + t1), max(F0, i1 - i2), max(F0, f1 - f2))
        return (min(a[0], b[0]), max(a[1], b[1]), max(a[2], b[2]))
    raise DomainError(f"INL does not interpret {f.conn.tag}")


def inl_grid_failure(f, points: int = 11):
    """First valuation with standard components on the grid where f is not
    designated, or None.

    The indeterminacy component of every INL connective depends only on the
    indeterminacy components of its arguments. Truth and falsity depend only
    on truth and falsity, and only negation mixes the two. So the search runs
    over separate grids, which still covers every combination of the full
    per-component grid.
    """
    grid = [Fraction(k, points - 1) for k in range(points)]
    names = sorted(variables(f))
    k = len(names)
    searches = [(lambda c: {n: (F1, c[j], F0) for j, n in enumerate(names)}, k)]
    if C.NegL in connectives(f):
        searches.append((lambda c: {n: (c[2 * j], F0, c[2 * j + 1]) for j, n in enumerate(names)}, 2 * k))
    else:
        searches.append((lambda c: {n: (c[j], F0, F0) for j, n in enumerate(names)}, k))
        searches.append((lambda c: {n: (F1, F0, c[j]) for j, n in enumerate(names)}, k))
    to_hyper = lambda x: INLTriple(*(hy.Standard(c) for c in x))
    for build, width in searches:
        for combo in itertools.product(grid, repeat=width):
            v = build(combo)
            r = _scalar_inl(f, v)
            if r != (F1, F0, F0):
                return {n: to_hyper(x) for n, x in v.items()}, to_hyper(r)
    return None
