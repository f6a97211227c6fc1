"""Matrix logics: value domains, truth functions, evaluation and decision helpers."""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from . import hyper as hy
from . import padic as pa
from .order import Order
from .syntax import (Apply, Connective as C, Falsum, GradedConst, MetaVar, Var,
                     Verum, variables)


class UninterpretedConnective(ValueError):
    pass


class DomainError(ValueError):
    """A partial truth function was applied outside its domain."""


@dataclass(frozen=True)
class MatrixLogic:
    id: str
    domain: str  # finite, unit, padic, hyper
    ops: Mapping = field(repr=False)
    bottom: object = None
    top: object = None
    values: Optional[tuple] = None  # only for finite domains, ascending
    params: tuple = ()

    def designated(self, x) -> bool:
        return x == self.top

    @property
    def n(self) -> int:
        if self.values is None:
            raise DomainError(f"{self.id} is not finite")
        return len(self.values)

    def interprets(self, conn: C) -> bool:
        return conn in self.ops

    def apply(self, conn: C, *args):
        try:
            fn = self.ops[conn]
        except KeyError:
            raise UninterpretedConnective(f"{self.id} does not interpret {conn.tag}") from None
        return fn(*args)


def evaluate(logic: MatrixLogic, f, v: Mapping):
    """Value of formula f under valuation v (a map from variable names)."""
    if isinstance(f, Var):
        try:
            return v[f.name]
        except KeyError:
            raise KeyError(f"valuation has no value for {f.name}") from None
    if isinstance(f, Apply):
        return logic.apply(f.conn, *(evaluate(logic, a, v) for a in f.args))
    if isinstance(f, Falsum):
        return logic.bottom
    if isinstance(f, Verum):
        return logic.top
    if isinstance(f, GradedConst):
        if logic.values is None or f.level >= len(logic.values):
            raise DomainError(f"#{f.level} is not a truth constant of {logic.id}")
        return logic.values[f.level]
    if isinstance(f, MetaVar):
        raise ValueError(f"cannot evaluate metavariable {f.name}")
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- finite logics

def _luk_ops(n: int) -> dict:
    t = n - 1
    imp = lambda x, y: min(t, t - x + y)
    neg = lambda x: t - x
    conj = lambda x, y: max(0, x + y - t)
    return {
        C.NegL: neg,
        C.ImpL: imp,
        C.Join: max,
        C.Meet: min,
        C.ConjL: conj,
        C.Oplus: lambda x, y: imp(neg(x), y),
        C.Ominus: lambda x, y: conj(x, neg(y)),
        C.Delta: lambda x: t if x == t else 0,
        C.Iff: lambda x, y: min(imp(x, y), imp(y, x)),
    }


def luk(n: int) -> MatrixLogic:
    """Łukasiewicz Ł_n on {0,..,n-1}, designated n-1."""
    if n < 2:
        raise ValueError("Ł_n needs n >= 2")
    return MatrixLogic(f"luk:{n}", "finite", _luk_ops(n), 0, n - 1, tuple(range(n)), (n,))


def post(n: int) -> MatrixLogic:
    """Post logic on {0,..,n-1}: cyclic negation and max."""
    if n < 2:
        raise ValueError("Post logic needs n >= 2")
    ops = {C.NegPost: lambda x: (x + 1) % n, C.Join: max}
    return MatrixLogic(f"post:{n}", "finite", ops, 0, n - 1, tuple(range(n)), (n,))


# ---------------------------------------------------------------- [0,1] logics

F0, F1 = Fraction(0), Fraction(1)


def _unit_luk_ops() -> dict:
    imp = lambda x, y: min(F1, 1 - x + y)
    neg = lambda x: 1 - x
    conj = lambda x, y: max(F0, x + y - 1)
    return {
        C.NegL: neg,
        C.ImpL: imp,
        C.ConjL: conj,
        C.Join: max,
        C.Meet: min,
        C.Oplus: lambda x, y: imp(neg(x), y),
        C.Ominus: lambda x, y: conj(x, neg(y)),
        C.Delta: lambda x: F1 if x == 1 else F0,
        C.Iff: lambda x, y: min(imp(x, y), imp(y, x)),
    }


def godel_imp(x, y):
    return F1 if x <= y else y


def product_imp(x, y):
    return F1 if x <= y else y / x


def _godel_ops() -> dict:
    return {
        C.ImpG: godel_imp,
        C.NegG: lambda x: godel_imp(x, F0),
        C.Meet: min,
        C.Join: max,
        C.Delta: lambda x: F1 if x == 1 else F0,
        C.Iff: lambda x, y: min(godel_imp(x, y), godel_imp(y, x)),
    }


def _product_meet(x, y):
    return x * product_imp(x, y)


def _product_join(x, y):
    return _product_meet(product_imp(product_imp(x, y), y), product_imp(product_imp(y, x), x))


def _product_ops() -> dict:
    return {
        C.ImpPi: product_imp,
        C.ConjPi: lambda x, y: x * y,
        C.NegPi: lambda x: product_imp(x, F0),
        C.Meet: _product_meet,
        C.Join: _product_join,
        C.Delta: lambda x: F1 if x == 1 else F0,
        C.Iff: lambda x, y: min(product_imp(x, y), product_imp(y, x)),
    }


def luk_inf() -> MatrixLogic:
    return MatrixLogic("luk-inf", "unit", _unit_luk_ops(), F0, F1)


def godel() -> MatrixLogic:
    return MatrixLogic("godel", "unit", _godel_ops(), F0, F1)


def product() -> MatrixLogic:
    return MatrixLogic("product", "unit", _product_ops(), F0, F1)


# nonlinear families; n is a positive integer parameter

def hl_neg(n, x):
    return n * (1 - x) / (n + x)


def hl_imp(n, x, y):
    if x <= y:
        return F1
    d = x - y
    return n * (1 - d) / (n + d)


def hg_neg(n, x):
    return ((1 - x) / (1 + x)) ** n


def hg_imp(n, x, y):
    return F1 if x <= y else (n + 1) * y / (n + x)


def par_neg(n, x):
    return (1 - x * x) / n


def par_imp(n, x, y):
    return F1 if x * x <= y else (1 - x * x) / n + y


def pq_neg(n, x):
    return (1 - x * x) / (1 + Fraction(n, n + 1) * x)


def pq_imp(n, x, y):
    return min(F1, pq_neg(n, x) + y)


def _nonlinear_ops(neg, imp, neg_tag=C.NegL, imp_tag=C.ImpL) -> dict:
    return {
        neg_tag: neg,
        imp_tag: imp,
        C.Join: lambda x, y: imp(imp(x, y), y),
        C.Meet: lambda x, y: neg(max(neg(x), neg(y))),
    }


def _unit_family(name, n, neg, imp, tags=(C.NegL, C.ImpL), lattice=None):
    if n < 1:
        raise ValueError(f"{name} needs n >= 1")
    ng = functools.partial(neg, Fraction(n))
    im = functools.partial(imp, Fraction(n))
    ops = _nonlinear_ops(ng, im, *tags)
    if lattice == "minmax":
        ops[C.Join], ops[C.Meet] = max, min
    return MatrixLogic(f"{name}:{n}", "unit", ops, F0, F1, None, (n,))


def hl(n: int) -> MatrixLogic:
    return _unit_family("hl", n, hl_neg, hl_imp)


def hg(n: int) -> MatrixLogic:
    return _unit_family("hg", n, hg_neg, hg_imp, (C.NegG, C.ImpG), "minmax")


def parabolic(n: int) -> MatrixLogic:
    return _unit_family("par", n, par_neg, par_imp)


def quasiparabolic(n: int) -> MatrixLogic:
    return _unit_family("pq", n, pq_neg, pq_imp)


# ---------------------------------------------------------------- p-adic logics

def _padic_luk_ops(p, K) -> dict:
    top = pa.n_max(p, K)
    zero = pa.zero(p, K)

    def imp(x, y):
        return pa.add(pa.sub(top, pa.pmax(x, y)), y)

    def conj(x, y):
        return pa.complement(imp(x, pa.complement(y)))

    def imp_pi(x, y):
        if pa.leq(x, y).below:
            return top
        if not (pa.is_natural(x) and pa.is_natural(y)):
            raise DomainError("p-adic product implication needs operands that read as naturals")
        return pa.from_int(y.to_int() // x.to_int(), p, K)

    def imp_g(x, y):
        o = pa.leq(x, y)
        if o is Order.INCOMPARABLE:
            raise DomainError(f"Gödel implication undefined on incomparable {x} and {y}")
        return top if o.below else y

    return {
        C.NegL: pa.complement,
        C.ImpL: imp,
        C.ConjL: conj,
        C.Join: pa.pmax,
        C.Meet: pa.pmin,
        C.Oplus: lambda x, y: imp(pa.complement(x), y),
        C.Ominus: lambda x, y: conj(x, pa.complement(y)),
        C.Delta: lambda x: top if x == top else zero,
        C.Iff: lambda x, y: pa.pmin(imp(x, y), imp(y, x)),
        C.ImpPi: imp_pi,
        C.ConjPi: pa.mul,
        C.NegPi: lambda x: top if x == zero else zero,
        C.ImpG: imp_g,
        C.NegG: lambda x: imp_g(x, zero),
    }


def padic_luk(p: int, K: int = pa.DEFAULT_K) -> MatrixLogic:
    return MatrixLogic(f"padic-luk:{p}:{K}", "padic", _padic_luk_ops(p, K),
                       pa.zero(p, K), pa.n_max(p, K), None, (p, K))


def padic_godel(p: int, K: int = pa.DEFAULT_K) -> MatrixLogic:
    full = _padic_luk_ops(p, K)
    ops = {c: full[c] for c in (C.ImpG, C.NegG, C.Meet, C.Join, C.Delta)}
    return MatrixLogic(f"padic-godel:{p}:{K}", "padic", ops,
                       pa.zero(p, K), pa.n_max(p, K), None, (p, K))


def padic_post(p: int, K: int = pa.DEFAULT_K) -> MatrixLogic:
    ops = {C.NegPost: pa.post_succ, C.Join: pa.pmax}
    return MatrixLogic(f"padic-post:{p}:{K}", "padic", ops,
                       pa.zero(p, K), pa.n_max(p, K), None, (p, K))


# ---------------------------------------------------------------- hyper logics

def _hyper_luk_ops() -> dict:
    def conj(x, y):
        return hy.h_conj_luk(x, y)

    return {
        C.NegL: hy.h_neg,
        C.ImpL: hy.h_imp_luk,
        C.ConjL: conj,
        C.Join: hy.hmax,
        C.Meet: hy.hmin,
        C.Oplus: lambda x, y: hy.h_imp_luk(hy.h_neg(x), y),
        C.Ominus: lambda x, y: conj(x, hy.h_neg(y)),
        C.Delta: lambda x: hy.ONE if hy.normalize(x) == hy.ONE else hy.ZERO,
        C.Iff: lambda x, y: hy.hmin(hy.h_imp_luk(x, y), hy.h_imp_luk(y, x)),
    }


def _hyper_godel_ops() -> dict:
    return {
        C.ImpG: hy.h_imp_godel,
        C.NegG: lambda x: hy.h_imp_godel(x, hy.ZERO),
        C.Meet: hy.hmin,
        C.Join: hy.hmax,
    }


def _hyper_product_ops() -> dict:
    imp = hy.h_imp_product

    def meet(x, y):
        return hy.h_mul(x, imp(x, y))

    def join(x, y):
        return meet(imp(imp(x, y), y), imp(imp(y, x), x))

    return {
        C.ImpPi: imp,
        C.ConjPi: hy.h_mul,
        C.NegPi: lambda x: imp(x, hy.ZERO),
        C.Meet: meet,
        C.Join: join,
    }


def _hyper_logic(name, W, ops):
    if W < 1:
        raise ValueError("window size must be >= 1")
    return MatrixLogic(f"{name}:{W}", "hyper", ops, hy.ZERO, hy.ONE, None, (W,))


def hyper_luk(W: int) -> MatrixLogic:
    return _hyper_logic("hyper-luk", W, _hyper_luk_ops())


def hyper_godel(W: int) -> MatrixLogic:
    return _hyper_logic("hyper-godel", W, _hyper_godel_ops())


def hyper_product(W: int) -> MatrixLogic:
    return _hyper_logic("hyper-product", W, _hyper_product_ops())


# ---------------------------------------------------------------- registry

_FACTORIES = {
    "luk": (luk, 1), "post": (post, 1), "hl": (hl, 1), "hg": (hg, 1),
    "pq": (quasiparabolic, 1), "par": (parabolic, 1),
    "padic-luk": (padic_luk, 2), "padic-godel": (padic_godel, 2), "padic-post": (padic_post, 2),
    "hyper-luk": (hyper_luk, 1), "hyper-godel": (hyper_godel, 1), "hyper-product": (hyper_product, 1),
}
_FIXED = {"luk3": lambda: luk(3), "luk-inf": luk_inf, "godel": godel, "product": product}


@functools.lru_cache(maxsize=None)
def get_logic(ident: str) -> MatrixLogic:
    """Look up a logic by identifier such as "luk:4", "padic-luk:2:8" or "hyper-godel:5"."""
    if ident in _FIXED:
        return _FIXED[ident]()
    name, _, rest = ident.partition(":")
    if name not in _FACTORIES or not rest:
        raise KeyError(f"unknown logic {ident!r}")
    fn, nargs = _FACTORIES[name]
    args = [int(a) for a in rest.split(":")]
    if len(args) != nargs:
        raise KeyError(f"logic {name} expects {nargs} numeric parameter(s)")
    return fn(*args)


def parse_value(logic: MatrixLogic, text: str):
    text = text.strip()
    if logic.domain == "finite":
        x = int(text)
        if x not in logic.values:
            raise DomainError(f"{x} is not a truth value of {logic.id}")
        return x
    if logic.domain == "unit":
        return hy._unit(Fraction(text))
    if logic.domain == "padic":
        p, K = logic.params
        return pa.parse_padic(text, p, K)
    if logic.domain == "hyper":
        x = hy.parse_hyper(text)
        if isinstance(x, hy.Window) and x.W != logic.params[0]:
            raise DomainError(f"window size {x.W} != {logic.params[0]}")
        return x
    raise DomainError(logic.domain)


def format_value(x) -> str:
    if isinstance(x, pa.PadicInt):
        return pa.format_padic(x)
    if isinstance(x, (hy.Standard, hy.Window)):
        return hy.format_hyper(x)
    return str(x)


# ---------------------------------------------------------------- tables and tautologies

@dataclass(frozen=True)
class TruthTable:
    conn: C
    values: tuple  # descending order, as row and column headers
    rows: tuple  # rows[i][j] = value at (values[i], values[j]); unary: rows[i] is a 1-tuple


def truth_table(logic: MatrixLogic, conn: C) -> TruthTable:
    if logic.values is None:
        raise DomainError(f"{logic.id} has no finite truth table")
    vals = tuple(sorted(logic.values, reverse=True))
    if conn.arity == 1:
        rows = tuple((logic.apply(conn, x),) for x in vals)
    else:
        rows = tuple(tuple(logic.apply(conn, x, y) for y in vals) for x in vals)
    return TruthTable(conn, vals, rows)


def formula_table(logic: MatrixLogic, f, names=None) -> list:
    """All valuations of f's variables, in descending value order, with the result."""
    names = list(names or sorted(variables(f)))
    vals = sorted(logic.values, reverse=True)
    out = []
    for combo in itertools.product(vals, repeat=len(names)):
        v = dict(zip(names, combo))
        out.append((v, evaluate(logic, f, v)))
    return out


@dataclass(frozen=True)
class Tautology:
    pass


@dataclass(frozen=True)
class Counterexample:
    valuation: dict
    value: object


MAX_VARS = 6


def tautology_finite(logic: MatrixLogic, f, max_vars: int = MAX_VARS):
    """Exhaustive check; the counterexample is the lexicographically first
    failing valuation (variables sorted by name, values ascending)."""
    if logic.values is None:
        raise DomainError(f"{logic.id} is not finite")
    names = sorted(variables(f))
    if len(names) > max_vars:
        raise DomainError(f"{len(names)} variables exceed the bound of {max_vars}")
    for combo in itertools.product(logic.values, repeat=len(names)):
        v = dict(zip(names, combo))
        x = evaluate(logic, f, v)
        if not logic.designated(x):
            return Counterexample(v, x)
    return Tautology()


def unit_grid(points: int = 21) -> list:
    return [Fraction(i, points - 1) for i in range(points)]


def grid_valid(logic: MatrixLogic, f, grid=None):
    """Tautology or the first grid valuation that is not designated."""
    grid = grid if grid is not None else unit_grid()
    names = sorted(variables(f))
    for combo in itertools.product(grid, repeat=len(names)):
        v = dict(zip(names, combo))
        x = evaluate(logic, f, v)
        if not logic.designated(x):
            return Counterexample(v, x)
    return Tautology()


def count_logics(n: int, arities) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    out = 1
    for m in arities:
        out *= n ** (n ** m)
    return out


# ---------------------------------------------------------------- Euler chain

def totient(n: int) -> int:
    result, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def euler_chain(n: int):
    """Iterate k -> totient(k) + 1 from n until a prime (a fixed point) is hit."""
    if n < 2:
        raise ValueError("n must be at least 2")
    chain = [n]
    while not pa.is_prime(chain[-1]):
        chain.append(totient(chain[-1]) + 1)
    return chain[-1], chain


# ---------------------------------------------------------------- convergence

def _limit_ops(family: str):
    if family == "HG":
        return godel()
    return luk_inf()


FAMILIES = {"HL": hl, "HG": hg, "Pquasi": quasiparabolic, "P": parabolic}


def converge_check(family: str, n: int, grid_points: int = 101) -> dict:
    """Largest absolute deviation over the grid, per connective, from the limit logic."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    fam = FAMILIES[family](n)
    lim = _limit_ops(family)
    grid = unit_grid(grid_points)
    out = {}
    for conn in fam.ops:
        if conn.arity == 1:
            out[conn.tag] = max(abs(fam.apply(conn, x) - lim.apply(conn, x)) for x in grid)
        else:
            out[conn.tag] = max(abs(fam.apply(conn, x, y) - lim.apply(conn, x, y))
                                for x in grid for y in grid)
    return out


# ---------------------------------------------------------------- shifted structure on [-1, 0]

def shift(t: Fraction) -> Fraction:
    return t - 1


def shifted_imp(x, y):
    return min(F0, y - x)


def shifted_conj(x, y):
    return max(Fraction(-1), x + y)


def shift_homomorphism_failures(grid=None) -> list:
    """Grid pairs where s(op(x,y)) != op'(s x, s y) for the implication or strong conjunction."""
    grid = grid if grid is not None else unit_grid()
    L = luk_inf()
    bad = []
    for x in grid:
        for y in grid:
            if shift(L.apply(C.ImpL, x, y)) != shifted_imp(shift(x), shift(y)):
                bad.append(("imp", x, y))
            if shift(L.apply(C.ConjL, x, y)) != shifted_conj(shift(x), shift(y)):
                bad.append(("conj", x, y))
    return bad


# ---------------------------------------------------------------- clones

def preserves_extremes(fn, n_values: int, arity: int) -> bool:
    """Whether fn maps tuples over {0, top} into {0, top}; fn is a callable or a table."""
    top = n_values - 1
    call = fn if callable(fn) else (lambda *xs: fn[_index(xs, n_values)])
    for xs in itertools.product((0, top), repeat=arity):
        if call(*xs) not in (0, top):
            return False
    return True


def _index(xs, n):
    i = 0
    for x in xs:
        i = i * n + x
    return i


@dataclass(frozen=True)
class CloneResult:
    n_values: int
    functions: frozenset  # binary tables: tuple of f(x,y) at index x*n+y
    depth: int

    def unary(self) -> set:
        """Members that ignore their second argument, as unary tables."""
        n = self.n_values
        out = set()
        for t in self.functions:
            if all(t[x * n + y] == t[x * n] for x in range(n) for y in range(n)):
                out.add(tuple(t[x * n] for x in range(n)))
        return out


def clone_closure(generators, n_values: int, max_arity: int = 2, depth: int = 6) -> CloneResult:
    """Binary functions reachable from the projections by applying generators
    (unary or binary callables), swapping and identifying variables.

    Each round composes the generators with everything found so far.
    """
    if max_arity != 2:
        raise ValueError("only max_arity=2 is supported")
    if depth < 0 or depth > 12:
        raise ValueError("depth must be in 0..12")
    n = n_values
    if n ** (n * n) > 10 ** 7:
        raise ValueError("too many binary functions to enumerate")
    pts = [(x, y) for x in range(n) for y in range(n)]
    swap = np.array([y * n + x for x, y in pts])
    diag_x = np.array([x * n + x for x, _ in pts])
    diag_y = np.array([y * n + y for _, y in pts])
    weights = n ** np.arange(n * n, dtype=np.int64)
    gens = []
    for g in generators:
        ar = g.__code__.co_argcount if hasattr(g, "__code__") else 2
        shape = (n,) * ar
        table = np.zeros(shape, dtype=np.int8)
        for xs in itertools.product(range(n), repeat=ar):
            table[xs] = g(*xs)
        gens.append((ar, table))

    def keys(rows):
        return rows.astype(np.int64) @ weights

    found = np.array([[x for x, _ in pts], [y for _, y in pts]], dtype=np.int8)
    seen = np.zeros(n ** (n * n), dtype=bool)
    seen[keys(found)] = True
    frontier = found
    for _ in range(depth):
        hits = np.zeros_like(seen)
        for rows in (frontier[:, swap], frontier[:, diag_x], frontier[:, diag_y]):
            hits[keys(rows)] = True
        for ar, table in gens:
            if ar == 1:
                hits[keys(table[frontier])] = True
                continue
            for lo in range(0, len(frontier), 256):
                a = frontier[lo:lo + 256][:, None, :]
                b = found[None, :, :]
                hits[keys(table[a, b].reshape(-1, n * n))] = True
                hits[keys(table[b, a].reshape(-1, n * n))] = True
        fresh_keys = np.flatnonzero(hits & ~seen)
        if not len(fresh_keys):
            break
        seen[fresh_keys] = True
        fresh = ((fresh_keys[:, None] // weights[None, :]) % n).astype(np.int8)
        found = np.concatenate([found, fresh])
        frontier = fresh
    return CloneResult(n, frozenset(tuple(int(v) for v in row) for row in found), depth)


def extreme_preserving_count(n_values: int, arity: int) -> int:
    """Number of arity-ary functions on n_values preserving {0, top}."""
    ext = 2 ** arity
    return 2 ** ext * n_values ** (n_values ** arity - ext)


# ---------------------------------------------------------------- t-norm laws

TNORMS = {
    "luk": (C.ConjL, C.ImpL, luk_inf),
    "godel": (C.Meet, C.ImpG, godel),
    "product": (C.ConjPi, C.ImpPi, product),
}


def tnorm_laws(name: str, grid=None) -> dict:
    """Check t-norm, residuation and BL identities on a grid.

    Returns law name -> None when it holds everywhere, else the first
    failing tuple.
    """
    if name not in TNORMS:
        raise ValueError(f"unknown t-norm family {name!r}")
    grid = grid if grid is not None else unit_grid()
    tc, ic, mk = TNORMS[name]
    L = mk()
    t = lambda a, b: L.apply(tc, a, b)
    r = lambda a, b: L.apply(ic, a, b)
    laws = {
        "commutative": lambda x, y, z: t(x, y) == t(y, x),
        "associative": lambda x, y, z: t(x, t(y, z)) == t(t(x, y), z),
        "monotone": lambda x, y, z: x > y or t(x, z) <= t(y, z),
        "unit": lambda x, y, z: t(x, F1) == x,
        "zero": lambda x, y, z: t(x, F0) == 0,
        "residuation": lambda x, y, z: (z <= r(x, y)) == (t(x, z) <= y),
        "divisibility": lambda x, y, z: min(x, y) == t(x, r(x, y)),
        "join": lambda x, y, z: max(x, y) == min(r(r(x, y), y), r(r(y, x), x)),
        "prelinearity": lambda x, y, z: max(r(x, y), r(y, x)) == 1,
    }
    report = {}
    for law, check in laws.items():
        report[law] = next(((x, y, z) for x in grid for y in grid for z in grid
                            if not check(x, y, z)), None)
    return report
