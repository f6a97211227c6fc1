"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from mvlogic import hyper as hy
from mvlogic import padic as pa
from mvlogic.syntax import Apply, Connective, Falsum, GradedConst, MetaVar, Var, Verum

NAMES = ("p", "q", "r")


def formulas(names=NAMES, conns=tuple(Connective), max_leaves=12, constants=True):
    leaves = st.sampled_from([Var(n) for n in names])
    if constants:
        leaves = leaves | st.sampled_from([Falsum(), Verum()]) | st.builds(GradedConst, st.integers(0, 5))
    conns = list(conns)

    def extend(children):
        return st.sampled_from(conns).flatmap(
            lambda c: st.tuples(*[children] * c.arity).map(lambda args: Apply(c, args)))

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def schemata(metas=("A", "B", "C"), conns=tuple(Connective)):
    leaves = st.sampled_from([MetaVar(m) for m in metas])
    conns = list(conns)

    def extend(children):
        return st.sampled_from(conns).flatmap(
            lambda c: st.tuples(*[children] * c.arity).map(lambda args: Apply(c, args)))

    return st.recursive(leaves, extend, max_leaves=8)


def padics(p, K):
    return st.integers(0, p ** K - 1).map(lambda n: pa.from_int(n, p, K))


def unit_rationals(max_den=12):
    return st.integers(1, max_den).flatmap(
        lambda d: st.integers(0, d).map(lambda k: Fraction(k, d)))


def standards():
    return unit_rationals().map(hy.Standard)


def windows(W=4):
    return st.lists(unit_rationals(), min_size=W, max_size=W).map(lambda xs: hy.normalize(hy.Window(tuple(xs))))


def hyper_values(W=4):
    return standards() | windows(W)
