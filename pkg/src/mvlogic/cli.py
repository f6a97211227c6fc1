"""The mvl command line.

Exit codes: 0 success, Accept or Tautology; 1 Reject or counterexample;
2 usage or syntax error; 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import hyper as hy
from . import matrices as mx
from . import neutro as ne
from . import padic as pa
from . import prob
from .syntax import Connective, FormulaSyntaxError, parse, to_text, variables

OK, FAIL, USAGE, DOMAIN = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (pa.PadicInt, hy.Standard, hy.Window)):
        return mx.format_value(x)
    return str(x)


def _emit(args, payload: dict, text: str):
    if getattr(args, "json", False):
        print(json.dumps(_jsonable(payload), ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def _logic(args):
    return mx.get_logic(args.logic)


def _valuation(logic, pairs) -> dict:
    v = {}
    for item in pairs or ():
        name, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"expected name=value, got {item!r}")
        v[name.strip()] = mx.parse_value(logic, val)
    return v


def _fmt_val(v: dict) -> str:
    return ", ".join(f"{k}={mx.format_value(x)}" for k, x in sorted(v.items()))


# ---------------------------------------------------------------- subcommands

def cmd_eval(args):
    logic = _logic(args)
    f = parse(args.formula)
    v = _valuation(logic, args.assign)
    x = mx.evaluate(logic, f, v)
    _emit(args, {"formula": to_text(f), "value": x, "designated": logic.designated(x)},
          mx.format_value(x))
    return OK


def cmd_table(args):
    logic = _logic(args)
    if args.conn:
        conn = Connective.from_name(args.conn)
        t = mx.truth_table(logic, conn)
        vals = [mx.format_value(x) for x in t.values]
        if conn.arity == 1:
            lines = [f"{conn.token} {x} = {mx.format_value(r[0])}" for x, r in zip(vals, t.rows)]
        else:
            lines = ["x\\y " + " ".join(vals)]
            lines += [f"{x}   " + " ".join(mx.format_value(c) for c in r) for x, r in zip(vals, t.rows)]
        _emit(args, {"conn": conn.tag, "values": list(t.values), "rows": [list(r) for r in t.rows]},
              "\n".join(lines))
        return OK
    if not args.formula:
        raise UsageError("table needs --conn or a formula")
    f = parse(args.formula)
    rows = mx.formula_table(logic, f)
    names = sorted(variables(f))
    lines = [" ".join(names) + " | " + to_text(f)]
    lines += [" ".join(mx.format_value(v[n]) for n in names) + " | " + mx.format_value(x) for v, x in rows]
    _emit(args, {"formula": to_text(f), "rows": [{"valuation": v, "value": x} for v, x in rows]},
          "\n".join(lines))
    return OK


def cmd_taut(args):
    logic = _logic(args)
    f = parse(args.formula)
    if logic.values is not None:
        r = mx.tautology_finite(logic, f)
    elif logic.domain == "unit":
        r = mx.grid_valid(logic, f, mx.unit_grid(args.grid))
    else:
        raise mx.DomainError(f"taut supports finite logics and [0,1] grids, not {logic.domain}")
    if isinstance(r, mx.Tautology):
        _emit(args, {"formula": to_text(f), "tautology": True}, "tautology")
        return OK
    _emit(args, {"formula": to_text(f), "tautology": False, "valuation": r.valuation, "value": r.value},
          f"counterexample: {_fmt_val(r.valuation)} gives {mx.format_value(r.value)}")
    return FAIL


def cmd_prove_check(args):
    from .proofs import hilbert, sequent
    with open(args.file, encoding="utf-8") as fh:
        data = json.load(fh)
    if args.kind == "hilbert":
        r = hilbert.check_script(data)
    else:
        calc = args.calculus or data.get("calculus")
        if not calc:
            raise UsageError("no calculus given")
        proof = data.get("proof", data)
        check = sequent.check_sequent_proof if args.kind == "sequent" else sequent.check_hypersequent_proof
        try:
            r = check(calc, proof)
        except sequent.UnknownRule as e:
            raise UsageError(str(e.args[0])) from None
    if isinstance(r, hilbert.Accept):
        concl = r.conclusion if isinstance(r.conclusion, str) else to_text(r.conclusion)
        _emit(args, {"accepted": True, "conclusion": concl}, f"accept: {concl}")
        return OK
    _emit(args, {"accepted": False, "at": r.line, "reason": r.reason}, f"reject at {r.line}: {r.reason}")
    return FAIL


def cmd_rulegen(args):
    from .proofs.nsequent import generate_rules, validate_rule
    logic = _logic(args)
    conn = Connective.from_name(args.conn)
    places = [args.place] if args.place else range(1, logic.n + 1)
    out, lines, bad = [], [], False
    for i in places:
        rule = generate_rules(logic, conn, i)
        cex = validate_rule(logic, rule)
        bad |= cex is not None
        out.append({"rule": rule.name, "premises": [[sorted(r) for r in c] for c in rule.clauses],
                    "valid": cex is None})
        lines.append(rule.text() + ("" if cex is None else f"   INVALID at {cex}"))
    _emit(args, {"rules": out}, "\n".join(lines))
    return FAIL if bad else OK


def cmd_prove(args):
    from .proofs.nsequent import NProof, ResourceBound, at, parse_nsequent, prove_bounded
    logic = _logic(args)
    if logic.values is None:
        raise mx.DomainError("bounded search needs a finite logic")
    if args.sequent:
        s = parse_nsequent(args.formula)
    else:
        s = at(logic.n, logic.n - 1, parse(args.formula))
    r = prove_bounded(logic, s, args.depth)
    if isinstance(r, NProof):
        _emit(args, {"proved": True, "depth": r.depth, "size": r.size()},
              f"proved: depth {r.depth}, {r.size()} nodes")
        return OK
    if isinstance(r, ResourceBound):
        _emit(args, {"proved": False, "resource_bound": r.depth}, f"depth bound {r.depth} exceeded")
        return DOMAIN
    _emit(args, {"proved": False, "open_leaf": str(r.leaf)}, f"no proof; open leaf {r.leaf}")
    return FAIL


_PADIC_UNARY = {
    "neg": pa.complement, "minus": pa.neg, "succ": pa.post_succ, "inv": pa.inverse,
    "norm": lambda x: pa.norm(x).value, "val": pa.valuation, "show": lambda x: x,
}
_PADIC_BINARY = {
    "add": pa.add, "sub": pa.sub, "mul": pa.mul, "div": pa.divide,
    "min": pa.pmin, "max": pa.pmax, "leq": lambda x, y: pa.leq(x, y).name,
}


def cmd_padic(args):
    vals = [pa.parse_padic(t, args.p, args.K) for t in args.values]
    if args.op in _PADIC_UNARY and len(vals) == 1:
        r = _PADIC_UNARY[args.op](vals[0])
    elif args.op in _PADIC_BINARY and len(vals) == 2:
        r = _PADIC_BINARY[args.op](*vals)
    else:
        raise UsageError(f"unknown operation {args.op!r} for {len(vals)} argument(s)")
    text = mx.format_value(r) if isinstance(r, pa.PadicInt) else str(r)
    _emit(args, {"op": args.op, "result": r}, text)
    return OK


_HYPER_OPS = {"min": hy.hmin, "max": hy.hmax, "leq": lambda x, y: hy.hleq(x, y).name,
              "imp-godel": hy.h_imp_godel, "imp-product": hy.h_imp_product}


def cmd_hyper(args):
    vals = [hy.parse_hyper(t) for t in args.values]
    if args.window:
        for x in vals:
            if isinstance(x, hy.Window) and x.W != args.window:
                raise hy.WindowMismatch(f"window size {x.W} != {args.window}")
    if args.op in hy.ARITH:
        r = hy.hyper_arith(args.op, *vals)
    elif args.op in _HYPER_OPS and len(vals) == 2:
        r = _HYPER_OPS[args.op](*vals)
    else:
        raise UsageError(f"unknown hyper operation {args.op!r}")
    text = hy.format_hyper(r) if isinstance(r, (hy.Standard, hy.Window)) else str(r)
    _emit(args, {"op": args.op, "result": r}, text)
    return OK


def cmd_dsm(args):
    d = hy.hyperpower_set(args.n)
    exprs = d.expressions()
    _emit(args, {"n": args.n, "cardinality": d.cardinality, "elements": exprs},
          f"|D^Θ| = {d.cardinality}" + ("\n" + "\n".join(exprs) if args.list else ""))
    return OK


def cmd_neutro(args):
    if args.action == "classify":
        if len(args.values) != 1:
            raise UsageError("classify takes one value")
        label = ne.classify_interval_neutro(ne.parse_neutro(args.values[0]))
        _emit(args, {"label": label}, label)
        return OK
    if not args.op:
        raise UsageError("apply needs --op")
    vals = [ne.parse_neutro(t) for t in args.values]
    fn = {"not": ne.neutro_complement, "imp": ne.neutro_implication,
          "and": ne.neutro_intersection}.get(args.op)
    if fn is None:
        raise UsageError(f"unknown neutrosophic operation {args.op!r}")
    r = fn(args.flavor, *vals)
    _emit(args, {"result": str(r)}, str(r))
    return OK


def cmd_prob(args):
    if args.action == "formula":
        if args.p is None or args.K is None:
            raise UsageError("prob formula needs --p and --K")
        logic = mx.padic_luk(args.p, args.K)
        f = parse(args.args[0])
        v = _valuation(logic, args.args[1:])
        r = prob.formula_prob(args.p, args.K, f, v)
        _emit(args, {"probability": r, "signed": r.to_signed()}, f"{mx.format_value(r)}  ({r.to_signed()})")
        return OK
    with open(args.args[0], encoding="utf-8") as fh:
        ef = prob.parse_ensemble(fh.read())
    names = args.args[1:]
    try:
        events = [ef.events[n] for n in names]
    except KeyError as e:
        raise UsageError(f"no event {e.args[0]!r} in the ensemble file") from None
    if args.action == "event":
        if len(events) != 1:
            raise UsageError("prob event takes one event name")
        r = prob.event_prob(ef.ensemble, events[0])
    else:
        if len(events) != 2:
            raise UsageError("prob bayes takes the events A and B")
        r = prob.bayes(ef.ensemble, events[0], events[1])
    payload = {"numerator": r.numerator, "denominator": r.denominator, "defined": r.defined}
    if not r.defined:
        _emit(args, payload, "undefined at this precision: the denominator is not a unit")
        return DOMAIN
    payload["value"] = r.value
    payload["signed"] = r.value.to_signed()
    _emit(args, payload, f"{mx.format_value(r.value)}  ({r.value.to_signed()})")
    return OK


def cmd_converge(args):
    r = mx.converge_check(args.family, args.n, args.grid)
    _emit(args, {"family": args.family, "n": args.n, "deviation": {k: str(v) for k, v in r.items()}},
          "\n".join(f"{k}: {float(v):.6g}" for k, v in r.items()))
    return OK


def cmd_laws(args):
    grid = mx.unit_grid(args.grid)
    if args.which == "tnorm":
        r = mx.tnorm_laws(args.name, grid)
        failed = {k: v for k, v in r.items() if v is not None}
        _emit(args, {"laws": r}, "\n".join(f"{k}: {'ok' if v is None else 'fails at ' + str(v)}"
                                           for k, v in r.items()))
        return FAIL if failed else OK
    from .proofs.hilbert import get_system
    system = get_system(args.name)
    logic = {"ImpL": mx.luk_inf, "ImpG": mx.godel, "ImpPi": mx.product}[system.implication.tag]()
    out, bad = {}, False
    for name, schema in system.schemata:
        f = _schema_formula(schema)
        r = mx.grid_valid(logic, f, grid)
        out[name] = None if isinstance(r, mx.Tautology) else _fmt_val(r.valuation)
        bad |= out[name] is not None
    _emit(args, {"system": system.id, "axioms": out},
          "\n".join(f"{k}: {'designated' if v is None else 'fails at ' + v}" for k, v in out.items()))
    return FAIL if bad else OK


def _schema_formula(schema):
    from .syntax import Var, metavariables, substitute
    return substitute(schema, {m: Var(m.lower()) for m in metavariables(schema)})


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")

    p = argparse.ArgumentParser(prog="mvl", description="Many-valued logic workbench.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(func=fn)
        return sp

    s = cmd("eval", cmd_eval, "evaluate a formula")
    s.add_argument("--logic", default="luk3")
    s.add_argument("formula")
    s.add_argument("assign", nargs="*", help="name=value")

    s = cmd("table", cmd_table, "truth table of a connective or formula")
    s.add_argument("--logic", default="luk3")
    s.add_argument("--conn")
    s.add_argument("formula", nargs="?")

    s = cmd("taut", cmd_taut, "tautology check")
    s.add_argument("--logic", default="luk3")
    s.add_argument("--grid", type=int, default=21, help="grid points for [0,1] logics")
    s.add_argument("formula")

    s = cmd("prove-check", cmd_prove_check, "check a proof script")
    s.add_argument("kind", choices=["hilbert", "sequent", "hyperseq"])
    s.add_argument("file")
    s.add_argument("--calculus")

    s = cmd("rulegen", cmd_rulegen, "introduction rules from a truth table")
    s.add_argument("--logic", default="luk3")
    s.add_argument("--conn", required=True)
    s.add_argument("--place", type=int)

    s = cmd("prove", cmd_prove, "bounded cut-free proof search")
    s.add_argument("--logic", default="luk3")
    s.add_argument("--depth", type=int, default=16)
    s.add_argument("--sequent", action="store_true", help="read an n-sequent 'A | B | C' instead of a formula")
    s.add_argument("formula")

    s = cmd("padic", cmd_padic, "p-adic calculator")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--K", type=int, default=pa.DEFAULT_K)
    s.add_argument("op")
    s.add_argument("values", nargs="+")

    s = cmd("hyper", cmd_hyper, "hyper-valued calculator")
    s.add_argument("--window", type=int)
    s.add_argument("op")
    s.add_argument("values", nargs="+")

    s = cmd("dsm", cmd_dsm, "hyper-power set of a frame")
    s.add_argument("n", type=int)
    s.add_argument("--list", action="store_true")

    s = cmd("neutro", cmd_neutro, "neutrosophic operations and classification")
    s.add_argument("action", choices=["apply", "classify"])
    s.add_argument("values", nargs="+")
    s.add_argument("--flavor", default="L")
    s.add_argument("--op")

    s = cmd("prob", cmd_prob, "p-adic probability")
    s.add_argument("action", choices=["event", "bayes", "formula"])
    s.add_argument("args", nargs="+")
    s.add_argument("--p", type=int)
    s.add_argument("--K", type=int)

    s = cmd("converge", cmd_converge, "deviation of a nonlinear family from its limit")
    s.add_argument("family", choices=sorted(mx.FAMILIES))
    s.add_argument("n", type=int)
    s.add_argument("--grid", type=int, default=101)

    s = cmd("laws", cmd_laws, "t-norm laws or Hilbert axioms on a grid")
    s.add_argument("which", choices=["tnorm", "bl"])
    s.add_argument("name")
    s.add_argument("--grid", type=int, default=21)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE
    if getattr(args, "seed", None) is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except (UsageError, FormulaSyntaxError, KeyError, FileNotFoundError, json.JSONDecodeError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"mvl: error: {msg}", file=sys.stderr)
        return USAGE
    except (mx.DomainError, mx.UninterpretedConnective, prob.UndefinedProbability,
            ZeroDivisionError, ArithmeticError, ValueError) as e:
        print(f"mvl: domain error: {e}", file=sys.stderr)
        return DOMAIN


if __name__ == "__main__":
    sys.exit(main())
