"""Acceptance criteria, one test per criterion.

Each test records its verdict in conftest.ACCEPTANCE so the terminal summary
prints one PASS/FAIL line per criterion. Criteria whose full statement does
not hold are marked xfail(strict=True); their attainable parts are asserted
by ordinary tests next to them.
"""

import copy
import functools
import itertools
import json
import random
import time
from fractions import Fraction as F
from importlib import resources

import pytest

import conftest
import mvlogic.hyper as hy
import mvlogic.matrices as mx
import mvlogic.neutro as ne
import mvlogic.padic as pa
import mvlogic.prob as pr
from mvlogic.order import Order
from mvlogic.proofs import hilbert as hb
from mvlogic.proofs import nsequent as ns
from mvlogic.proofs import sequent as sq
from mvlogic.syntax import Connective as C, Var, app, imp_power, metavariables, parse, substitute

PROOFS = resources.files("mvlogic.data").joinpath("proofs")
p, q = Var("p"), Var("q")
L3 = mx.luk(3)


def record(k, ok, detail):
    conftest.ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def _plain(schema):
    return substitute(schema, {m: Var(m.lower()) for m in metavariables(schema)})


# 1 ---------------------------------------------------------------------------

def test_criterion_01_luk3_tables():
    expected = {
        C.NegL: [[0], [1], [2]],
        C.ImpL: [[2, 1, 0], [2, 2, 1], [2, 2, 2]],
        C.Join: [[2, 2, 2], [2, 1, 1], [2, 1, 0]],
        C.Meet: [[2, 1, 0], [1, 1, 0], [0, 0, 0]],
    }
    tables = all([list(r) for r in mx.truth_table(L3, c).rows] == rows for c, rows in expected.items())
    bad = app(C.ImpL, imp_power(2, p, q), imp_power(1, p, q))
    good = app(C.ImpL, imp_power(3, p, q), imp_power(2, p, q))
    r = mx.tautology_finite(L3, bad)
    ce = isinstance(r, mx.Counterexample) and r.valuation == {"p": 1, "q": 0} and r.value == 1
    rows_bad = [mx.evaluate(L3, bad, {"p": a, "q": b}) for a in (2, 1, 0) for b in (2, 1, 0)]
    taut = isinstance(mx.tautology_finite(L3, good), mx.Tautology)
    ok = tables and ce and taut and rows_bad == [2, 2, 2, 2, 2, 1, 2, 2, 2]
    record(1, ok, f"tables={tables} counterexample={ce} tautology={taut}")
    assert ok


# 2 ---------------------------------------------------------------------------

def test_criterion_02_tuziak_generalization():
    wrong = []
    for n in (3, 4, 5, 6):
        logic = mx.luk(n)
        for k in range(2, n + 3):
            f = app(C.ImpL, imp_power(k, p, q), imp_power(k - 1, p, q))
            if isinstance(mx.tautology_finite(logic, f), mx.Tautology) != (k >= n):
                wrong.append((n, k))
    record(2, not wrong, f"n in 3..6, k in 2..n+2, mismatches={wrong}")
    assert not wrong


# 3 ---------------------------------------------------------------------------

def test_criterion_03_euler_chain():
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 201):
        end, chain = mx.euler_chain(n)
        if not pa.is_prime(end) or chain[-1] != end:
            bad.append(n)
        if pa.is_prime(n) and chain != [n]:
            bad.append(n)
        if any(b >= a for a, b in zip(chain[1:], chain[2:])):
            bad.append(n)
    dt = time.perf_counter() - t0
    ok = not bad and dt < 1
    record(3, ok, f"n in 2..200, failures={bad}, {dt:.3f}s")
    assert ok


# 4 ---------------------------------------------------------------------------

def _fixture(name):
    return json.loads(PROOFS.joinpath(name).read_text(encoding="utf-8"))


def _hilbert_mutants(data):
    out = []
    for i, line in enumerate(data["lines"]):
        d = copy.deepcopy(data)
        d["lines"][i]["formula"] = line["formula"].replace("p", "q", 1)
        out.append(d)
        d = copy.deepcopy(data)
        just = d["lines"][i]["just"]
        if just[0] == "mp":
            d["lines"][i]["just"] = ["mp", just[2], just[1]]
        else:
            d["lines"][i]["just"] = ["axiom", "A3" if just[1] != "A3" else "A1"] + just[2:]
        out.append(d)
    return out[:10]


def _tree_mutants(data, calc):
    rng = random.Random(4)
    names = [r.name for r in calc.rules]
    out, seen = [], set()

    def nodes(t):
        yield t
        for c in t.get("children", []):
            yield from nodes(c)

    while len(out) < 10:
        d = copy.deepcopy(data)
        node = rng.choice(list(nodes(d["proof"])))
        kind = rng.randrange(3)
        if kind == 0:
            node["rule"] = rng.choice([n for n in names if n != node["rule"]])
        elif kind == 1:
            spots = [i for i, ch in enumerate(node["conclusion"]) if ch in "pqr"]
            if not spots:
                continue
            i = rng.choice(spots)
            node["conclusion"] = node["conclusion"][:i] + "s" + node["conclusion"][i + 1:]
        elif node.get("children"):
            node["children"].pop(rng.randrange(len(node["children"])))
        else:
            continue
        key = json.dumps(d, sort_keys=True)
        if key not in seen:
            seen.add(key)
            out.append(d)
    return out


def test_criterion_04_proof_fixtures():
    h, s, m = _fixture("hilbert_identity.json"), _fixture("lk_distributivity.json"), _fixture("mog_axiom.json")
    accepted = [bool(hb.check_script(h)),
                bool(sq.check_sequent_proof(s["calculus"], s["proof"])),
                bool(sq.check_hypersequent_proof(m["calculus"], m["proof"]))]
    rejected = [
        sum(not hb.check_script(d) for d in _hilbert_mutants(h)),
        sum(not sq.check_sequent_proof(d["calculus"], d["proof"])
            for d in _tree_mutants(s, sq.load_calculus(s["calculus"]))),
        sum(not sq.check_hypersequent_proof(d["calculus"], d["proof"])
            for d in _tree_mutants(m, sq.load_calculus(m["calculus"], hyper=True))),
    ]
    ok = all(accepted) and rejected == [10, 10, 10]
    record(4, ok, f"accepted={accepted} mutants rejected={rejected} of 10 each")
    assert ok


# 5 ---------------------------------------------------------------------------

def test_criterion_05_rule_generation():
    expected = {1: {(frozenset({3}),)}, 2: {(frozenset({2}),)}, 3: {(frozenset({1}),)}}
    neg_ok = all(set(ns.generate_rules(L3, C.NegL, i).clauses) == expected[i] for i in (1, 2, 3))
    invalid, checked = [], 0
    for n in (3, 4):
        logic = mx.luk(n)
        for conn in logic.ops:
            for place in range(1, n + 1):
                checked += 1
                if ns.validate_rule(logic, ns.generate_rules(logic, conn, place)) is not None:
                    invalid.append((n, conn.tag, place))
    ok = neg_ok and not invalid
    record(5, ok, f"negation rules match={neg_ok}, {checked} rules validated, invalid={invalid}")
    assert ok


# 6 ---------------------------------------------------------------------------

def test_criterion_06_prover_agreement():
    corpus = ns.formula_corpus([C.NegL, C.ImpL, C.Meet, C.Join], max_connectives=3)
    calc = ns.Calculus(L3)
    agree = taut = 0
    for f in corpus:
        r = ns.prove_bounded(L3, ns.at(3, 2, f), depth=8, calculus=calc)
        t = isinstance(mx.tautology_finite(L3, f), mx.Tautology)
        taut += t
        found = isinstance(r, ns.NProof) and ns.check_nproof(calc, r) is None
        agree += found == t
    ok = agree == len(corpus)
    record(6, ok, f"{agree}/{len(corpus)} agree ({taut} tautologies)")
    assert ok


# 7 ---------------------------------------------------------------------------

def test_criterion_07_shift():
    grid = mx.unit_grid(21)
    failures = mx.shift_homomorphism_failures(grid)
    record(7, not failures, f"{len(grid) ** 2} pairs, failures={len(failures)}")
    assert not failures


# 8 ---------------------------------------------------------------------------

def test_criterion_08_convergence():
    dev = {fam: {n: max(mx.converge_check(fam, n, 101).values()) for n in (10, 100, 1000)}
           for fam in ("HL", "Pquasi", "HG")}
    bounded = all(dev[f][n] <= F(1, n) for f in ("HL", "Pquasi") for n in (10, 100, 1000))
    shrinks = all(dev[f][1000] < dev[f][10] for f in ("HL", "Pquasi"))
    hg = dev["HG"][10] >= dev["HG"][100] >= dev["HG"][1000]
    ok = bounded and shrinks and hg
    detail = " ".join(f"{f}:" + ",".join(f"{float(dev[f][n]):.2e}" for n in (10, 100, 1000)) for f in dev)
    record(8, ok, detail)
    assert ok


# 9 ---------------------------------------------------------------------------

def _padic_invariants(p, K, rng, trials=200):
    rand = lambda: pa.from_int(rng.randrange(p ** K), p, K)
    for _ in range(trials):
        x, y, z = rand(), rand(), rand()
        comp = pa.sub(pa.n_max(p, K), x)
        assert comp.digits == tuple(p - 1 - d for d in x.digits)
        lo, hi = pa.pmin, pa.pmax
        assert lo(x, hi(x, y)) == x and hi(x, lo(x, y)) == x
        assert lo(x, x) == x and hi(x, x) == x
        assert lo(x, y) == lo(y, x) and hi(x, y) == hi(y, x)
        assert lo(x, lo(y, z)) == lo(lo(x, y), z) and hi(x, hi(y, z)) == hi(hi(x, y), z)
        if pa.leq(x, y) is Order.LE:
            assert lo(x, y) == x and hi(x, y) == y
        assert pa.add(x, pa.add(y, z)) == pa.add(pa.add(x, y), z)
        assert pa.mul(x, pa.mul(y, z)) == pa.mul(pa.mul(x, y), z)
        assert pa.mul(x, pa.add(y, z)) == pa.add(pa.mul(x, y), pa.mul(x, z))
        assert pa.add(x, pa.neg(x)) == pa.zero(p, K)
        nx, ny, ns_ = pa.norm(x), pa.norm(y), pa.norm(pa.add(x, y))
        assert ns_.value <= max(nx.value, ny.value) or ns_.saturated
        vx, vy = pa.valuation(x), pa.valuation(y)
        if vx is not None and vy is not None and vx + vy < K:
            assert pa.norm(pa.mul(x, y)).value == nx.value * ny.value


def test_criterion_09_padic_algebra():
    rng = random.Random(9)
    boolean = True
    nm, z = pa.n_max(2, 32), pa.zero(2, 32)
    for _ in range(10000):
        x = pa.from_int(rng.randrange(2 ** 32), 2, 32)
        c = pa.complement(x)
        boolean &= pa.pmax(x, c) == nm and pa.pmin(x, c) == z
    w = pa.one(3, 8)
    witness = pa.pmax(w, pa.complement(w)) != pa.n_max(3, 8)
    suites = []
    for prime in (2, 3, 5):
        for K in (8, 32):
            _padic_invariants(prime, K, rng)
            suites.append((prime, K))
    ok = boolean and witness
    record(9, ok, f"boolean laws at p=2 on 10000 values={boolean}, p=3 witness={witness}, suites={len(suites)}")
    assert ok


# 10 --------------------------------------------------------------------------

def test_criterion_10_padic_order_fixture():
    ok = True
    for K in (6, 16):
        a, b = pa.from_rational(F(-1, 3), 2, K), pa.from_rational(F(-2, 3), 2, K)
        ok &= pa.leq(a, b) is Order.INCOMPARABLE
        ok &= pa.pmin(a, b) == pa.zero(2, K) and pa.pmax(a, b) == pa.n_max(2, K)
    record(10, ok, "-1/3 and -2/3 at p=2, K in {6,16}")
    assert ok


# 11 --------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _criterion_11():
    rng = random.Random(11)
    parts = {}
    towers = True
    for prime in (3, 5, 7):
        for _ in range(50):
            fl = [rng.randrange(1, prime)] + [rng.randrange(prime) for _ in range(3)]
            S = pr.Ensemble(prime, 6, tuple(fl))
            ids = list(range(S.size))
            A = pr.event(rng.sample(ids, rng.randrange(len(ids) + 1)))
            rest = [i for i in ids if not A.contains(i)]
            A2 = pr.event(rng.sample(rest, rng.randrange(len(rest) + 1)))
            PA = pr.event_prob(S, A).value
            towers &= pa.mul(PA, S.volume) == pa.from_int(len(A.ids), prime, 6)
            towers &= pa.add(PA, pr.event_prob(S, ~A).value) == pa.one(prime, 6)
            towers &= pr.event_prob(S, A | A2).value == pa.add(PA, pr.event_prob(S, A2).value)
            if A.ids:
                sub = pr.event(list(A.ids)[: max(1, len(A.ids) // 2)])
                r = pr.bayes(S, A, sub)
                if r.defined:
                    towers &= pa.mul(r.value, PA) == pr.event_prob(S, sub).value
    parts["props 7, 8, 10"] = towers
    parts["P(S_N) = -N"] = all(pr.subensemble_prob(pr.s_minus_one(prime, 8), N).value == pa.from_int(-N, prime, 8)
                               for prime in (2, 3, 5) for N in range(1, 21))
    r = pr.bayes(pr.s_minus_one(2, 8), pr.event([0, 1]), pr.event([0]))
    parts["p=2 bayes undefined"] = not r.defined and r.value_or_none() is None
    counts = {"additivity": [0, 0], "min": [0, 0], "complement": [0, 0]}
    x, y = parse("x"), parse("y")
    for _ in range(1000):
        v = {"x": pa.from_int(rng.randrange(256), 2, 8), "y": pa.from_int(rng.randrange(256), 2, 8)}
        for law, res in pr.probability_axioms(2, 8, x, y, v).items():
            if res is not None:
                counts[law][0] += res
                counts[law][1] += 1
    parts["axiom additivity"] = counts["additivity"][0] == counts["additivity"][1]
    parts["axiom complement"] = counts["complement"][0] == counts["complement"][1]
    parts["axiom min"] = counts["min"][0] == counts["min"][1]
    return parts, counts


def test_criterion_11_attainable_parts():
    parts, _ = _criterion_11()
    for name, ok in parts.items():
        if name != "axiom min":
            assert ok, name


@pytest.mark.xfail(strict=True, reason="min-conjunction axiom of formula probability fails for P = -val")
def test_criterion_11_probability():
    parts, counts = _criterion_11()
    ok = all(parts.values())
    failed = [k for k, v in parts.items() if not v]
    hold = counts["min"]
    record(11, ok, f"failed={failed}; min axiom holds on {hold[0]}/{hold[1]} valuations")
    assert ok


# 12 --------------------------------------------------------------------------

def test_criterion_12_tnorm_bl():
    grid = mx.unit_grid(21)
    laws = {name: mx.tnorm_laws(name, grid) for name in ("luk", "godel", "product")}
    law_fail = {(n, law) for n, rep in laws.items() for law, w in rep.items() if w is not None}
    small = mx.unit_grid(11)
    axiom_fail = []
    for system, mk in [("luk-inf", mx.luk_inf), ("godel", mx.godel), ("product", mx.product),
                       ("bl-luk", mx.luk_inf), ("bl-godel", mx.godel), ("bl-product", mx.product)]:
        lg = mk()
        for name, schema in hb.get_system(system).schemata:
            if not isinstance(mx.grid_valid(lg, _plain(schema), small), mx.Tautology):
                axiom_fail.append((system, name))
    ok = not law_fail and not axiom_fail
    record(12, ok, f"21^3 triples x 3 t-norms, law failures={sorted(law_fail)}, axiom failures={axiom_fail}")
    assert ok


# 13 --------------------------------------------------------------------------

def _random_hyper(rng, W=4):
    r = lambda: F(rng.randrange(13), 12)
    if rng.random() < 0.4:
        return hy.Standard(r())
    return hy.normalize(hy.Window(tuple(r() for _ in range(W))))


def test_criterion_13_hyper_structure():
    rng = random.Random(13)
    incomparable = 0
    ok = True
    for _ in range(10000):
        a, b = _random_hyper(rng), _random_hyper(rng)
        o = hy.hleq(a, b)
        if isinstance(a, hy.Standard) and isinstance(b, hy.Standard):
            ok &= o is not Order.INCOMPARABLE
        if isinstance(a, hy.Standard) and a.q > 0 and isinstance(b, hy.Window):
            ok &= o is Order.GE
        incomparable += o is Order.INCOMPARABLE
        if not hy.lattice_degenerate(a, b):
            lo, hi = hy.hmin(a, b), hy.hmax(a, b)
            ok &= isinstance(lo, (hy.Standard, hy.Window)) and isinstance(hi, (hy.Standard, hy.Window))
            ok &= hy.hmin(a, hi) == a and hy.hmax(a, lo) == a
    cards = [hy.hyperpower_set(n).cardinality for n in (1, 2, 3)]

    def oracle(n):
        regions = [frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
        found = {frozenset()} | {frozenset(r for r in regions if i in r) for i in range(n)}
        while True:
            new = {x | y for x in found for y in found} | {x & y for x in found for y in found}
            if new <= found:
                return len(found)
            found |= new

    ok = ok and incomparable > 0 and cards == [2, 5, 19] and oracle(3) == 19
    record(13, ok, f"10000 pairs, {incomparable} incomparable, |D| = {cards}")
    assert ok


# 14 --------------------------------------------------------------------------

CLASSIFY = [
    ("<1 | empty | 0>", "classical"),
    ("<3/5 | empty | 2/5>", "fuzzy"),
    ("<1/4,1/2 | empty | 1/2,3/4>", "interval-fuzzy"),
    ("<1/5 | empty | 1/2>", "intuitionistic"),
    ("<1/5,1/4 | empty | 1/3,1/2>", "interval-intuitionistic"),
    ("<3/10 | empty | 4/5>", "paraconsistent"),
    ("<1/2,3/5 | empty | 3/5,9/10>", "interval-paraconsistent"),
    ("<1/2 | 1/4 | 1/2>", "general"),
]


@functools.lru_cache(maxsize=None)
def _criterion_14():
    rng = random.Random(14)
    vals = [F(k, 10) for k in range(11)]
    T = lambda *xs: ne.INLTriple(*(hy.Standard(x) for x in xs))
    imp = lambda a, b: ne.inl_apply("hyper", "imp", a, b)
    neg = lambda a: ne.inl_apply("hyper", "neg", a)
    des = lambda a: ne.inl_designated("hyper", a)
    mp = inv = True
    top = T(1, 0, 0)
    boundary = [T(*t) for t in itertools.product((F(0), F(1, 2), F(1)), repeat=3)]
    pairs = [(top, b) for b in boundary] + [(a, top) for a in boundary]
    for _ in range(10000):
        a, b = T(*rng.choices(vals, k=3)), T(*rng.choices(vals, k=3))
        if rng.random() < 0.3:
            a = top
        pairs.append((a, b))
    for a, b in pairs:
        if des(a) and des(imp(a, b)):
            mp &= des(b)
        inv &= neg(neg(a)) == a
    axioms = {name: ne.inl_grid_failure(_plain(schema), 11) is None
              for name, schema in hb.get_system("inl").schemata}
    labels = all(ne.classify_interval_neutro(ne.parse_neutro(t)) == lab for t, lab in CLASSIFY)
    return {"modus ponens": mp, "involution": inv, "classification": labels}, axioms


def test_criterion_14_attainable_parts():
    parts, axioms = _criterion_14()
    assert all(parts.values()), parts
    assert [n for n, ok in axioms.items() if not ok] == ["N7", "N8"]


@pytest.mark.xfail(strict=True, reason="two INL axiom schemata are not designated under the INL matrix")
def test_criterion_14_neutrosophic():
    parts, axioms = _criterion_14()
    failing = [n for n, ok in axioms.items() if not ok]
    ok = all(parts.values()) and not failing
    record(14, ok, f"{parts}; axioms not designated: {failing}")
    assert ok


# 15 --------------------------------------------------------------------------

def test_criterion_15_clone():
    neg = lambda x: 2 - x
    imp = lambda x, y: min(2, 2 - x + y)
    clone = mx.clone_closure([neg, imp], 3, depth=6)
    sound = all(mx.preserves_extremes(t, 3, 2) for t in clone.functions)
    restricted = {(u[0], u[2]) for u in clone.unary()}
    four = restricted == {(0, 0), (0, 2), (2, 0), (2, 2)}
    total = mx.extreme_preserving_count(3, 2)
    ratio = len(clone.functions) / total
    ok = sound and four
    record(15, ok, f"sound={sound}, all 4 maps on {{0,2}} reached={four}, coverage {len(clone.functions)}/{total} = {ratio:.3f}")
    assert ok
