"""Compare bounded n-sequent proof search with truth-table tautology checking."""

import argparse
import random
import time
from dataclasses import dataclass

import mvlogic.matrices as mx
from mvlogic.proofs import nsequent as ns
from mvlogic.syntax import Connective as C, to_text


@dataclass
class Config:
    n: int = 3
    depth: int = 8
    max_connectives: int = 3
    sample: int = 0  # 0 means the whole corpus
    seed: int = 0


def run(cfg: Config):
    logic = mx.luk(cfg.n)
    corpus = ns.formula_corpus([C.NegL, C.ImpL, C.Meet, C.Join], max_connectives=cfg.max_connectives)
    if cfg.sample:
        corpus = random.Random(cfg.seed).sample(corpus, min(cfg.sample, len(corpus)))
    calc = ns.Calculus(logic)
    stats = {"proved": 0, "failed": 0, "bound": 0, "disagree": []}
    top = cfg.n - 1
    for f in corpus:
        r = ns.prove_bounded(logic, ns.at(cfg.n, top, f), cfg.depth, calc)
        taut = isinstance(mx.tautology_finite(logic, f), mx.Tautology)
        if isinstance(r, ns.NProof):
            stats["proved"] += 1
        elif isinstance(r, ns.ResourceBound):
            stats["bound"] += 1
        else:
            stats["failed"] += 1
        if isinstance(r, ns.NProof) != taut and not isinstance(r, ns.ResourceBound):
            stats["disagree"].append(to_text(f))
    return len(corpus), stats


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--depth", type=int, default=8)
    ap.add_argument("--connectives", type=int, default=3)
    ap.add_argument("--sample", type=int, default=0)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    cfg = Config(a.n, a.depth, a.connectives, a.sample, a.seed)
    t0 = time.perf_counter()
    size, stats = run(cfg)
    print(f"Ł{cfg.n}, depth {cfg.depth}: {size} formulas in {time.perf_counter() - t0:.1f}s")
    print(f"  proved {stats['proved']}, failed {stats['failed']}, resource bound {stats['bound']}")
    print(f"  disagreements: {len(stats['disagree'])}")
    for text in stats["disagree"][:10]:
        print("   ", text)


if __name__ == "__main__":
    main()
