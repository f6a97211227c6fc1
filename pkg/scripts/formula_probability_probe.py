"""Check the formula-probability axioms over random p-adic valuations."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

import mvlogic.padic as pa
import mvlogic.prob as pr
from mvlogic.syntax import parse


@dataclass
class Config:
    p: int = 2
    K: int = 8
    trials: int = 1000
    seed: int = 22
    left: str = "x"
    right: str = "y"


def run(cfg: Config):
    rng = random.Random(cfg.seed)
    f, g = parse(cfg.left), parse(cfg.right)
    held, tried = Counter(), Counter()
    witness = None
    for _ in range(cfg.trials):
        v = {name: pa.from_int(rng.randrange(cfg.p ** cfg.K), cfg.p, cfg.K) for name in ("x", "y")}
        for law, ok in pr.probability_axioms(cfg.p, cfg.K, f, g, v).items():
            if ok is None:
                continue
            tried[law] += 1
            held[law] += ok
            if law == "min" and not ok and witness is None:
                witness = v
    return held, tried, witness


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--K", type=int, default=8)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=22)
    a = ap.parse_args()
    held, tried, witness = run(Config(a.p, a.K, a.trials, a.seed))
    for law in sorted(tried):
        print(f"{law:11s} holds on {held[law]}/{tried[law]}")
    if witness:
        print("first min failure:", {k: pa.format_padic(x) for k, x in witness.items()})


if __name__ == "__main__":
    main()
