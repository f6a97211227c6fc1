"""How much of the {0, top}-preserving clone the Łukasiewicz generators reach."""

import argparse
from dataclasses import dataclass

import mvlogic.matrices as mx


@dataclass
class Config:
    n_values: int = 3
    depth: int = 6


def generators(n):
    top = n - 1
    return [lambda x: top - x, lambda x, y: min(top, top - x + y)]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()
    cfg = Config(args.n, args.depth)
    total = mx.extreme_preserving_count(cfg.n_values, 2)
    for d in range(cfg.depth + 1):
        clone = mx.clone_closure(generators(cfg.n_values), cfg.n_values, depth=d)
        sound = all(mx.preserves_extremes(t, cfg.n_values, 2) for t in clone.functions)
        print(f"depth {d}: {len(clone.functions):5d}/{total} binary, "
              f"{len(clone.unary()):3d} unary, sound={sound}")


if __name__ == "__main__":
    main()
