"""Grid deviation of the nonlinear families from their limit logics."""

import argparse
from dataclasses import dataclass, field

import mvlogic.matrices as mx


@dataclass
class Config:
    families: list = field(default_factory=lambda: ["HL", "HG", "P", "Pquasi"])
    sizes: list = field(default_factory=lambda: [10, 100, 1000])
    grid: int = 101


def run(cfg: Config):
    rows = []
    for fam in cfg.families:
        for n in cfg.sizes:
            dev = mx.converge_check(fam, n, cfg.grid)
            rows.append((fam, n, dev))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=101)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10, 100, 1000])
    args = ap.parse_args()
    cfg = Config(sizes=args.sizes, grid=args.grid)
    for fam, n, dev in run(cfg):
        cells = "  ".join(f"{c}={float(d):.3e}" for c, d in dev.items())
        print(f"{fam:7s} n={n:<5d} 1/n={1 / n:.3e}  {cells}")


if __name__ == "__main__":
    main()
