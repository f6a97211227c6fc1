"""Grid check of the INL axiom schemata, with a witness for each failure."""

import argparse
from dataclasses import dataclass

import mvlogic.neutro as ne
from mvlogic.proofs.hilbert import get_system
from mvlogic.syntax import Var, metavariables, substitute, to_text


@dataclass
class Config:
    points: int = 11


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--points", type=int, default=11)
    cfg = Config(ap.parse_args().points)
    for name, schema in get_system("inl").schemata:
        f = substitute(schema, {m: Var(m.lower()) for m in metavariables(schema)})
        r = ne.inl_grid_failure(f, cfg.points)
        if r is None:
            print(f"{name}: designated  {to_text(f)}")
        else:
            v, value = r
            shown = ", ".join(f"{k}={x}" for k, x in v.items())
            print(f"{name}: FAILS at {shown} -> {value}")


if __name__ == "__main__":
    main()
