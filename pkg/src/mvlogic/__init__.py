"""Many-valued logic workbench: matrix logics over finite, rational, p-adic,
hyper-valued and neutrosophic domains, proof checkers for their calculi,
and p-adic probability."""

__version__ = "0.1.0"
