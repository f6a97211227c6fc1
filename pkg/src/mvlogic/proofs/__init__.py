"""Proof checkers for Hilbert, sequent, n-sided sequent and hypersequent calculi."""
