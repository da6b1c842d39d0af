"""Exact arithmetic for type-A KLR diagram algebras, cyclotomic quotients, and branching combinatorics."""

__version__ = "0.1.0"
