"""Exact-arithmetic Gauss maps on symmetric products of algebraic curves."""

__version__ = "0.1.0"
