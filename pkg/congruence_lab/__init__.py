"""Exact-arithmetic verification of Bernoulli-number congruences."""

__version__ = "0.1.0"
