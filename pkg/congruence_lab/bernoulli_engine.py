#file to build exact Bernoulli numbers and their p-adic residues
"""
Exact Bernoulli numbers B_n (with B_1 = -1/2), divided Bernoulli numbers
B_t / t, the Ernvall-Metsankyla residues D_i = (B'_{p-1+i} - B'_i)_1 and
the Agoh-Giuga quotient (1 + p B_{p-1}) / p.

The table is built from integer tangent numbers, so the only rational
step is the final division by 4^n (4^n - 1).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import prod
from pathlib import Path

from sympy import divisors, isprime

from congruence_lab.errors import CongruenceLabError, KummerViolation
from congruence_lab.exact_arith import (
    PadicResidue,
    hensel_digit,
    reduce_mod,
    valuation,
)

logger = logging.getLogger(__name__)

# Sun's pB_{k(p-1)} congruence goes up to k = 5, the largest index any check reads
INDEX_SPAN = 5


def tangent_numbers(count: int) -> list[int]:
    """T_1, T_3, ..., T_{2 count - 1} by the Knuth-Buckholtz integer recurrence."""
    if count <= 0:
        return []
    table = [0] * (count + 1)
    table[1] = 1
    for k in range(2, count + 1):
        table[k] = (k - 1) * table[k - 1]
    for k in range(2, count + 1):
        for j in range(k, count + 1):
            table[j] = (j - k) * table[j - 1] + (j - k + 2) * table[j]
    return table[1:]


class BernoulliCache:
    """Read-only table of B_0..B_max_index."""

    def __init__(self, max_index: int, table: dict[int, Fraction] | None = None):
        if max_index < 1:
            raise ValueError(f"max_index must be >= 1, got {max_index}")
        self.max_index = max_index
        self.table: dict[int, Fraction] = table if table is not None else self._build(max_index)

    @classmethod
    def for_prime_bound(cls, p_max: int) -> BernoulliCache:
        return cls(max(INDEX_SPAN * (p_max - 1), 2))

    @staticmethod
    def _build(max_index: int) -> dict[int, Fraction]:
        logger.debug("building Bernoulli table up to B_%d", max_index)
        table = {0: Fraction(1), 1: Fraction(-1, 2)}
        for n, t in enumerate(tangent_numbers(max_index // 2), start=1):
            sign = 1 if n % 2 == 1 else -1
            four_n = 4 ** n
            table[2 * n] = Fraction(sign * 2 * n * t, four_n * (four_n - 1))
        for n in range(3, max_index + 1, 2):
            table[n] = Fraction(0)
        return table

    def bernoulli(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError(f"Bernoulli index must be >= 0, got {n}")
        if n > self.max_index:
            raise IndexError(f"B_{n} beyond cache bound {self.max_index}")
        return self.table[n]

    def divided(self, t: int) -> Fraction:
        if t < 1:
            raise ValueError(f"divided Bernoulli index must be >= 1, got {t}")
        return self.bernoulli(t) / t

    def dump(self, path: Path) -> None:
        lines = [f"{n} {b.numerator}/{b.denominator}" for n, b in sorted(self.table.items())]
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("wrote %d Bernoulli numbers to %s", len(lines), path)

    @classmethod
    def load(cls, path: Path) -> BernoulliCache:
        table: dict[int, Fraction] = {}
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
            if not line.strip():
                continue
            try:
                index, value = line.split()
                table[int(index)] = Fraction(value)
            except ValueError as exc:
                raise CongruenceLabError(f"{path}:{lineno}: malformed cache line {line!r}") from exc
        max_index = max(table, default=0)
        if sorted(table) != list(range(max_index + 1)) or max_index < 1:
            raise CongruenceLabError(f"{path}: cache is not a contiguous table B_0..B_n")
        logger.info("loaded Bernoulli cache up to B_%d from %s", max_index, path)
        return cls(max_index, table)


_default_cache: BernoulliCache | None = None


def default_cache(min_index: int = 2) -> BernoulliCache:
    """Process-wide cache, rebuilt larger when an index beyond it is requested."""
    global _default_cache
    if _default_cache is None or _default_cache.max_index < min_index:
        bound = max(min_index, 2 * _default_cache.max_index if _default_cache else 64)
        _default_cache = BernoulliCache(bound)
    return _default_cache


def install_cache(cache: BernoulliCache) -> None:
    global _default_cache
    _default_cache = cache


def bernoulli(n: int) -> Fraction:
    return default_cache(n).bernoulli(n)


def divided_bernoulli(t: int) -> Fraction:
    return default_cache(t).divided(t)


def von_staudt_denominator(n: int) -> int:
    """Product of the primes q with (q - 1) | n."""
    return prod(d + 1 for d in divisors(n) if isprime(d + 1))


def is_irregular_pair(p: int, t: int) -> bool:
    return divided_bernoulli(t).numerator % p == 0


def irregular_pairs(p: int) -> list[tuple[int, int]]:
    return [(p, t) for t in range(2, p - 2, 2) if is_irregular_pair(p, t)]


def kummer_difference(p: int, i: int) -> Fraction:
    return divided_bernoulli(p - 1 + i) - divided_bernoulli(i)


def em_residue(p: int, i: int) -> int:
    """D_i = (B'_{p-1+i} - B'_i)_1 for even i in [2, p-3]."""
    if i % 2 or not 2 <= i <= p - 3:
        raise ValueError(f"EM residue needs even i in [2, {p - 3}], got {i}")
    difference = kummer_difference(p, i)
    if valuation(difference, p) < 1:
        raise KummerViolation(f"B'_{p - 1 + i} - B'_{i} is not divisible by {p}")
    return hensel_digit(difference, p, 1)


@lru_cache(maxsize=None)
def em_residue_table(p: int) -> dict[int, int]:
    return {i: em_residue(p, i) for i in range(2, p - 2, 2)}


def agoh_giuga_exact(p: int) -> Fraction:
    return (1 + p * bernoulli(p - 1)) / p


def agoh_giuga(p: int, K: int) -> PadicResidue:
    return reduce_mod(agoh_giuga_exact(p), p, K)
