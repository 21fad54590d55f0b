"""
Per-prime cache bundle handed to every check evaluator.

Everything is computed lazily on first use and never mutated afterwards,
so a context can be built inside a worker process and discarded with it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from congruence_lab.bernoulli_engine import (
    agoh_giuga_exact,
    bernoulli,
    divided_bernoulli,
    em_residue_table,
)
from congruence_lab.combinatorics import StirlingRow, stirling_row
from congruence_lab.exact_arith import Exact, PadicResidue, mod_inverse, reduce_mod
from congruence_lab.hensel_lifts import LiftFamily, LiftTag
from congruence_lab.quotient_tables import QuotientTable, weighted_power_sum

logger = logging.getLogger(__name__)

DEFAULT_MAX_TWO_N = 40
DEFAULT_MAX_ORDER = 40


@dataclass
class PrimeContext:
    prime: int
    precision: int
    max_two_n: int = DEFAULT_MAX_TWO_N
    max_order: int = DEFAULT_MAX_ORDER
    _families: dict[LiftTag, LiftFamily] = field(default_factory=dict, repr=False)
    _sums: dict[tuple[int, int, int], int] = field(default_factory=dict, repr=False)

    @property
    def p(self) -> int:
        return self.prime

    @cached_property
    def quotients(self) -> QuotientTable:
        logger.debug("building quotient table for p=%d", self.prime)
        return QuotientTable.build(self.prime, self.precision)

    def q(self, a: int) -> int:
        return self.quotients.quotient(a)

    @property
    def w_p(self) -> int:
        return self.quotients.w_p

    @cached_property
    def ag(self) -> Fraction:
        """Agoh-Giuga quotient (1 + pB_{p-1})/p, exact."""
        return agoh_giuga_exact(self.prime)

    @cached_property
    def em(self) -> dict[int, int]:
        return em_residue_table(self.prime)

    @cached_property
    def stirling(self) -> StirlingRow:
        return stirling_row(self.prime)

    @staticmethod
    def B(n: int) -> Fraction:
        return bernoulli(n)

    @staticmethod
    def D(t: int) -> Fraction:
        """Divided Bernoulli number B_t / t."""
        return divided_bernoulli(t)

    def res(self, x: Exact | PadicResidue, k: int = 1) -> int:
        return reduce_mod(x, self.prime, k).value

    def inv(self, a: int, k: int = 1) -> int:
        return mod_inverse(a, self.prime, k).value

    def bases(self) -> range:
        return range(1, self.prime)

    def wsum(self, t: int, m: int, k: int = 1) -> int:
        """sum_a a^t q_a^m mod p^k; negative t means inverse powers."""
        key = (t, m, k)
        if key not in self._sums:
            self._sums[key] = weighted_power_sum(self.quotients, t, m, k).value
        return self._sums[key]

    def family(self, tag: LiftTag) -> LiftFamily:
        if tag not in self._families:
            self._families[tag] = LiftFamily.build(self.prime, tag, self.precision)
        return self._families[tag]

    def correction(self, tag: LiftTag, a: int) -> int:
        return self.family(tag).correction(a).value
