#file for Fermat and Wilson quotients and the power sums built on them
"""
Fermat quotients q_a = (a^{p-1} - 1)/p, the Wilson quotient
w_p = ((p-1)! + 1)/p, sums of powers S_m(n) = 1^m + ... + (n-1)^m and the
weighted sums sum_a a^t q_a^m that most congruences are about.

Quotients are kept as exact integers; reduction happens when a sum is
taken, so cubes of quotients never lose headroom.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from congruence_lab.errors import BaseOutOfRange
from congruence_lab.exact_arith import PadicResidue, mod_inverse


def fermat_quotient(p: int, a: int) -> int:
    if not 1 <= a <= p - 1:
        raise BaseOutOfRange(f"base {a} outside [1, {p - 1}]")
    return (a ** (p - 1) - 1) // p


def wilson_quotient(p: int) -> int:
    return (factorial(p - 1) + 1) // p


def power_sum(m: int, n: int) -> int:
    """S_m(n) = sum of i^m for 1 <= i <= n-1."""
    if m < 0 or n < 1:
        raise ValueError(f"power_sum needs m >= 0 and n >= 1, got m={m}, n={n}")
    return sum(i ** m for i in range(1, n))


def power_sum_residue(m: int, n: int, p: int, K: int) -> PadicResidue:
    modulus = p ** K
    return PadicResidue(p, K, sum(pow(i, m, modulus) for i in range(1, n)) % modulus)


@dataclass(frozen=True)
class QuotientTable:
    prime: int
    precision: int
    q: tuple[int, ...]
    w_p: int

    @classmethod
    def build(cls, p: int, K: int) -> QuotientTable:
        return cls(p, K, tuple(fermat_quotient(p, a) for a in range(1, p)), wilson_quotient(p))

    def quotient(self, a: int) -> int:
        if not 1 <= a <= self.prime - 1:
            raise BaseOutOfRange(f"base {a} outside [1, {self.prime - 1}]")
        return self.q[a - 1]

    def bases(self) -> range:
        return range(1, self.prime)


@dataclass(frozen=True)
class WeightedPowerSum:
    """Exact sum_a a^t q_a^m for t >= 0, computed by literal summation."""

    prime: int
    exponent: int
    quotient_power: int
    value: int

    @classmethod
    def compute(cls, table: QuotientTable, t: int, m: int) -> WeightedPowerSum:
        if t < 0:
            raise ValueError("exact weighted sums need t >= 0; use weighted_power_sum for inverse powers")
        _check_quotient_power(m)
        value = sum(a ** t * table.quotient(a) ** m for a in table.bases())
        return cls(table.prime, t, m, value)


def _check_quotient_power(m: int) -> None:
    if m not in (0, 1, 2, 3):
        raise ValueError(f"quotient power must be in 0..3, got {m}")


def weighted_power_sum(table: QuotientTable, t: int, m: int, K: int) -> PadicResidue:
    """sum_a a^t q_a^m mod p^K; a negative t uses inverse powers of a."""
    _check_quotient_power(m)
    p = table.prime
    modulus = p ** K
    total = 0
    for a in table.bases():
        base = a if t >= 0 else mod_inverse(a, p, K).value
        total += pow(base, abs(t), modulus) * pow(table.quotient(a), m, modulus)
    return PadicResidue(p, K, total % modulus)
