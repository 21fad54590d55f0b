"""
Harmonic numbers, generalized harmonic sums, multiple harmonic sums and
the unsigned Stirling row of the falling factorial on p letters.

All quantities are exact. Multiple harmonic sums come from the product
expansion prod_{i<=n} (i + x), whose coefficients are integers, and are
cross-checked against Newton's identities on the power sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from congruence_lab.errors import CongruenceLabError, HypothesisOutOfRange
from congruence_lab.exact_arith import PadicResidue, reduce_mod


_HARMONIC_PREFIXES: dict[int, list[Fraction]] = {}


def generalized_harmonic(n: int, k: int) -> Fraction:
    """H_{n,k} = sum_{x<=n} 1/x^k."""
    if n < 0:
        raise ValueError(f"harmonic order must be >= 0, got {n}")
    prefix = _HARMONIC_PREFIXES.setdefault(k, [Fraction(0)])
    for x in range(len(prefix), n + 1):
        prefix.append(prefix[-1] + Fraction(1, x ** k))
    return prefix[n]


def harmonic(t: int) -> Fraction:
    return generalized_harmonic(t, 1)


def harmonic_window(start: int, stop: int) -> Fraction:
    """sum of 1/j for start <= j <= stop (j may be a multiple of p)."""
    return harmonic(stop) - harmonic(start - 1)


def wolstenholme_sums(p: int) -> tuple[Fraction, Fraction]:
    """H_1 and H_2 over the first p-1 reciprocals."""
    return generalized_harmonic(p - 1, 1), generalized_harmonic(p - 1, 2)


@lru_cache(maxsize=None)
def rising_coefficients(n: int) -> tuple[int, ...]:
    """Coefficients of prod_{i=1}^{n} (i + x), constant term first."""
    coeffs = [1]
    for i in range(1, n + 1):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] += i * c
            nxt[k + 1] += c
        coeffs = nxt
    return tuple(coeffs)


def mhs(k: int, n: int) -> Fraction:
    """A_{k,n}: elementary symmetric function of degree k of 1/1, ..., 1/n."""
    if k < 0 or n < 0:
        raise ValueError(f"mhs needs k, n >= 0, got k={k}, n={n}")
    if k > n:
        return Fraction(0)
    return Fraction(rising_coefficients(n)[k], factorial(n))


def mhs_newton(k: int, n: int) -> Fraction:
    """A_{k,n} rebuilt from power sums H_{n,j} by Newton's identities."""
    e = [Fraction(1)]
    for d in range(1, k + 1):
        total = sum(
            (-1) ** (j - 1) * e[d - j] * generalized_harmonic(n, j) for j in range(1, d + 1)
        )
        e.append(total / d)
    return e[k]


def mhs_depth2(n: int) -> Fraction:
    return (harmonic(n) ** 2 - generalized_harmonic(n, 2)) / 2


@dataclass(frozen=True)
class StirlingRow:
    """Unsigned Stirling numbers [p; s] for s in 1..p."""

    prime: int
    row: tuple[int, ...]

    def __getitem__(self, s: int) -> int:
        if not 1 <= s <= self.prime:
            raise IndexError(f"Stirling index {s} outside [1, {self.prime}]")
        return self.row[s - 1]

    def falling_factorial(self, x: int) -> int:
        """x(x-1)...(x-(p-1)) rebuilt from the row."""
        p = self.prime
        return sum((-1) ** (p - s) * self[s] * x ** s for s in range(1, p + 1))


def stirling_row(p: int) -> StirlingRow:
    coeffs = [1]  # falling factorial coefficients, constant term first
    for j in range(p):
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= j * c
        coeffs = nxt
    return StirlingRow(p, tuple(abs(c) for c in coeffs[1:]))


def binom_shift_pair(p: int, n: int, s: int) -> tuple[PadicResidue, PadicResidue]:
    """C(2(p-1)-2n, s) and C(p-1-2n, s)(1 + s/(2n+1)), both mod p."""
    if not 2 <= 2 * n <= p - 5:
        raise HypothesisOutOfRange(f"2n={2 * n} outside [2, {p - 5}]")
    if s % 2 or not 0 <= s <= p - 3 - 2 * n:
        raise HypothesisOutOfRange(f"s={s} is not an even index in [0, {p - 3 - 2 * n}]")
    lhs = reduce_mod(comb(2 * (p - 1) - 2 * n, s), p, 1)
    rhs = reduce_mod(comb(p - 1 - 2 * n, s) * (1 + Fraction(s, 2 * n + 1)), p, 1)
    return lhs, rhs


def binom_shift_residue(p: int, n: int, s: int) -> PadicResidue:
    lhs, rhs = binom_shift_pair(p, n, s)
    if lhs != rhs:
        raise CongruenceLabError(f"C({2 * (p - 1) - 2 * n}, {s}) = {lhs.value} but the shifted form gives {rhs.value}")
    return lhs
