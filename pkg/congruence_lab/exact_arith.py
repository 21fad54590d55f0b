#exact rationals, p-adic residues, valuations and Hensel digits
"""
Exact arithmetic substrate.

Every value in the package is born as an int or a fractions.Fraction and
is reduced to a PadicResidue only at comparison time. Reduction inverts
the denominator modulo p^K, so a value with p in its denominator can
never be reduced by accident: it raises NonIntegral instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from sympy import multiplicity

from congruence_lab.errors import NonIntegral, NotAUnit, PrecisionExceeded

Exact = Union[int, Fraction]
# +inf for zero, otherwise an int
Valuation = Union[int, float]
INFINITE_VALUATION: Valuation = math.inf


@dataclass(frozen=True)
class PadicResidue:
    """An element of Z/p^K, remembering its prime and precision."""

    prime: int
    precision: int
    value: int

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        if not 0 <= self.value < self.prime ** self.precision:
            raise ValueError(
                f"value {self.value} outside [0, {self.prime}^{self.precision})"
            )

    @classmethod
    def of(cls, value: int, prime: int, precision: int) -> PadicResidue:
        return cls(prime, precision, value % prime ** precision)

    @property
    def modulus(self) -> int:
        return self.prime ** self.precision

    def _coerce(self, other: PadicResidue | int) -> int:
        if isinstance(other, PadicResidue):
            if (other.prime, other.precision) != (self.prime, self.precision):
                raise ValueError(
                    f"cannot mix residues mod {self.prime}^{self.precision} "
                    f"and {other.prime}^{other.precision}"
                )
            return other.value
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine PadicResidue with {type(other).__name__}")

    def __add__(self, other: PadicResidue | int) -> PadicResidue:
        return PadicResidue.of(self.value + self._coerce(other), self.prime, self.precision)

    __radd__ = __add__

    def __sub__(self, other: PadicResidue | int) -> PadicResidue:
        return PadicResidue.of(self.value - self._coerce(other), self.prime, self.precision)

    def __rsub__(self, other: int) -> PadicResidue:
        return PadicResidue.of(other - self.value, self.prime, self.precision)

    def __mul__(self, other: PadicResidue | int) -> PadicResidue:
        return PadicResidue.of(self.value * self._coerce(other), self.prime, self.precision)

    __rmul__ = __mul__

    def __neg__(self) -> PadicResidue:
        return PadicResidue.of(-self.value, self.prime, self.precision)

    def __pow__(self, exponent: int) -> PadicResidue:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return PadicResidue(self.prime, self.precision, pow(self.value, exponent, self.modulus))

    def inverse(self) -> PadicResidue:
        return mod_inverse(self.value, self.prime, self.precision)

    def truncate(self, precision: int) -> PadicResidue:
        if precision > self.precision:
            raise PrecisionExceeded(
                f"cannot raise precision from {self.precision} to {precision}"
            )
        return PadicResidue.of(self.value, self.prime, precision)

    def digit(self, i: int) -> int:
        return hensel_digit(self, self.prime, i)

    def __int__(self) -> int:
        return self.value


def valuation(x: Exact, p: int) -> Valuation:
    """v_p(numerator) - v_p(denominator); +inf for zero."""
    x = Fraction(x)
    if x == 0:
        return INFINITE_VALUATION
    return int(multiplicity(p, abs(x.numerator))) - int(multiplicity(p, x.denominator))


def mod_inverse(a: int, p: int, K: int) -> PadicResidue:
    if a % p == 0:
        raise NotAUnit(f"{a} is divisible by {p}")
    modulus = p ** K
    return PadicResidue(p, K, pow(a % modulus, -1, modulus))


def reduce_mod(x: Exact | PadicResidue, p: int, K: int) -> PadicResidue:
    """The residue r in [0, p^K) with x = r mod p^K in the p-adic sense."""
    if isinstance(x, PadicResidue):
        if x.prime != p:
            raise ValueError(f"residue mod {x.prime} reduced at prime {p}")
        return x.truncate(K)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NonIntegral(f"{x} is not {p}-integral")
    modulus = p ** K
    return PadicResidue(p, K, x.numerator * pow(x.denominator, -1, modulus) % modulus)


def hensel_digit(x: Exact | PadicResidue, p: int, i: int) -> int:
    """(x)_i, the coefficient of p^i in the canonical expansion of x."""
    if i < 0:
        raise ValueError(f"digit index must be >= 0, got {i}")
    if isinstance(x, PadicResidue):
        if x.prime != p:
            raise ValueError(f"residue mod {x.prime}^{x.precision} has no digits in base {p}")
        if i >= x.precision:
            raise PrecisionExceeded(f"digit {i} of a residue mod {p}^{x.precision}")
        return x.value // p ** i % p
    return reduce_mod(x, p, i + 1).value // p ** i


def divide_exact(x: Exact, p: int, j: int) -> Fraction:
    """x / p^j, refusing when v_p(x) < j so no low digits are dropped."""
    if valuation(x, p) < j:
        raise NonIntegral(f"v_{p}({x}) < {j}; cannot divide by {p}^{j} and stay integral")
    return Fraction(x) / p ** j


def digits(x: Exact, p: int, count: int) -> list[int]:
    return [hensel_digit(x, p, i) for i in range(count)]
