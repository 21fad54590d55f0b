#file to lift the roots of X^{p-1} - (1 - p k) from Z/p to Z/p^K
"""
Hensel lifting for the three polynomial families

    teichmuller       X^{p-1} - 1                 roots omega_a = a + p v_a
    wilson_analog     X^{p-1} + (p-1)!            roots Omega_a = a + p w_a
    bernoulli_analog  X^{p-1} + p B_{p-1}         roots gamma_a = a + p z_a

Each constant term is 1 - p*kappa with kappa = 0, the Wilson quotient and
the Agoh-Giuga quotient respectively, so one lifting routine and one set
of correction formulas serve all three.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from congruence_lab.bernoulli_engine import agoh_giuga_exact
from congruence_lab.errors import BaseOutOfRange, NotSimpleRoot, PrecisionExceeded
from congruence_lab.exact_arith import Exact, PadicResidue, reduce_mod
from congruence_lab.quotient_tables import fermat_quotient, wilson_quotient

logger = logging.getLogger(__name__)


class LiftTag(Enum):
    TEICHMULLER = "teichmuller"
    WILSON_ANALOG = "wilson_analog"
    BERNOULLI_ANALOG = "bernoulli_analog"


def kappa(p: int, tag: LiftTag) -> Exact:
    """The quotient k with X^{p-1} = 1 - p k on every root."""
    if tag is LiftTag.TEICHMULLER:
        return 0
    if tag is LiftTag.WILSON_ANALOG:
        return wilson_quotient(p)
    return agoh_giuga_exact(p)


def root_power(p: int, tag: LiftTag) -> Fraction:
    """root^{p-1} exactly: 1, -(p-1)! or -pB_{p-1}."""
    return 1 - p * Fraction(kappa(p, tag))


def lift_root(p: int, a: int, tag: LiftTag, K: int) -> PadicResidue:
    """The root congruent to a mod p, to precision K, by Newton iteration."""
    if not 1 <= a <= p - 1:
        raise BaseOutOfRange(f"base {a} outside [1, {p - 1}]")
    if K < 1:
        raise ValueError(f"precision must be >= 1, got {K}")
    if (p - 1) * a % p == 0:
        raise NotSimpleRoot(f"derivative vanishes at {a} mod {p}")
    target = root_power(p, tag)
    x = a
    precision = 1
    while precision < K:
        precision = min(2 * precision, K)
        modulus = p ** precision
        c = reduce_mod(target, p, precision).value
        f = (pow(x, p - 1, modulus) - c) % modulus
        df = (p - 1) * pow(x, p - 2, modulus) % modulus
        x = (x - f * pow(df, -1, modulus)) % modulus
    return PadicResidue.of(x, p, K)


@dataclass(frozen=True)
class LiftFamily:
    prime: int
    precision: int
    tag: LiftTag
    roots: tuple[PadicResidue, ...]

    @classmethod
    def build(cls, p: int, tag: LiftTag, K: int) -> LiftFamily:
        logger.debug("lifting %s roots for p=%d to precision %d", tag.value, p, K)
        return cls(p, K, tag, tuple(lift_root(p, a, tag, K) for a in range(1, p)))

    def root(self, a: int) -> PadicResidue:
        return self.roots[a - 1]

    def correction(self, a: int) -> PadicResidue:
        """(root_a - a)/p, known to precision K-1."""
        if self.precision < 2:
            raise PrecisionExceeded("corrections need a family lifted to precision >= 2")
        return PadicResidue(self.prime, self.precision - 1, (self.root(a).value - a) // self.prime)


def correction_residues(family: LiftFamily) -> dict[int, PadicResidue]:
    return {a: family.correction(a) for a in range(1, family.prime)}


def first_order_correction(p: int, a: int, tag: LiftTag) -> PadicResidue:
    """a (q_a + kappa) mod p."""
    return reduce_mod(a * (fermat_quotient(p, a) + Fraction(kappa(p, tag))), p, 1)


def second_order_correction(p: int, a: int, tag: LiftTag) -> PadicResidue:
    """a c + a p (1 + kappa) c mod p^2 with c = q_a + kappa."""
    k = Fraction(kappa(p, tag))
    c = fermat_quotient(p, a) + k
    return reduce_mod(a * c + a * p * (1 + k) * c, p, 2)


@dataclass(frozen=True)
class SymmetricFunctionCheck:
    """Power sums s_t and elementary symmetric values sigma_t of one family."""

    prime: int
    precision: int
    tag: LiftTag
    power_sums: tuple[int, ...]
    elementary: tuple[int, ...]
    shifted_power_sums: tuple[int, ...]

    def s(self, t: int) -> int:
        return self.power_sums[t - 1]

    def sigma(self, t: int) -> int:
        return self.elementary[t - 1]

    def newton_defect(self, t: int) -> int:
        """s_t - sigma_1 s_{t-1} + ... + (-1)^t t sigma_t, mod p^K."""
        modulus = self.prime ** self.precision
        total = self.s(t)
        for j in range(1, t):
            total += (-1) ** j * self.sigma(j) * self.s(t - j)
        total += (-1) ** t * t * self.sigma(t)
        return total % modulus

    def vanishing_failures(self) -> list[str]:
        p = self.prime
        failures = [f"s_{t}" for t in range(1, p - 1) if self.s(t)]
        failures += [f"sigma_{t}" for t in range(1, p - 1) if self.sigma(t)]
        failures += [f"s_{p - 1 + t}" for t in range(1, p - 1) if self.shifted_power_sums[t - 1]]
        return failures


def newton_symmetric_check(family: LiftFamily) -> SymmetricFunctionCheck:
    p, K = family.prime, family.precision
    modulus = p ** K
    values = [r.value for r in family.roots]
    power_sums = tuple(sum(pow(x, t, modulus) for x in values) % modulus for t in range(1, p))
    shifted = tuple(
        sum(pow(x, p - 1 + t, modulus) for x in values) % modulus for t in range(1, p - 1)
    )
    # prod (X + x) gives sigma_t as the coefficient of X^{p-1-t}
    poly = [1]
    for x in values:
        nxt = [0] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] = (nxt[k] + c) % modulus
            nxt[k + 1] = (nxt[k + 1] + c * x) % modulus
        poly = nxt
    elementary = tuple(poly[1:])
    return SymmetricFunctionCheck(p, K, family.tag, power_sums, elementary, shifted)


def second_order_check(p: int, K: int = 3) -> list[tuple[int, PadicResidue, PadicResidue]]:
    """(a, z_a from the lift, z_a from the closed form) mod p^2 for the bernoulli_analog family."""
    if K < 3:
        raise PrecisionExceeded("z_a mod p^2 needs roots lifted to precision >= 3")
    family = LiftFamily.build(p, LiftTag.BERNOULLI_ANALOG, K)
    return [
        (a, family.correction(a).truncate(2), second_order_correction(p, a, LiftTag.BERNOULLI_ANALOG))
        for a in range(1, p)
    ]

