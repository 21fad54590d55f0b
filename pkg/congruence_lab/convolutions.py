"""
Convolutions of divided Bernoulli numbers.

    CB(m)     sum_{i=2}^{m-2} B'_i B'_{m-i}
    bCB(m)    sum_{i=2}^{m-2} C(m,i) B'_i B'_{m-i}
    B3(m)     sum over i+j+k=m, i,j,k >= 2, of B'_i B'_j B'_k
    mB3(m)    the same weighted by the multinomial m!/(i! j! k!)
    TCB       sum_{k=lo}^{hi} B'_k B'_{m-k}, a truncated window
    CBD, TCBD, CdBD, TCdBD   B_i (resp. B'_i) against the EM residues D_{m-i}

B' is the divided Bernoulli number B_t/t. Pure families are exact and do
not depend on p; the D-mixed families exist only mod p.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb

from congruence_lab.bernoulli_engine import bernoulli, divided_bernoulli, em_residue_table
from congruence_lab.errors import WindowInvalid
from congruence_lab.exact_arith import PadicResidue, reduce_mod


class ConvolutionFamily(Enum):
    CB = "CB"
    BCB = "bCB"
    MB3 = "mB3"
    B3 = "B3"
    TCB = "TCB"
    CBD = "CBD"
    TCBD = "TCBD"
    CDBD = "CdBD"
    TCDBD = "TCdBD"


MIXED_FAMILIES = frozenset(
    {ConvolutionFamily.CBD, ConvolutionFamily.TCBD, ConvolutionFamily.CDBD, ConvolutionFamily.TCDBD}
)
TRUNCATED_FAMILIES = frozenset({ConvolutionFamily.TCB, ConvolutionFamily.TCBD, ConvolutionFamily.TCDBD})


class MixedWindow(Enum):
    """Upper end of a full D-mixed convolution of order m."""

    SHORT = "short"  # i <= m-4, partner index in [4, m-2]
    FULL = "full"  # i <= m-2, partner index in [2, m-2]


@dataclass(frozen=True)
class ConvolutionSpec:
    family: ConvolutionFamily
    order: int
    lower: int | None = None
    upper: int | None = None
    prime: int | None = None
    window: MixedWindow = MixedWindow.FULL

    def bounds(self) -> tuple[int, int]:
        if self.family in TRUNCATED_FAMILIES:
            if self.lower is None or self.upper is None:
                raise WindowInvalid(f"{self.family.value} needs an explicit window")
            return self.lower, self.upper
        if self.family in (ConvolutionFamily.CBD, ConvolutionFamily.CDBD):
            drop = 4 if self.window is MixedWindow.SHORT else 2
            return 2, self.order - drop
        if self.family in (ConvolutionFamily.B3, ConvolutionFamily.MB3):
            return 2, self.order - 4
        return 2, self.order - 2

    def is_empty(self) -> bool:
        lower, upper = self.bounds()
        return lower > upper


def truncated_spec(family: ConvolutionFamily, p: int, two_n: int) -> ConvolutionSpec:
    """The (p+1-2n, p-3) window of total order 2(p-1)-2n."""
    return ConvolutionSpec(family, 2 * (p - 1) - two_n, p + 1 - two_n, p - 3, prime=p)


@lru_cache(maxsize=None)
def cb(order: int) -> Fraction:
    return sum(
        (divided_bernoulli(i) * divided_bernoulli(order - i) for i in range(2, order - 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def bcb(order: int) -> Fraction:
    return sum(
        (comb(order, i) * divided_bernoulli(i) * divided_bernoulli(order - i) for i in range(2, order - 1)),
        Fraction(0),
    )


@lru_cache(maxsize=None)
def b3(order: int) -> Fraction:
    return sum((divided_bernoulli(i) * cb(order - i) for i in range(2, order - 3)), Fraction(0))


@lru_cache(maxsize=None)
def mb3(order: int) -> Fraction:
    return sum(
        (comb(order, i) * divided_bernoulli(i) * bcb(order - i) for i in range(2, order - 3)),
        Fraction(0),
    )


def tcb(lower: int, upper: int, order: int) -> Fraction:
    return sum(
        (divided_bernoulli(k) * divided_bernoulli(order - k) for k in range(lower, upper + 1)),
        Fraction(0),
    )


def _mixed(spec: ConvolutionSpec) -> PadicResidue:
    if spec.prime is None:
        raise WindowInvalid(f"{spec.family.value} needs a prime")
    p = spec.prime
    em = em_residue_table(p)
    weight = bernoulli if spec.family in (ConvolutionFamily.CBD, ConvolutionFamily.TCBD) else divided_bernoulli
    lower, upper = spec.bounds()
    total = 0
    for i in range(lower, upper + 1):
        if i % 2:
            continue
        partner = spec.order - i
        if partner not in em:
            raise WindowInvalid(
                f"{spec.family.value}({spec.order}) reaches D_{partner}, outside [2, {p - 3}]"
            )
        total += reduce_mod(weight(i), p, 1).value * em[partner]
    return PadicResidue.of(total, p, 1)


def convolution(spec: ConvolutionSpec) -> Fraction | PadicResidue:
    """Exact value for pure families, a residue mod p for D-mixed ones."""
    if spec.order < 0:
        raise WindowInvalid(f"negative order {spec.order}")
    lower, upper = spec.bounds()
    if lower < 2 or (lower <= upper and spec.order - upper < 2):
        raise WindowInvalid(f"window [{lower}, {upper}] of order {spec.order} leaves the index range")
    if spec.family in MIXED_FAMILIES:
        return _mixed(spec)
    if spec.family is ConvolutionFamily.TCB:
        return tcb(lower, upper, spec.order)
    return {
        ConvolutionFamily.CB: cb,
        ConvolutionFamily.BCB: bcb,
        ConvolutionFamily.B3: b3,
        ConvolutionFamily.MB3: mb3,
    }[spec.family](spec.order)
