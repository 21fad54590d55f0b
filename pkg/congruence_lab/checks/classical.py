#file for the classical congruences on Fermat quotients and Bernoulli numbers
"""
Friedmann-Tamarkine, Lehmer, Ernvall-Metsankyla, Miki and Gessel, plus
the per-base expansion of a q_a, Glaisher's per-base sum, Sun's
pB_{k(p-1)}, the sums-of-powers expansion mod p^3, Kummer, Wolstenholme
and the Voronoi-weighted sum.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import lru_cache
from math import comb

from congruence_lab.bernoulli_engine import divided_bernoulli, is_irregular_pair, kummer_difference
from congruence_lab.checks.domains import bases, even_t, two_n
from congruence_lab.combinatorics import harmonic, mhs, wolstenholme_sums
from congruence_lab.convolutions import b3, bcb, cb, mb3, tcb
from congruence_lab.errors import HypothesisOutOfRange
from congruence_lab.prime_context import PrimeContext
from congruence_lab.quotient_tables import power_sum, power_sum_residue
from congruence_lab.registry import (
    Params,
    exact,
    flag,
    register,
    residue,
    skip,
    valuation_at_least,
)

logger = logging.getLogger(__name__)


@register("C01", "weighted sum of q_a a^t for even t", "friedmann-tamarkine",
          domain=lambda ctx: even_t(ctx, 2, 2 * (ctx.p - 1)))
def friedmann_tamarkine(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    lhs = ctx.wsum(t, 1)
    if t % (p - 1) == 0:
        # Lerch: sum of q_a is the Wilson quotient
        yield residue("t = 0 mod p-1: w_p", lhs, ctx.w_p)
    else:
        yield residue("-B'_t", lhs, -ctx.D(t))


@register("C02", "irregular pair criterion", "irregular-pairs",
          domain=lambda ctx: even_t(ctx, 2, ctx.p - 3))
def irregular_pair(ctx: PrimeContext, params: Params):
    t = params["t"]
    irregular = is_irregular_pair(ctx.p, t)
    vanishes = ctx.wsum(t, 1) == 0
    yield flag("p | B'_t iff sum q_a a^t = 0 mod p", irregular, vanishes,
               note="irregular pair" if irregular else "")


def _lehmer_window(ctx: PrimeContext) -> list[Params]:
    p = ctx.p
    return [{"two_t": k} for k in range(2, 2 * (p - 1) + 1, 2) if k % (p - 1) not in (0, 2)]


@register("C03", "Lehmer, odd powers", "lehmer-odd", domain=_lehmer_window)
def lehmer_odd(ctx: PrimeContext, params: Params):
    k = params["two_t"]
    yield residue("-pB_{2t}", ctx.wsum(k + 1, 1, 2), -ctx.p * ctx.B(k), power=2)


@register("C04", "Lehmer, even powers", "lehmer-even", domain=_lehmer_window)
def lehmer_even(ctx: PrimeContext, params: Params):
    k = params["two_t"]
    yield residue("B_{p-1+2t} - B_{2t}", ctx.wsum(k, 1, 2), ctx.B(ctx.p - 1 + k) - ctx.B(k), power=2)


@register("C05", "Kummer refined by squared quotients", "ernvall-metsankyla",
          domain=lambda ctx: even_t(ctx, 4, ctx.p - 3))
def ernvall_metsankyla(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    rhs = ctx.D(t) - Fraction(p, 2) * ctx.wsum(t, 2, 1)
    yield residue("B'_t - (p/2) sum q_a^2 a^t", ctx.D(p - 1 + t), rhs, power=2)


def miki_sum(ctx: PrimeContext, two_n_value: int, reading: str) -> Fraction:
    """Right side of Miki's expansion of sum a^t q_a mod p^2, t = p-1-2n."""
    p = ctx.p
    t = p - 1 - two_n_value
    x = 1 - ctx.ag if reading == "agoh-giuga" else 1 - p * ctx.B(p - 1)
    bracket = (
        (ctx.ag + x * t + harmonic(t)) * ctx.D(t)
        + Fraction(t - 2, 2) * cb(t)
        + Fraction(1, 2) * bcb(t)
        + Fraction(t - 1, 2) * tcb(p + 1 - two_n_value, p - 3, p - 1 + t)
    )
    return -ctx.D(t) + p * bracket


@register("C07", "Miki's expansion of sum a^t q_a", "miki-sum",
          domain=lambda ctx: two_n(ctx, 2, ctx.p - 5), readings=("agoh-giuga", "literal"))
def miki_expansion(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    lhs = ctx.wsum(ctx.p - 1 - k, 1, 2)
    for reading in ("agoh-giuga", "literal"):
        yield residue(f"convolution expansion ({reading})", lhs, miki_sum(ctx, k, reading),
                      power=2, reading=reading)


@register("C08", "Miki's identity", "miki-identity",
          domain=lambda ctx: [{"m": m} for m in range(4, ctx.max_order + 1, 2)], per_prime=False)
def miki_identity(ctx: PrimeContext, params: Params):
    m = params["m"]
    yield exact("CB(m) = bCB(m) + 2 H_m B'_m", cb(m), bcb(m) + 2 * harmonic(m) * ctx.D(m))


def gessel_sides(n: int) -> tuple[Fraction, Fraction]:
    lhs = mb3(n) + 3 * harmonic(n) * bcb(n) + 6 * mhs(2, n) * divided_bernoulli(n)
    rhs = b3(n) + Fraction(n * n - 3 * n + 5, 4) * divided_bernoulli(n - 2)
    return lhs, rhs


@lru_cache(maxsize=None)
def gessel_start(max_order: int) -> int | None:
    """Smallest even n >= 4 such that Gessel holds for every even order in [n, max_order]."""
    start = None
    for n in range(max_order - max_order % 2, 3, -2):
        lhs, rhs = gessel_sides(n)
        if lhs != rhs:
            break
        start = n
    logger.info("Gessel identity holds from n=%s through %d", start, max_order)
    return start


@register("C09", "Gessel's identity", "gessel-identity",
          domain=lambda ctx: [{"n": n} for n in range(4, ctx.max_order + 1, 2)], per_prime=False)
def gessel_identity(ctx: PrimeContext, params: Params):
    n = params["n"]
    start = gessel_start(ctx.max_order)
    if start is None or n < start:
        yield skip("mB3 + 3 H_n bCB + 6 A_2 B'_n", f"below the verified start n={start}")
        return
    lhs, rhs = gessel_sides(n)
    yield exact("mB3(n) + 3 H_n bCB(n) + 6 A_{2,n} B'_n = B3(n) + (n^2-3n+5)/4 B'_{n-2}", lhs, rhs)


def _gessel_note(max_order: int) -> str:
    start = gessel_start(max_order)
    if start is None:
        return f"Gessel identity fails at the top order {max_order}"
    return f"Gessel identity holds exactly for every even n in [{start}, {max_order}]"


gessel_identity.suite_note = _gessel_note


def faulhaber(m: int, n: int) -> Fraction:
    """S_m(n) from Bernoulli's formula, B_1 = -1/2."""
    return sum(
        (comb(m + 1, i) * PrimeContext.B(m + 1 - i) * n ** i for i in range(1, m + 2)),
        Fraction(0),
    ) / (m + 1)


@register("C10", "per-base expansion of a q_a", "miki-lemma", domain=bases)
def per_base_expansion(ctx: PrimeContext, params: Params):
    p, a = ctx.p, params["a"]
    lhs = a * ctx.q(a)
    weak = -1 + (1 - ctx.ag) * a - sum(
        (Fraction(comb(p, k), p) * ctx.B(k) * a ** (p - k) for k in range(1, p - 2)), Fraction(0)
    )
    yield residue("-1 + (1-AG)a - sum C(p,k)/p B_k a^{p-k}", lhs, weak)
    simplified = Fraction(-1, 2) + (1 - ctx.ag) * a + sum(
        (ctx.D(k) * a ** (p - k) for k in range(2, p - 2)), Fraction(0)
    )
    yield residue("-1/2 + (1-AG)a + sum B'_k a^{p-k}", lhs, simplified)
    quotient_side = a - 1 + p * sum(ctx.q(k) for k in range(1, a))
    yield exact("S_{p-1}(a): Bernoulli formula vs quotient sum", faulhaber(p - 1, a), quotient_side)
    yield exact("S_{p-1}(a): literal vs quotient sum", power_sum(p - 1, a), quotient_side)


@register("C11", "divided Bernoulli convolution weighted by harmonic numbers", "harmonic-convolution")
def harmonic_convolution(ctx: PrimeContext, params: Params):
    p = ctx.p
    lhs = sum(
        (ctx.D(i) * ctx.D(p - 1 - i) * harmonic(p - 1 - i) for i in range(2, p - 2, 2)), Fraction(0)
    )
    yield residue("2 B'_{p-3}", lhs, 2 * ctx.D(p - 3))


@register("C12", "mixed harmonic convolutions", "harmonic-convolution-mixed")
def harmonic_convolution_mixed(ctx: PrimeContext, params: Params):
    p = ctx.p
    rhs = -ctx.D(p - 3)
    first = sum((harmonic(i) * ctx.B(i) * ctx.D(p - 1 - i) for i in range(2, p - 2, 2)), Fraction(0))
    second = sum((harmonic(i) * ctx.D(i) * ctx.B(p - 1 - i) for i in range(2, p - 2, 2)), Fraction(0))
    yield residue("sum H_i B_i B'_{p-1-i}", first, rhs)
    yield residue("sum H_i B'_i B_{p-1-i}", second, rhs)


def _sun_recursive(p: int, k: int) -> Fraction:
    total = sum(
        (comb(k, l) * (-1) ** (l - 1) * PrimeContext.B((k - l) * (p - 1)) for l in range(1, k)),
        Fraction(0),
    )
    return p * total + (-1) ** (k - 1) * (p - 1)


@register("C20", "Sun's congruence for pB_{k(p-1)}", "sun-multiples",
          domain=lambda ctx: [{"k": k} for k in range(2, 6)])
def sun_multiples(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["k"]
    lhs = p * ctx.B(k * (p - 1))
    yield residue("-(k-1)(p-1) + k pB_{p-1}", lhs, -(k - 1) * (p - 1) + k * p * ctx.B(p - 1), power=2)
    yield residue("binomial recursion", lhs, _sun_recursive(p, k), power=2)


@register("C36", "sums of powers mod p^3", "sun-power-sums",
          domain=lambda ctx: [{"t": t} for t in range(1, 2 * (ctx.p - 1) + 1)])
def power_sums_mod_p3(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    rhs = (
        p * ctx.B(t)
        + Fraction(p ** 2, 2) * t * ctx.B(t - 1)
        + Fraction(p ** 3, 6) * t * (t - 1) * (ctx.B(t - 2) if t >= 2 else 0)
    )
    yield residue("pB_t + p^2/2 t B_{t-1} + p^3/6 t(t-1) B_{t-2}", power_sum_residue(t, p, p, 3), rhs, power=3)


@register("C38", "Glaisher's per-base sum", "glaisher", domain=bases)
def glaisher(ctx: PrimeContext, params: Params):
    p, a = ctx.p, params["a"]
    lhs = sum(ctx.res(ctx.D(i)) * ctx.inv(a) ** i for i in range(1, p - 2))
    yield residue("w_p + q_a", lhs, ctx.w_p + ctx.q(a))


@register("C47", "Kummer congruence", "kummer", domain=lambda ctx: even_t(ctx, 2, ctx.p - 3))
def kummer(ctx: PrimeContext, params: Params):
    yield valuation_at_least("v_p(B'_{p-1+i} - B'_i) >= 1", kummer_difference(ctx.p, params["t"]), 1)


@register("C48", "Wolstenholme", "wolstenholme")
def wolstenholme(ctx: PrimeContext, params: Params):
    p = ctx.p
    h1, h2 = wolstenholme_sums(p)
    yield residue("H_{p-1} = 0", h1, 0, power=2)
    yield residue("H_{p-1,2} = 0", h2, 0)
    mirrored = [i for i in range(1, p - 1) if ctx.res(harmonic(p - 1 - i) - harmonic(i))]
    yield flag("H_{p-1-i} = H_i for i in [1, p-2]", not mirrored, True,
               note=", ".join(f"i={i}" for i in mirrored))


@register("C49", "Voronoi-weighted sum", "voronoi",
          domain=lambda ctx: even_t(ctx, 2, ctx.p - 3), exploratory=True)
def voronoi(ctx: PrimeContext, params: Params):
    p, i = ctx.p, params["t"]
    if i % (p - 1) == 0:
        raise HypothesisOutOfRange(f"i={i} is a multiple of p-1")
    total = 0
    for a in ctx.bases():
        inner = sum((ctx.inv(b) * a // p) * pow(ctx.inv(b), i - 1, p) for b in ctx.bases())
        total += inner * pow(a, i - 1, p)
    yield residue("sum_a (sum_b floor(b^-1 a / p) / b^{i-1}) a^{i-1}", total, ctx.D(i))


voronoi.suite_note = "bracket read as the floor of (b^-1 mod p) a / p"
