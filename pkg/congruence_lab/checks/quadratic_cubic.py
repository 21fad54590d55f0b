#file for sums weighted by squared and cubed Fermat quotients
"""
Congruences mod p for sum_a a^t q_a^2 and sum_a q_a^3 / a^{2n}, the
Ernvall-Metsankyla-mixed convolutions they reduce to, and the truncated
convolution identities that follow.

Throughout, m = p-1-2n and N = 2(p-1)-2n. D_i is the Ernvall-Metsankyla
residue (B'_{p-1+i} - B'_i)_1 and AG the Agoh-Giuga quotient.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from congruence_lab.checks.domains import even_t, odd_t, order_and_partner, two_n
from congruence_lab.combinatorics import harmonic
from congruence_lab.convolutions import (
    ConvolutionFamily,
    ConvolutionSpec,
    MixedWindow,
    cb,
    convolution,
    tcb,
    truncated_spec,
)
from congruence_lab.exact_arith import hensel_digit
from congruence_lab.prime_context import PrimeContext
from congruence_lab.registry import Params, register, residue


def mixed(ctx: PrimeContext, family: ConvolutionFamily, order: int, window: MixedWindow = MixedWindow.FULL,
          lower: int | None = None, upper: int | None = None) -> int:
    spec = ConvolutionSpec(family, order, lower, upper, prime=ctx.p, window=window)
    return convolution(spec).value


def truncated_mixed(ctx: PrimeContext, family: ConvolutionFamily, two_n_value: int) -> int:
    """The (p+1-2n, p-3) window of order N against D."""
    _, big = order_and_partner(ctx, two_n_value)
    return mixed(ctx, family, big, lower=ctx.p + 1 - two_n_value, upper=ctx.p - 3)


def empty_windows(ctx: PrimeContext, two_n_value: int) -> str:
    """Note naming the convolution windows of this 2n that are empty and summed as 0."""
    m, _ = order_and_partner(ctx, two_n_value)
    empty = []
    if ConvolutionSpec(ConvolutionFamily.CDBD, m, window=MixedWindow.SHORT).is_empty():
        empty.append(f"CdBD({m}) short window")
    if truncated_spec(ConvolutionFamily.TCDBD, ctx.p, two_n_value).is_empty():
        empty.append(f"TCdBD({ctx.p + 1 - two_n_value}, {ctx.p - 3})")
    return "empty window: " + ", ".join(empty) if empty else ""


def weighted_quotient_squares(ctx: PrimeContext, lo: int, hi: int, shift: int, divided: bool = True) -> int:
    """sum_a sum_{i=lo}^{hi} (B'_i or B_i) / a^i * q_a^2 / a^shift, mod p."""
    weight = ctx.D if divided else ctx.B
    return sum(ctx.res(weight(i)) * ctx.wsum(-i - shift, 2) for i in range(lo, hi + 1)) % ctx.p


def sun_quotient(ctx: PrimeContext, two_n_value: int) -> Fraction:
    """Third finite difference of pB along steps of p-1, divided by p^3."""
    p = ctx.p
    m, big = order_and_partner(ctx, two_n_value)
    if two_n_value == 0:
        return (p * ctx.B(3 * (p - 1)) - 3 * p * ctx.B(2 * (p - 1)) + 3 * p * ctx.B(p - 1) - p + 1) / Fraction(p ** 3)
    return (
        p * ctx.B(4 * (p - 1) - two_n_value)
        - 3 * p * ctx.B(3 * (p - 1) - two_n_value)
        + 3 * p * ctx.B(big)
        - p * ctx.B(m)
    ) / Fraction(p ** 3)


def convolution_digit(ctx: PrimeContext) -> int:
    """CB(p-1) mod p as the second digit of 2p B'_{2(p-1)} - p^2 B'_{p-1}^2."""
    p = ctx.p
    return hensel_digit(2 * p * ctx.D(2 * (p - 1)) - p ** 2 * ctx.D(p - 1) ** 2, p, 2)


@register("C13", "Lehmer-type congruence for odd powers and squared quotients", "odd-squared",
          domain=lambda ctx: odd_t(ctx, 5, ctx.p - 2))
def odd_squared(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    yield residue("B_{p-2+t} - B_{t-1} = -sum a^t q_a^2", ctx.B(p - 2 + t) - ctx.B(t - 1), -ctx.wsum(t, 2))


@register("C14", "squared quotients against single quotients, odd t", "odd-squared-single",
          domain=lambda ctx: odd_t(ctx, 5, ctx.p - 2))
def odd_squared_single(ctx: PrimeContext, params: Params):
    t = params["t"]
    yield residue("sum q_a^2 a^t = -sum q_a a^{t-1}", ctx.wsum(t, 2), -ctx.wsum(t - 1, 1))


@register("C16", "B'_t from squared quotients, even t", "even-squared",
          domain=lambda ctx: even_t(ctx, 4, ctx.p - 3))
def even_squared(ctx: PrimeContext, params: Params):
    t = params["t"]
    yield residue("B'_t = sum a^{t+1} q_a^2", ctx.D(t), ctx.wsum(t + 1, 2))


def _cubic_rhs(ctx: PrimeContext, k: int) -> int:
    return ctx.w_p * ctx.wsum(-k, 2) + ctx.wsum(-k, 3)


@register("C17", "divided Bernoulli sums against cubed quotients", "cubic-glaisher",
          domain=lambda ctx: two_n(ctx, 0, ctx.p - 3))
def cubic_glaisher(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    rhs = _cubic_rhs(ctx, k)
    yield residue("sum_{i=1}^{p-3}", weighted_quotient_squares(ctx, 1, p - 3, k), rhs)
    moved = -Fraction(1, 2) * ctx.wsum(-k - 1, 2) + weighted_quotient_squares(ctx, 2, p - 3, k)
    yield residue("i = 1 term split off", moved, rhs)


@register("C18", "cubic sum with the i = 1 term removed", "cubic-glaisher-shifted",
          domain=lambda ctx: two_n(ctx, 0, ctx.p - 5))
def cubic_glaisher_shifted(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    rhs = _cubic_rhs(ctx, k) + Fraction(1, 2) * ctx.D(p - 3 - k)
    yield residue("sum_{i=2}^{p-3} = w_p S_2 + S_3 + B'_{p-3-2n}/2", weighted_quotient_squares(ctx, 2, p - 3, k), rhs)


@register("C19", "sum of squared quotients", "squared-sum")
def squared_sum(ctx: PrimeContext, params: Params):
    p = ctx.p
    lhs = ctx.wsum(0, 2)
    yield residue("-w_p^2 - CB(p-1)", lhs, -ctx.w_p ** 2 - cb(p - 1))
    yield residue("-(AG-1)^2 - (2pB'_{2(p-1)} - p^2 B'_{p-1}^2)_2", lhs, -(ctx.ag - 1) ** 2 - convolution_digit(ctx))
    sun = (p * ctx.B(2 * (p - 1)) - 2 * p * ctx.B(p - 1) + p - 1) / Fraction(p ** 2)
    yield residue("(pB_{2(p-1)} - 2pB_{p-1} + p - 1)/p^2", lhs, sun)


@register("C21", "squared quotients times a^2", "squared-sum-a2")
def squared_sum_a2(ctx: PrimeContext, params: Params):
    p = ctx.p
    lhs = ctx.wsum(2, 2)
    yield residue("w_p/6 - 1/4 - TCB(4, p-3)", lhs,
                  Fraction(ctx.w_p, 6) - Fraction(1, 4) - tcb(4, p - 3, p + 1))
    yield residue("-2 D_2 - 1/2", lhs, -2 * ctx.em[2] - Fraction(1, 2))
    sun = (p * ctx.B(2 * p) - 2 * p * ctx.B(p + 1) + Fraction(p * (p - 1) * (2 * p - 1), 6)) / Fraction(p ** 2)
    yield residue("(pB_{2p} - 2pB_{p+1} + p(p-1)(2p-1)/6)/p^2", lhs, sun)


@register("C22", "cubed quotients over a^{2n}", "cubic-sum",
          domain=lambda ctx: two_n(ctx, 0, ctx.p - 5), min_prime=7)
def cubic_sum(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, big = order_and_partner(ctx, k)
    em = ctx.em
    squares = ctx.w_p ** 2 + cb(p - 1)
    lhs = ctx.wsum(-k, 3)
    if k == 0:
        expansion = (
            -(1 + 2 * em[2]) * ctx.D(p - 3)
            + ctx.w_p * squares
            - 2 * mixed(ctx, ConvolutionFamily.CDBD, p - 1, MixedWindow.SHORT)
        )
        yield residue("Ernvall-Metsankyla expansion (2n = 0)", lhs, expansion)
        yield residue("finite difference (2n = 0)", lhs, sun_quotient(ctx, 0) - ctx.D(p - 3))
        yield residue("w_p = AG - 1", ctx.w_p, ctx.ag - 1)
        yield residue("CB(p-1) = (2pB'_{2(p-1)} - p^2 B'_{p-1}^2)_2", cb(p - 1), convolution_digit(ctx))
        return
    expansion = (
        -2 * mixed(ctx, ConvolutionFamily.CDBD, m, MixedWindow.SHORT)
        + 2 * ctx.w_p * em[m]
        - (1 + 2 * em[2]) * ctx.D(m - 2)
        - squares * ctx.D(m)
        - 2 * truncated_mixed(ctx, ConvolutionFamily.TCDBD, k)
    )
    yield residue("Ernvall-Metsankyla expansion", lhs, expansion, note=empty_windows(ctx, k))
    yield residue("finite difference", lhs, sun_quotient(ctx, k) - ctx.D(m - 2))


@register("C23", "truncated mixed convolution against the full one", "truncated-mixed",
          domain=lambda ctx: two_n(ctx, 4, ctx.p - 7), min_prime=11)
def truncated_mixed_identity(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    m, _ = order_and_partner(ctx, k)
    rhs = (
        -mixed(ctx, ConvolutionFamily.CDBD, m, MixedWindow.FULL)
        + ctx.w_p * ctx.em[m]
        - Fraction(1, 2) * (ctx.w_p ** 2 + cb(ctx.p - 1)) * ctx.D(m)
        - sun_quotient(ctx, k) / 2
    )
    yield residue("TCdBD(p+1-2n, p-3)", truncated_mixed(ctx, ConvolutionFamily.TCDBD, k), rhs)


@register("C24", "double sum at 2n = 0", "double-sum-zero", min_prime=7)
def double_sum_zero(ctx: PrimeContext, params: Params):
    p = ctx.p
    lhs = -Fraction(1, 2) * weighted_quotient_squares(ctx, 2, p - 5, 0)
    rhs = (
        -ctx.em[2] * ctx.D(p - 3)
        + Fraction(ctx.w_p, 2) * (ctx.w_p ** 2 + cb(p - 1))
        - sun_quotient(ctx, 0) / 2
    )
    yield residue("-1/2 sum_a sum_{k=2}^{p-5} B'_k q_a^2 / a^k", lhs, rhs)


def _full_minus_ordinary(ctx: PrimeContext, k: int, window: MixedWindow) -> int:
    m, _ = order_and_partner(ctx, k)
    return (mixed(ctx, ConvolutionFamily.CDBD, m, window)
            - mixed(ctx, ConvolutionFamily.CBD, m, window)) % ctx.p


AMBIGUOUS_TERMS = ("outer-digit", "outer-digit-exact", "plain")
WINDOWS = (MixedWindow.FULL, MixedWindow.SHORT)
WEIGHTED_READING = "weighted-sum"
MIXED_READINGS = (WEIGHTED_READING,) + tuple(
    f"{term}/{window.value}" for term, window in product(AMBIGUOUS_TERMS, WINDOWS)
)


def harmonic_weighted_squares(ctx: PrimeContext, k: int) -> int:
    """sum_a q_a^2 H_{a-1} / a^{2n} mod p."""
    p = ctx.p
    return sum(
        ctx.res(ctx.q(a)) ** 2 * ctx.res(harmonic(a - 1)) * pow(a, -k, p) for a in ctx.bases()
    ) % p


def weighted_truncation(ctx: PrimeContext, k: int) -> Fraction | int:
    """TCBD(p+1-2n, p-3) from sum_{i=2}^{p-3} B_i / a^i = -1 - H_{a-1} - 1/(2a) mod p.

    The full weighted sum minus its i <= m terms leaves -2 TCBD; the i <= m-4
    part is -2 CBD(m) on the short window and i = m-2, m fall on sum q_a^2 a^2
    and sum q_a^2.
    """
    m, _ = order_and_partner(ctx, k)
    full = 2 * ctx.em[m] - Fraction(1, 2) * ctx.D(m - 2) - harmonic_weighted_squares(ctx, k)
    return (
        -mixed(ctx, ConvolutionFamily.CBD, m, MixedWindow.SHORT)
        - ctx.B(m - 2) * (ctx.em[2] + Fraction(1, 4))
        - Fraction(1, 2) * ctx.B(m) * (ctx.w_p ** 2 + cb(ctx.p - 1))
        - full / 2
    )


def _ambiguous_term(ctx: PrimeContext, k: int, term: str) -> Fraction | int:
    p = ctx.p
    m, big = order_and_partner(ctx, k)
    base = (2 * ctx.ag - 1) * ctx.D(m)
    if term == "outer-digit":
        return -Fraction(hensel_digit(base + 2 * ctx.em[m], p, 1), 2)
    if term == "outer-digit-exact":
        return -Fraction(hensel_digit(base + 2 * (ctx.D(big) - ctx.D(m)) / p, p, 1), 2)
    return -(base + 2 * ctx.em[m]) / 2


@register("C25", "truncated B-against-D convolution", "truncated-bernoulli-mixed",
          domain=lambda ctx: two_n(ctx, 4, ctx.p - 7), min_prime=11, readings=MIXED_READINGS)
def truncated_bernoulli_mixed(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, big = order_and_partner(ctx, k)
    lhs = truncated_mixed(ctx, ConvolutionFamily.TCBD, k)
    wilson_terms = (
        (k + Fraction(1, 2)) * cb(p - 1)
        + ctx.w_p * (k - 1 + Fraction(k + 1, 2) * ctx.w_p)
        + k * hensel_digit(
            p * ctx.B(p - 1) - p + Fraction(p ** 2, 2) * ctx.D(p - 1) ** 2 + p * ctx.D(p - 1)
            - p * ctx.D(2 * (p - 1)), p, 2)
    )
    common = (
        Fraction(hensel_digit(cb(m) + tcb(p + 1 - k, p - 3, big), p, 1), 2)
        + k * hensel_digit(ctx.D(3 * (p - 1) - k) - 2 * ctx.D(big) + ctx.D(m), p, 2)
        - hensel_digit(ctx.D(big) - ctx.D(m), p, 2)
        - ctx.w_p * ctx.em[m]
        + wilson_terms * ctx.D(m)
        + Fraction(k + 1, 2) * sun_quotient(ctx, k)
    )
    yield residue("sum_a sum_{i=2}^{p-3} B_i/a^i q_a^2/a^{2n} through -1 - H_{a-1} - 1/(2a)",
                  weighted_quotient_squares(ctx, 2, p - 3, k, divided=False),
                  -ctx.wsum(-k, 2) - Fraction(ctx.wsum(-k - 1, 2), 2) - harmonic_weighted_squares(ctx, k))
    yield residue(f"TCBD ({WEIGHTED_READING})", lhs, weighted_truncation(ctx, k), reading=WEIGHTED_READING)
    for term, window in product(AMBIGUOUS_TERMS, WINDOWS):
        reading = f"{term}/{window.value}"
        rhs = common + _full_minus_ordinary(ctx, k, window) + _ambiguous_term(ctx, k, term)
        yield residue(f"TCBD ({reading})", lhs, rhs, reading=reading)


@register("C39", "cubic sum through squared-quotient sums", "cubic-sum-squares",
          domain=lambda ctx: two_n(ctx, 2, ctx.p - 5), min_prime=7)
def cubic_sum_squares(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    m, _ = order_and_partner(ctx, k)
    rhs = (
        -2 * mixed(ctx, ConvolutionFamily.CDBD, m, MixedWindow.SHORT)
        + (ctx.wsum(2, 2) - Fraction(1, 2)) * ctx.D(m - 2)
        + ctx.wsum(0, 2) * ctx.D(m)
        + 2 * ctx.w_p * ctx.em[m]
        - 2 * truncated_mixed(ctx, ConvolutionFamily.TCDBD, k)
    )
    yield residue("sum q_a^3 / a^{2n}", ctx.wsum(-k, 3), rhs, note=empty_windows(ctx, k))


@register("C52", "truncated convolution against the full convolution", "truncated-full",
          domain=lambda ctx: two_n(ctx, 4, ctx.p - 7), min_prime=11)
def truncated_full(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, big = order_and_partner(ctx, k)
    lhs = tcb(p + 1 - k, p - 3, big) + cb(m)
    yield residue("-sum q_a^2 / a^{2n} + 2(AG-1) B'_m", lhs, -ctx.wsum(-k, 2) + 2 * (ctx.ag - 1) * ctx.D(m))
