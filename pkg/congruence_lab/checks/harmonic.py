#file for the harmonic and multiple harmonic sum congruences
"""
Harmonic numbers H_t, generalized harmonic numbers H_{n,k} and multiple
harmonic sums A_{k,n} against divided Bernoulli convolutions.

Several quantities here carry a single factor 1/p (windows of reciprocals
that run across p). Their congruences are statements in Z_p and are
checked as valuations of the exact difference.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from congruence_lab.checks.domains import order_and_partner, two_n
from congruence_lab.checks.quadratic_cubic import mixed, truncated_mixed, weighted_quotient_squares
from congruence_lab.combinatorics import (
    binom_shift_pair,
    generalized_harmonic,
    harmonic,
    harmonic_window,
    mhs,
    mhs_depth2,
)
from congruence_lab.convolutions import (
    ConvolutionFamily,
    MixedWindow,
    b3,
    bcb,
    cb,
    mb3,
    tcb,
)
from congruence_lab.exact_arith import hensel_digit
from congruence_lab.prime_context import PrimeContext
from congruence_lab.registry import Params, exact, flag, register, residue, valuation_at_least

ROW_NOTE = (
    "rows read as: R_1 = 3 H_m (bCB(N) - bCB(m)), "
    "R_2 = 3 (1/p + u) bCB(N), R_3 = 6 A_{2,N} B'_N - 6 A_{2,m} B'_m"
)


def _wide(ctx: PrimeContext) -> list[Params]:
    return two_n(ctx, 4, ctx.p - 7)


def _narrow(ctx: PrimeContext) -> list[Params]:
    return two_n(ctx, 2, ctx.p - 5)


def crossing_sum(ctx: PrimeContext, k: int) -> Fraction:
    """u: reciprocals of p-2n, ..., 2p-2-2n with 1/p left out."""
    m, big = order_and_partner(ctx, k)
    return harmonic_window(m + 1, big) - Fraction(1, ctx.p)


@register("C27", "depth-two harmonic sum across p", "depth-two-crossing",
          domain=_wide, min_prime=11)
def depth_two_crossing(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, big = order_and_partner(ctx, k)
    h_odd, h2_odd = harmonic(k + 1), generalized_harmonic(k + 1, 2)
    inv_p = Fraction(1, p)
    window = harmonic_window(m + 1, big)
    window_squares = generalized_harmonic(big, 2) - generalized_harmonic(m, 2)
    s2 = harmonic(m) * window
    s3 = (window ** 2 - window_squares) / 2
    yield valuation_at_least(
        "A_{2,N} = A_{2,m} + 2 H_{2n+1,2} + H_{2n+1}(1/p + 1/(2n+1))",
        mhs_depth2(big) - mhs_depth2(m) - 2 * h2_odd - h_odd * (inv_p + Fraction(1, k + 1)), 1)
    yield valuation_at_least(
        "s_2 = H_{2n,2} + H_{2n}(1/p + 1/(2n+1))",
        s2 - generalized_harmonic(k, 2) - harmonic(k) * (inv_p + Fraction(1, k + 1)), 1)
    yield valuation_at_least(
        "s_3 = (1/p + 2/(2n+1))/(2n+1) + H_{2n+1,2}",
        s3 - (inv_p + Fraction(2, k + 1)) / (k + 1) - h2_odd, 1)


@register("C28", "binomial times B'_{p-1}", "binomial-bernoulli",
          domain=lambda ctx: [
              {"two_n": pt["two_n"], "i": i} for pt in _narrow(ctx) for i in range(0, ctx.p - 2 - pt["two_n"])
          ])
def binomial_bernoulli(ctx: PrimeContext, params: Params):
    p, k, i = ctx.p, params["two_n"], params["i"]
    _, big = order_and_partner(ctx, k)
    yield residue("C(N-i, p-1) B'_{p-1} = -1/(2n+1+i)", comb(big - i, p - 1) * ctx.D(p - 1),
                  Fraction(-1, k + 1 + i))


@register("C29", "depth-two sums mirrored", "depth-two-mirror", domain=_narrow)
def depth_two_mirror(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    m, _ = order_and_partner(ctx, k)
    yield residue("A_{2,m} = -A_{2,2n} + H_{2n}^2", mhs_depth2(m), -mhs_depth2(k) + harmonic(k) ** 2)


def _part_domain(ctx: PrimeContext) -> list[Params]:
    return [{"part": "tcb4"}, {"part": "tcb6"}] + [{"part": "weighted", **pt} for pt in _wide(ctx)]


@register("C30", "truncated convolutions and Bernoulli-weighted quotient sums", "truncated-convolutions",
          domain=_part_domain, min_prime=11)
def truncated_convolutions(ctx: PrimeContext, params: Params):
    p, em = ctx.p, ctx.em
    if params["part"] == "tcb4":
        yield residue("TCB(4, p-3) = 2 D_2 + 1/12 + AG/6", tcb(4, p - 3, p + 1),
                      2 * em[2] + Fraction(1, 12) + ctx.ag / 6)
        return
    if params["part"] == "tcb6":
        yield residue("TCB(6, p-3) = 7/720 + 2 D_4 - AG/60", tcb(6, p - 3, p + 3),
                      Fraction(7, 720) + 2 * em[4] - ctx.ag / 60)
        return
    k = params["two_n"]
    m, _ = order_and_partner(ctx, k)
    for divided, short, truncated, name in (
        (False, ConvolutionFamily.CBD, ConvolutionFamily.TCBD, "B_i"),
        (True, ConvolutionFamily.CDBD, ConvolutionFamily.TCDBD, "B'_i"),
    ):
        yield residue(f"sum_{{i<=m-4}} {name}/a^i q_a^2/a^{{2n}}",
                      weighted_quotient_squares(ctx, 2, m - 4, k, divided), -2 * mixed(ctx, short, m, MixedWindow.SHORT))
        yield residue(f"sum_{{i=p+1-2n}}^{{p-3}} {name}/a^i q_a^2/a^{{2n}}",
                      weighted_quotient_squares(ctx, p + 1 - k, p - 3, k, divided),
                      -2 * truncated_mixed(ctx, truncated, k))


@register("C31", "multiple harmonic sum A_{2n,p-1} mod p^4", "mhs-p4", domain=_narrow)
def mhs_p4(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, _ = order_and_partner(ctx, k)
    w = ctx.w_p
    rhs = (
        Fraction(p ** 3, 6) * b3(m)
        + p * (1 + p * w * (1 + p * w)) * ctx.D(m)
        + Fraction(4 * (k + 1) ** 2 + 6 * (k + 1) + 5, 24) * p ** 3 * ctx.D(m - 2)
        - Fraction(p ** 2, 2) * (1 + p * w) * cb(m)
    )
    yield residue("A_{2n,p-1}", mhs(k, p - 1), rhs, power=4)


def multinomial_difference(ctx: PrimeContext, k: int) -> Fraction:
    m, big = order_and_partner(ctx, k)
    return mb3(big) - mb3(m)


@register("C32", "difference of multinomial cubic convolutions", "multinomial-difference",
          domain=_wide, min_prime=11)
def multinomial_difference_check(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    m, _ = order_and_partner(ctx, k)
    rhs = Fraction(-3, k + 1) * cb(m) + Fraction(6, k + 1) * harmonic(k) * ctx.D(m)
    yield residue("mB3(N) - mB3(m)", multinomial_difference(ctx, k), rhs)


def split_sums(ctx: PrimeContext, k: int) -> dict[str, Fraction]:
    """The pieces of mB3(N): S_1 (i = p-1), S_2 (i <= p-3), S_3 (i >= p+1), S_2 = S_21 + S_22 + S_23 mod p."""
    p = ctx.p
    D = ctx.D
    m, big = order_and_partner(ctx, k)
    zero = Fraction(0)
    s1 = comb(big, p - 1) * D(p - 1) * bcb(m)
    s2 = sum((comb(big, i) * D(i) * bcb(big - i) for i in range(2, p - 2)), zero)
    s3 = sum((comb(big, i) * D(i) * bcb(big - i) for i in range(p + 1, big - 3)), zero)
    s21 = (p + 1) * p * D(p - 1) * D(2) * comb(big, m - 2) * D(m - 2)
    s22 = 2 * sum(
        (comb(big, i) * D(i) * comb(big - i, p - 1) * D(p - 1) * D(m - i) for i in range(2, m - 3)), zero
    )
    s23 = 2 * sum(
        (
            comb(big, i) * D(i) * comb(big - i, j) * D(j) * D(big - i - j)
            for i in range(2, m - 3)
            for j in range(2, m - 1 - i)
        ),
        zero,
    )
    return {"S1": s1, "S2": s2, "S3": s3, "S21": s21, "S22": s22, "S23": s23}


@register("C33", "pieces of the multinomial cubic convolution", "multinomial-pieces",
          domain=_wide, min_prime=11)
def multinomial_pieces(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    m, big = order_and_partner(ctx, k)
    s = split_sums(ctx, k)
    n1 = Fraction(k + 2, 2)  # n + 1
    low = mb3(m)
    yield residue("S_3 = 1/3 mB3(m)", s["S3"], low / 3)
    yield residue("S_21 = -(n+1)/6 B'_{m-2}", s["S21"], -n1 / 6 * ctx.D(m - 2))
    yield residue("S_22 = (n+1)/6 B'_{m-2} - 2/(2n+1) bCB(m)", s["S22"],
                  n1 / 6 * ctx.D(m - 2) - Fraction(2, k + 1) * bcb(m))
    yield residue("S_23 = 2/3 mB3(m)", s["S23"], Fraction(2, 3) * low)
    yield residue("S_1 = -1/(2n+1) bCB(m)", s["S1"], Fraction(-1, k + 1) * bcb(m))
    yield residue("S_2 = S_21 + S_22 + S_23", s["S2"], s["S21"] + s["S22"] + s["S23"])
    yield exact("mB3(N) = S_1 + S_2 + S_3", mb3(big), s["S1"] + s["S2"] + s["S3"])


@register("C34", "cubic convolution difference mod p^4", "cubic-difference-rows",
          domain=_wide, min_prime=11)
def cubic_difference_rows(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, big = order_and_partner(ctx, k)
    p3 = p ** 3
    D = ctx.D
    u = crossing_sum(ctx, k)
    h_m = harmonic(m)
    h_odd, h2_odd = harmonic(k + 1), generalized_harmonic(k + 1, 2)
    delta = b3(big) - b3(m)
    r1 = 3 * h_m * (bcb(big) - bcb(m))
    r2 = 3 * (Fraction(1, p) + u) * bcb(big)
    r3 = 6 * mhs_depth2(big) * D(big) - 6 * mhs_depth2(m) * D(m)
    whole = multinomial_difference(ctx, k) - Fraction(k + 3, 2) * D(m - 2) + r1 + r2 + r3
    yield residue("p^3 Delta", p3 * delta, p3 * whole, power=4, note=ROW_NOTE)
    yield residue("p^3 R_1 = -6 p^3 H_{2n}/(2n+1) B'_m", p3 * r1,
                  -6 * p3 * harmonic(k) / (k + 1) * D(m), power=4)
    yield residue("p^3 R_3", p3 * r3,
                  6 * (h_odd / (k + 1) + 2 * h2_odd) * p3 * D(m) + 6 * h_odd * p ** 2 * D(big), power=4)
    yield residue("p^3 R_2 = 3p^2 bCB(N) - 6/(2n+1)^2 p^3 B'_m + 3/(2n+1) p^3 bCB(m)", p3 * r2,
                  3 * p ** 2 * bcb(big) - Fraction(6, (k + 1) ** 2) * p3 * D(m)
                  + Fraction(3, k + 1) * p3 * bcb(m), power=4)
    yield residue("3p^2 bCB(N) through Miki", 3 * p ** 2 * bcb(big),
                  3 * p ** 2 * cb(big) - 12 * p3 * h2_odd * D(m) - 6 * p * (1 + p * h_odd) * D(big), power=4)
    squares = -ctx.wsum(-k, 2) + 2 * (ctx.ag - 1) * D(m)
    expanded = (
        Fraction(3, k + 1) * p3 * cb(m)
        + 3 * p ** 2 * cb(m)
        + 3 * p3 * hensel_digit(cb(m) + tcb(p + 1 - k, p - 3, big), p, 1)
        + 3 * p ** 2 * hensel_digit(squares, p, 0)
        - 3 * p3 * weighted_quotient_squares(ctx, 2, m - 4, k)
        + 6 * p * (p * D(p - 1) - p ** 2 * (2 * h2_odd + h_odd / (k + 1))) * D(m)
        + 6 * p3 * ctx.em[2] * D(m - 2)
        - 6 * p * (1 + p * h_odd) * D(big)
    )
    yield residue("p^3 R_2 expanded", p3 * r2, expanded, power=4)


@register("C35", "cubic convolution difference mod p", "cubic-difference",
          domain=_wide, min_prime=11)
def cubic_difference(ctx: PrimeContext, params: Params):
    k = params["two_n"]
    m, big = order_and_partner(ctx, k)
    yield residue("p (B3(N) - B3(m)) = 3 CB(m)", ctx.p * (b3(big) - b3(m)), 3 * cb(m))


@register("C42", "cubic convolution of order p-1 from Gessel", "gessel-p-minus-1")
def gessel_p_minus_1(ctx: PrimeContext, params: Params):
    p = ctx.p
    D = ctx.D
    rhs = (
        sum((D(i) * bcb(p - 1 - i) for i in range(2, p - 4)), Fraction(0))
        + 6 * D(p - 1) * mhs_depth2(p - 1)
        - Fraction(9, 4) * D(p - 3)
    )
    yield residue("B3(p-1)", b3(p - 1), rhs)


@register("C43", "cubic convolution of order p-1 from (p-1)!", "factorial-digit")
def factorial_digit(ctx: PrimeContext, params: Params):
    p = ctx.p
    conv = cb(p - 1)
    inner = (
        -6 * ctx.stirling[1]
        + 3 * p ** 3 * hensel_digit(conv, p, 1)
        + 3 * p ** 2 * hensel_digit(conv, p, 0)
        - 6 * p * ctx.D(p - 1)
        - Fraction(15, 4) * p ** 3 * ctx.D(p - 3)
    )
    yield residue("B3(p-1) = (...)_3", b3(p - 1), hensel_digit(inner, p, 3))
    yield exact("Stirling row rebuilds x(x-1)...(x-p+1) at x = p+1", ctx.stirling.falling_factorial(p + 1), factorial(p + 1))


@register("C44", "Zhao's congruence for A_{2,p-1}", "zhao", min_prime=7)
def zhao(ctx: PrimeContext, params: Params):
    p = ctx.p
    lhs = mhs(2, p - 1)
    yield residue("A_{2,p-1} = H_{p-1}/p", lhs, harmonic(p - 1) / p, power=3)
    yield residue("A_{2,p-1} = -p(B'_{2p-4} - 2B'_{p-3})", lhs, -p * (ctx.D(2 * p - 4) - 2 * ctx.D(p - 3)), power=3)


@register("C45", "harmonic numbers across p", "harmonic-shift", domain=_narrow)
def harmonic_shift(ctx: PrimeContext, params: Params):
    p, k = ctx.p, params["two_n"]
    m, _ = order_and_partner(ctx, k)
    h_odd, h2_odd = harmonic(k + 1), generalized_harmonic(k + 1, 2)
    yield residue("H_m = p H_{2n,2} + H_{2n}", harmonic(m), p * generalized_harmonic(k, 2) + harmonic(k), power=2)
    yield residue("H_{m-1} = p H_{2n+1,2} + H_{2n+1}", harmonic(m - 1), p * h2_odd + h_odd, power=2)
    yield residue("H_{m-1,2} = -H_{2n+1,2}", generalized_harmonic(m - 1, 2), -h2_odd)
    yield residue("u = 1/(2n+1) + p(1/(2n+1)^2 + H_{2n+1,2})", crossing_sum(ctx, k),
                  Fraction(1, k + 1) + p * (Fraction(1, (k + 1) ** 2) + h2_odd), power=2)
    yield residue("A_{2,m-1} = A_{2,m} + H_{2n+1}/(2n+1)", mhs_depth2(m - 1), mhs_depth2(m) + h_odd / (k + 1))
    yield residue("A_{2,m-1} = -A_{2,2n} + H_{2n} H_{2n+1} + 1/(2n+1)^2", mhs_depth2(m - 1),
                  -mhs_depth2(k) + harmonic(k) * h_odd + Fraction(1, (k + 1) ** 2))


def _shift_domain(ctx: PrimeContext) -> list[Params]:
    return [
        {"two_n": pt["two_n"], "s": s}
        for pt in _narrow(ctx)
        for s in range(0, ctx.p - 2 - pt["two_n"], 2)
    ]


@register("C46", "binomial coefficients shifted by p-1", "binomial-shift", domain=_shift_domain)
def binomial_shift(ctx: PrimeContext, params: Params):
    p, k, s = ctx.p, params["two_n"], params["s"]
    lhs, rhs = binom_shift_pair(p, k // 2, s)
    yield residue("C(N, s) = C(m, s)(1 + s/(2n+1))", lhs, rhs)
    if s:
        return
    m, big = order_and_partner(ctx, k)
    yield residue("C(N, m-2) = -(2n+2)", comb(big, m - 2), -(k + 2))
    misses = [
        (i, j)
        for i in range(2, m - 3, 2)
        for j in range(2, m - 1 - i, 2)
        if ctx.res(comb(big - i, j) - comb(m - i, j) * Fraction(k + 1 + i + j, k + 1 + i))
    ]
    yield flag("C(N-i, j) = C(m-i, j)(2n+1+i+j)/(2n+1+i) for even i, j", not misses, True,
               note=", ".join(f"(i={i}, j={j})" for i, j in misses))
