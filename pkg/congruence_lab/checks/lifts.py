#file for the checks on lifted roots of X^{p-1} - (1 - p kappa)
"""
Sums of powers weighted by the Teichmuller characters omega_a = a + p v_a
and their analogues Omega_a = a + p w_a, gamma_a = a + p z_a.

These read digits of lifted roots, so each check declares the working
precision it needs and is skipped below it.
"""

from __future__ import annotations

from fractions import Fraction

from congruence_lab.checks.domains import bases
from congruence_lab.hensel_lifts import (
    LiftTag,
    first_order_correction,
    kappa,
    newton_symmetric_check,
    root_power,
    second_order_correction,
)
from congruence_lab.prime_context import PrimeContext
from congruence_lab.registry import Params, flag, register, residue


def _t_window(ctx: PrimeContext) -> list[Params]:
    return [{"t": t} for t in range(4, ctx.p - 1)]


def _odd_window(ctx: PrimeContext) -> list[Params]:
    return [{"t": t} for t in range(5, ctx.p - 1, 2)]


def correction_sum(ctx: PrimeContext, tag: LiftTag, exponent: int, power: int = 1) -> int:
    """sum_a a^exponent c_a^power with c_a the lift correction of the family."""
    modulus = ctx.p ** (ctx.precision - 1)
    return sum(
        pow(a, exponent, modulus) * pow(ctx.correction(tag, a), power, modulus) for a in ctx.bases()
    ) % modulus


@register("C06", "B'_t from Teichmuller corrections", "teichmuller-bernoulli",
          domain=lambda ctx: [{"t": t} for t in range(4, ctx.p - 2, 2)], min_precision=3)
def teichmuller_bernoulli(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    tag = LiftTag.TEICHMULLER
    rhs = -correction_sum(ctx, tag, t - 1) - Fraction(t - 1, 2) * p * correction_sum(ctx, tag, t - 2, 2)
    yield residue("-sum a^{t-1} v_a - (t-1)/2 p sum a^{t-2} v_a^2", ctx.D(t), rhs, power=2)


@register("C15", "odd powers with the Teichmuller correction", "teichmuller-odd",
          domain=_odd_window, min_precision=2)
def teichmuller_odd(ctx: PrimeContext, params: Params):
    t = params["t"]
    total = sum(
        ctx.q(a) * a ** (t - 1) * (1 + ctx.correction(LiftTag.TEICHMULLER, a)) for a in ctx.bases()
    )
    yield residue("sum q_a a^{t-1} (1 + v_a) = 0", total, 0)


def _root_sum(ctx: PrimeContext, tag: LiftTag, t: int) -> int:
    family = ctx.family(tag)
    return sum(a ** (t - 1) * family.root(a).value for a in ctx.bases())


@register("C26", "powers weighted by lifted roots mod p^3", "root-weighted",
          domain=_t_window, min_precision=3)
def root_weighted(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    for tag in LiftTag:
        lhs = _root_sum(ctx, tag, t)
        if t % 2 == 0:
            k = Fraction(kappa(p, tag))
            rhs = p * (t - 1) * (ctx.D(p - 1 + t) + p * k * ctx.D(t))
            yield residue(f"{tag.value}: p(t-1)(B'_{{p-1+t}} + p kappa B'_t)", lhs, rhs, power=3)
        else:
            yield residue(f"{tag.value}: p^2 (t/2-1) B_{{t-1}}", lhs,
                          p ** 2 * Fraction(t - 2, 2) * ctx.B(t - 1), power=3)


@register("C37", "odd powers of Teichmuller characters mod p^3", "teichmuller-odd-p3",
          domain=_odd_window, min_precision=3)
def teichmuller_odd_p3(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    tag = LiftTag.TEICHMULLER
    linear = correction_sum(ctx, tag, t - 1)
    square = correction_sum(ctx, tag, t - 2, 2)
    yield residue("(p^2/2) t B_{t-1}", Fraction(p ** 2, 2) * t * ctx.B(t - 1),
                  -t * p * linear - p ** 2 * Fraction(t * (t - 1), 2) * square, power=3)
    yield residue("(p/2) B_{t-1}", Fraction(p, 2) * ctx.B(t - 1),
                  -linear - p * Fraction(t - 1, 2) * square, power=2)
    yield residue("(p/2) B_{p-2+t}", Fraction(p, 2) * ctx.B(p - 2 + t),
                  -correction_sum(ctx, tag, p - 2 + t) - p * Fraction(t - 2, 2) * square, power=2)


@register("C40", "Wilson-analogue corrections", "wilson-analog-sums",
          domain=_t_window, min_precision=3)
def wilson_analog_sums(ctx: PrimeContext, params: Params):
    p, t = ctx.p, params["t"]
    tag = LiftTag.WILSON_ANALOG
    lhs = correction_sum(ctx, tag, t - 1)
    if t % 2:
        yield residue("-pB_{t-1}", lhs, -p * ctx.B(t - 1), power=2)
        return
    rhs = (t - 1) * ctx.D(p - 1 + t) - t * ctx.D(t) + p * (t - 1) * ctx.w_p * ctx.D(t)
    yield residue("(t-1)B'_{p-1+t} - t B'_t + p(t-1) w_p B'_t", lhs, rhs, power=2)
    yield residue("B'_t = -sum w_a a^{t-1} - p(t-1)/2 sum w_a^2 a^{t-2}", ctx.D(t),
                  -lhs - p * Fraction(t - 1, 2) * correction_sum(ctx, tag, t - 2, 2), power=2)


@register("C41", "second-order lift corrections", "second-order-corrections",
          domain=bases, min_precision=3)
def second_order_corrections(ctx: PrimeContext, params: Params):
    a = params["a"]
    for tag in (LiftTag.BERNOULLI_ANALOG, LiftTag.TEICHMULLER, LiftTag.WILSON_ANALOG):
        yield residue(f"{tag.value}: a c + a p (1 + kappa) c, c = q_a + kappa",
                      ctx.correction(tag, a), second_order_correction(ctx.p, a, tag), power=2)


@register("C50", "Newton's identities on the lifted roots", "newton-symmetric")
def newton_symmetric(ctx: PrimeContext, params: Params):
    p, K = ctx.p, ctx.precision
    for tag in LiftTag:
        check = newton_symmetric_check(ctx.family(tag))
        failures = check.vanishing_failures()
        yield flag(f"{tag.value}: s_t, sigma_t, s_{{p-1+t}} vanish for t <= p-2", not failures, True,
                   note=", ".join(failures))
        defects = [t for t in range(1, p) if check.newton_defect(t)]
        yield flag(f"{tag.value}: Newton identities for t <= p-1", not defects, True,
                   note=", ".join(f"t={t}" for t in defects))
        yield residue(f"{tag.value}: s_{{p-1}} = (p-1) X^{{p-1}}", check.s(p - 1),
                      (p - 1) * root_power(p, tag), power=K)
        yield residue(f"{tag.value}: product of roots", check.sigma(p - 1), -root_power(p, tag), power=K)


@register("C51", "first-order lift corrections", "first-order-corrections",
          domain=bases, min_precision=2)
def first_order_corrections(ctx: PrimeContext, params: Params):
    p, a = ctx.p, params["a"]
    q = ctx.q(a)
    yield residue("v_a = a q_a", ctx.correction(LiftTag.TEICHMULLER, a), a * q)
    yield residue("w_a = a (w_p + q_a)", ctx.correction(LiftTag.WILSON_ANALOG, a), a * (ctx.w_p + q))
    yield residue("z_a = a (q_a + AG)", ctx.correction(LiftTag.BERNOULLI_ANALOG, a), a * (q + ctx.ag))
    yield residue("p w_a = a (1 + (p-1)! + p q_a)", p * ctx.correction(LiftTag.WILSON_ANALOG, a),
                  a * (1 + ctx.stirling[1] + p * q), power=2)
    for tag in LiftTag:
        yield residue(f"{tag.value}: a (q_a + kappa)", ctx.correction(tag, a), first_order_correction(p, a, tag))
