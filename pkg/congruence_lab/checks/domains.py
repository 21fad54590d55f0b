"""
Parameter windows shared by the check modules.

Every helper takes the per-prime context and returns the list of
parameter dicts the check is stated for. Windows over 2n are capped by
the run's max_two_n.
"""

from __future__ import annotations

from congruence_lab.prime_context import PrimeContext
from congruence_lab.registry import Params


def even_t(ctx: PrimeContext, lo: int, hi: int) -> list[Params]:
    return [{"t": t} for t in range(lo + lo % 2, hi + 1, 2)]


def odd_t(ctx: PrimeContext, lo: int, hi: int) -> list[Params]:
    return [{"t": t} for t in range(lo + 1 - lo % 2, hi + 1, 2)]


def two_n(ctx: PrimeContext, lo: int, hi: int) -> list[Params]:
    """Even 2n in [lo, hi], cut at the run's max_two_n."""
    top = min(hi, ctx.max_two_n)
    return [{"two_n": k} for k in range(lo, top + 1, 2)]


def bases(ctx: PrimeContext) -> list[Params]:
    return [{"a": a} for a in ctx.bases()]


def order_and_partner(ctx: PrimeContext, two_n_value: int) -> tuple[int, int]:
    """m = p-1-2n and N = 2(p-1)-2n."""
    p = ctx.prime
    return p - 1 - two_n_value, 2 * (p - 1) - two_n_value
