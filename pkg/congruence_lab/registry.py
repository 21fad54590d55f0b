#file for the check catalog: definitions, evaluation and suite runs
"""
Check registry.

A check is a domain (the parameter points where its statement is made)
and an evaluator that turns one parameter point into Comparisons. The
registry evaluates comparisons into CongruenceReports and never raises:
library errors become failed records, excluded parameters become
skipped-hypothesis records.

Some statements are ambiguous as printed. Their evaluators tag each
comparison with a reading name; after a suite run the reading that holds
everywhere keeps its pass/fail status and the others are demoted to
exploratory records.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from congruence_lab.bernoulli_engine import BernoulliCache, default_cache, install_cache
from congruence_lab.errors import CongruenceLabError, HypothesisOutOfRange
from congruence_lab.exact_arith import INFINITE_VALUATION, reduce_mod, valuation
from congruence_lab.prime_context import DEFAULT_MAX_ORDER, DEFAULT_MAX_TWO_N, PrimeContext

logger = logging.getLogger(__name__)

Params = Mapping[str, int]


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped-hypothesis"
    EXPLORATORY = "exploratory"


class Kind(Enum):
    RESIDUE = "residue"
    EXACT = "exact"
    VALUATION = "valuation"
    FLAG = "flag"
    SKIP = "skip"


@dataclass(frozen=True)
class Comparison:
    form: str
    lhs: Any = 0
    rhs: Any = 0
    power: int = 1
    kind: Kind = Kind.RESIDUE
    note: str = ""
    reading: str | None = None


def residue(form: str, lhs: Any, rhs: Any, power: int = 1, note: str = "", reading: str | None = None) -> Comparison:
    return Comparison(form, lhs, rhs, power, Kind.RESIDUE, note, reading)


def exact(form: str, lhs: Any, rhs: Any, note: str = "") -> Comparison:
    return Comparison(form, lhs, rhs, 0, Kind.EXACT, note)


def valuation_at_least(form: str, value: Any, power: int, note: str = "") -> Comparison:
    return Comparison(form, value, power, power, Kind.VALUATION, note)


def flag(form: str, lhs: bool, rhs: bool, note: str = "") -> Comparison:
    return Comparison(form, int(lhs), int(rhs), 1, Kind.FLAG, note)


def skip(form: str, reason: str) -> Comparison:
    return Comparison(form, kind=Kind.SKIP, note=reason)


@dataclass(frozen=True)
class CongruenceReport:
    check_id: str
    prime: int
    params: tuple[tuple[str, int], ...]
    form: str
    modulus: str
    lhs: str
    rhs: str
    status: Status
    note: str = ""
    reading: str | None = None

    def sort_key(self) -> tuple:
        return (self.check_id, self.prime, self.params)

    def to_record(self) -> dict[str, Any]:
        return {
            "id": self.check_id,
            "p": self.prime,
            "params": dict(self.params),
            "form": self.form,
            "modulus": self.modulus,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status.value,
            "note": self.note,
        }


@dataclass(frozen=True)
class CheckDefinition:
    check_id: str
    title: str
    anchor: str
    domain: Callable[[PrimeContext], Iterable[Params]]
    evaluator: Callable[[PrimeContext, Params], Iterable[Comparison]]
    min_prime: int = 5
    min_precision: int = 1
    per_prime: bool = True
    exploratory: bool = False
    readings: tuple[str, ...] = ()


REGISTRY: dict[str, CheckDefinition] = {}


def single(ctx: PrimeContext) -> list[Params]:
    return [{}]


def register(
    check_id: str,
    title: str,
    anchor: str,
    domain: Callable[[PrimeContext], Iterable[Params]] = single,
    **options: Any,
) -> Callable[[Callable[[PrimeContext, Params], Iterable[Comparison]]], Callable[[PrimeContext, Params], Iterable[Comparison]]]:
    def decorate(evaluator: Callable[[PrimeContext, Params], Iterable[Comparison]]):
        if check_id in REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = CheckDefinition(check_id, title, anchor, domain, evaluator, **options)
        return evaluator

    return decorate


def load_catalog() -> dict[str, CheckDefinition]:
    # importing the check modules fills REGISTRY
    from congruence_lab import checks  # noqa: F401

    return REGISTRY


def _modulus_label(comparison: Comparison) -> str:
    if comparison.kind is Kind.EXACT:
        return "exact"
    return "p" if comparison.power == 1 else f"p^{comparison.power}"


def _fmt(value: Any) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if value == INFINITE_VALUATION:
        return "inf"
    return str(int(value))


def _evaluate(definition: CheckDefinition, ctx: PrimeContext, params: Params, comparison: Comparison) -> CongruenceReport:
    p = ctx.prime
    key = tuple(sorted(params.items()))
    note = comparison.note
    lhs = rhs = ""
    if comparison.kind is Kind.SKIP:
        status = Status.SKIPPED
    elif comparison.kind is Kind.EXACT:
        lhs, rhs = _fmt(Fraction(comparison.lhs)), _fmt(Fraction(comparison.rhs))
        status = Status.PASS if Fraction(comparison.lhs) == Fraction(comparison.rhs) else Status.FAIL
    elif comparison.kind is Kind.VALUATION:
        v = valuation(comparison.lhs, p)
        lhs, rhs = _fmt(v), f">={comparison.power}"
        status = Status.PASS if v >= comparison.power else Status.FAIL
    elif comparison.kind is Kind.FLAG:
        lhs, rhs = str(comparison.lhs), str(comparison.rhs)
        status = Status.PASS if comparison.lhs == comparison.rhs else Status.FAIL
    else:
        try:
            left = reduce_mod(comparison.lhs, p, comparison.power).value
            right = reduce_mod(comparison.rhs, p, comparison.power).value
        except CongruenceLabError as exc:
            return CongruenceReport(
                definition.check_id, p, key, comparison.form, _modulus_label(comparison), "", "",
                Status.FAIL, f"{type(exc).__name__}: {exc}", comparison.reading,
            )
        lhs, rhs = str(left), str(right)
        status = Status.PASS if left == right else Status.FAIL
    if definition.exploratory and status in (Status.PASS, Status.FAIL):
        note = note or ("matches" if status is Status.PASS else "differs")
        status = Status.EXPLORATORY
    return CongruenceReport(
        definition.check_id, p, key, comparison.form, _modulus_label(comparison), lhs, rhs,
        status, note, comparison.reading,
    )


def _refusal(definition: CheckDefinition, ctx: PrimeContext) -> str | None:
    if definition.per_prime and ctx.prime < definition.min_prime:
        return f"stated for p >= {definition.min_prime}"
    if ctx.precision < definition.min_precision:
        return f"working precision {ctx.precision} below requirement {definition.min_precision}"
    return None


def evaluate_point(definition: CheckDefinition, ctx: PrimeContext, params: Params) -> list[CongruenceReport]:
    key = tuple(sorted(params.items()))
    try:
        comparisons = list(definition.evaluator(ctx, params))
    except HypothesisOutOfRange as exc:
        comparisons = [skip("all", str(exc))]
    except CongruenceLabError as exc:
        logger.warning("%s at p=%d %s raised %s", definition.check_id, ctx.prime, key, exc)
        return [
            CongruenceReport(definition.check_id, ctx.prime, key, "evaluation", "", "", "",
                             Status.FAIL, f"{type(exc).__name__}: {exc}")
        ]
    return [_evaluate(definition, ctx, params, c) for c in comparisons]


def evaluate_check(definition: CheckDefinition, ctx: PrimeContext) -> list[CongruenceReport]:
    reason = _refusal(definition, ctx)
    if reason is not None:
        return [CongruenceReport(definition.check_id, ctx.prime, (), "all", "", "", "", Status.SKIPPED, reason)]
    reports: list[CongruenceReport] = []
    for params in definition.domain(ctx):
        reports.extend(evaluate_point(definition, ctx, params))
    return reports


def run_check(
    check_id: str,
    p: int,
    params: Params,
    K: int,
    ctx: PrimeContext | None = None,
) -> list[CongruenceReport]:
    """Evaluate one check at one parameter point; one report per displayed form."""
    definition = load_catalog()[check_id]
    ctx = ctx or PrimeContext(p, K)
    reason = _refusal(definition, ctx)
    if reason is not None:
        key = tuple(sorted(params.items()))
        return [CongruenceReport(check_id, p, key, "all", "", "", "", Status.SKIPPED, reason)]
    return evaluate_point(definition, ctx, params)


@dataclass
class SuiteResult:
    records: list[CongruenceReport]
    readings: dict[str, str | None] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)

    def summary(self) -> dict[str, dict[str, int]]:
        counts: dict[str, Counter] = defaultdict(Counter)
        for record in self.records:
            counts[record.check_id][record.status.value] += 1
        return {
            check_id: {status.value: counts[check_id][status.value] for status in Status}
            for check_id in sorted(counts)
        }

    @property
    def failures(self) -> list[CongruenceReport]:
        return [r for r in self.records if r.status is Status.FAIL]


def _run_prime(p: int, check_ids: Sequence[str], K: int, max_two_n: int, max_order: int) -> list[CongruenceReport]:
    catalog = load_catalog()
    ctx = PrimeContext(p, K, max_two_n, max_order)
    reports: list[CongruenceReport] = []
    for check_id in check_ids:
        reports.extend(evaluate_check(catalog[check_id], ctx))
    logger.info("p=%d: %d records", p, len(reports))
    return reports


def _resolve_readings(result: SuiteResult, catalog: Mapping[str, CheckDefinition]) -> None:
    for check_id, definition in catalog.items():
        if not definition.readings:
            continue
        own = [r for r in result.records if r.check_id == check_id and r.reading is not None]
        if not own:
            continue
        tallies = {name: Counter(r.status for r in own if r.reading == name) for name in definition.readings}
        clean = [name for name in definition.readings if tallies[name][Status.FAIL] == 0 and tallies[name][Status.PASS]]
        winner = clean[0] if clean else max(definition.readings, key=lambda n: tallies[n][Status.PASS])
        result.readings[check_id] = winner if clean else None
        logger.info("%s: reading %s %s", check_id, winner, "holds everywhere" if clean else "has failures")
        result.records = [
            r if r.check_id != check_id or r.reading in (None, winner)
            else CongruenceReport(r.check_id, r.prime, r.params, r.form, r.modulus, r.lhs, r.rhs,
                                  Status.EXPLORATORY, r.note or "alternative reading", r.reading)
            for r in result.records
        ]


def run_suite(
    primes: Iterable[int],
    checks: Iterable[str] | None = None,
    K: int = 5,
    *,
    max_two_n: int = DEFAULT_MAX_TWO_N,
    max_order: int = DEFAULT_MAX_ORDER,
    workers: int = 1,
    cache: BernoulliCache | None = None,
) -> SuiteResult:
    """Run checks over primes; records ordered by check id, prime, params."""
    catalog = load_catalog()
    check_ids = sorted(checks) if checks is not None else sorted(catalog)
    unknown = [c for c in check_ids if c not in catalog]
    if unknown:
        raise KeyError(f"unknown check ids: {', '.join(unknown)}")
    primes = sorted(primes)
    if not primes:
        return SuiteResult([])
    cache = cache or default_cache(BernoulliCache.for_prime_bound(max(primes)).max_index)
    install_cache(cache)

    per_prime = [c for c in check_ids if catalog[c].per_prime]
    identities = [c for c in check_ids if not catalog[c].per_prime]
    records: list[CongruenceReport] = []
    if identities:
        ctx = PrimeContext(0, K, max_two_n, max_order)
        for check_id in identities:
            records.extend(evaluate_check(catalog[check_id], ctx))
    if per_prime:
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers, initializer=install_cache, initargs=(cache,)) as pool:
                futures = [pool.submit(_run_prime, p, per_prime, K, max_two_n, max_order) for p in primes]
                for future in futures:
                    records.extend(future.result())
        else:
            for p in primes:
                records.extend(_run_prime(p, per_prime, K, max_two_n, max_order))
    records.sort(key=CongruenceReport.sort_key)
    result = SuiteResult(records)
    _resolve_readings(result, {c: catalog[c] for c in check_ids})
    for check_id in check_ids:
        extra = getattr(catalog[check_id].evaluator, "suite_note", None)
        if extra is not None:
            result.notes[check_id] = extra(max_order) if callable(extra) else extra
    return result


def iter_ids(spec: str) -> Iterator[str]:
    """Expand 'C01,C05-C07' into ids."""
    for part in spec.split(","):
        part = part.strip().upper()
        if not part:
            continue
        if "-" in part:
            start, stop = part.split("-", 1)
            for n in range(int(start.lstrip("C")), int(stop.lstrip("C")) + 1):
                yield f"C{n:02d}"
        else:
            yield part
