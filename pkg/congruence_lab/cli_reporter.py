#file for the command line: run configuration, suite orchestration and report writers
"""
congruence-lab command line.

    congruence-lab verify --primes 11..97 --checks C01,C05-C07 --format csv
    congruence-lab tables --prime 37
    congruence-lab bernoulli --max-n 30 --divided

Settings come from built-in defaults, then an optional JSON file given by
--config (keys are the long flag names with underscores), then the
command line. CONGRUENCE_LAB_CACHE overrides --cache.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Mapping, Sequence

from sympy import isprime, primerange

from congruence_lab import __version__
from congruence_lab.bernoulli_engine import (
    BernoulliCache,
    bernoulli,
    divided_bernoulli,
    install_cache,
    irregular_pairs,
)
from congruence_lab.errors import CongruenceLabError
from congruence_lab.hensel_lifts import LiftTag, correction_residues
from congruence_lab.prime_context import DEFAULT_MAX_ORDER, DEFAULT_MAX_TWO_N, PrimeContext
from congruence_lab.registry import SuiteResult, iter_ids, load_catalog, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2
EXIT_IO = 3

CACHE_ENV = "CONGRUENCE_LAB_CACHE"
COMMANDS = ("verify", "tables", "bernoulli")
FORMATS = ("json", "csv", "text")
RECORD_FIELDS = ("id", "p", "params", "form", "modulus", "lhs", "rhs", "status", "note")
MAX_PRECISION = 8


@dataclass(frozen=True)
class RunConfig:
    command: str = "verify"
    p_min: int = 11
    p_max: int = 97
    precision: int = 5
    checks: tuple[str, ...] | None = None  # None runs the whole catalog
    max_two_n: int = DEFAULT_MAX_TWO_N
    max_order: int = DEFAULT_MAX_ORDER
    output: Path | None = None
    format: str = "json"
    workers: int = 1
    cache: Path | None = None
    prime: int = 11
    max_n: int = 30
    divided: bool = False
    log_level: int = logging.INFO

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.p_min < 5:
            raise ValueError(f"prime window must start at 5 or above, got {self.p_min}")
        if self.p_min > self.p_max:
            raise ValueError(f"empty prime window {self.p_min}..{self.p_max}")
        if not 1 <= self.precision <= MAX_PRECISION:
            raise ValueError(f"precision must be in [1, {MAX_PRECISION}], got {self.precision}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.max_two_n < 2 or self.max_order < 4:
            raise ValueError("max-2n must be >= 2 and max-order >= 4")
        if self.command == "tables" and (self.prime < 5 or not isprime(self.prime)):
            raise ValueError(f"--prime must be a prime >= 5, got {self.prime}")
        if self.max_n < 0:
            raise ValueError(f"max-n must be >= 0, got {self.max_n}")

    @property
    def primes(self) -> list[int]:
        return list(primerange(self.p_min, self.p_max + 1))

    def cache_bound(self) -> int:
        if self.command == "bernoulli":
            return max(self.max_n, 2)
        top = self.prime if self.command == "tables" else self.p_max
        return max(BernoulliCache.for_prime_bound(top).max_index, self.max_order)


def prime_window(text: str) -> tuple[int, int]:
    """'11..97' or a single '37'."""
    lo, sep, hi = str(text).partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None


def check_list(text: str) -> tuple[str, ...] | None:
    if str(text).strip().lower() == "all":
        return None
    ids = tuple(dict.fromkeys(iter_ids(str(text))))
    if not ids:
        raise argparse.ArgumentTypeError("empty check list")
    return ids


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", type=Path, help="JSON file with default settings")
    common.add_argument("--precision", type=int, help="working precision K in [1, 8] (default 5)")
    common.add_argument("--format", choices=FORMATS, help="report format (default json)")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--cache", type=Path, help="Bernoulli cache file, read if present and written otherwise")
    common.add_argument("-v", "--verbose", action="count", help="debug logging")
    common.add_argument("-q", "--quiet", action="count", help="warnings only")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    suite = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    suite.add_argument("--primes", type=prime_window, help="prime window A..B (default 11..97)")
    suite.add_argument("--checks", type=check_list, help="LIST like C01,C05-C07, or all")
    suite.add_argument("--max-2n", dest="max_2n", type=int, help="cap on 2n windows (default 40)")
    suite.add_argument("--max-order", type=int, help="largest order for the exact identities (default 40)")
    suite.add_argument("--workers", type=int, help="worker processes, one prime per task (default 1)")

    parser = argparse.ArgumentParser(
        prog="congruence-lab",
        description="Verify Bernoulli-number congruences in exact arithmetic.",
        parents=[common, suite],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command")
    commands.add_parser("verify", parents=[common, suite], argument_default=argparse.SUPPRESS,
                        help="run the check suite")
    tables = commands.add_parser("tables", parents=[common], argument_default=argparse.SUPPRESS,
                                 help="dump per-prime tables")
    tables.add_argument("--prime", type=int, help="the prime to tabulate")
    numbers = commands.add_parser("bernoulli", parents=[common], argument_default=argparse.SUPPRESS,
                                  help="print exact Bernoulli numbers")
    numbers.add_argument("--max-n", dest="max_n", type=int, help="largest index (default 30)")
    numbers.add_argument("--divided", action="store_true", help="also print B_n / n")
    return parser


# converters for values read from a --config file
_FILE_KEYS: dict[str, Callable[[Any], Any]] = {
    "primes": lambda v: tuple(v) if isinstance(v, (list, tuple)) else prime_window(v),
    "checks": lambda v: check_list(",".join(v) if isinstance(v, (list, tuple)) else v),
    "precision": int,
    "max_2n": int,
    "max_order": int,
    "workers": int,
    "format": str,
    "out": Path,
    "cache": Path,
    "prime": int,
    "max_n": int,
    "divided": bool,
    "verbose": int,
    "quiet": int,
}


def _read_config_file(path: Path) -> dict[str, Any]:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise CongruenceLabError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, Mapping):
        raise CongruenceLabError(f"config {path} must hold a JSON object")
    settings: dict[str, Any] = {}
    for key, value in raw.items():
        key = key.replace("-", "_")
        if key not in _FILE_KEYS:
            raise ValueError(f"unknown config key {key!r} in {path}")
        try:
            settings[key] = _FILE_KEYS[key](value)
        except (TypeError, argparse.ArgumentTypeError) as exc:
            raise ValueError(f"bad value for {key!r} in {path}: {exc}") from exc
    return settings


def _to_config(command: str, settings: Mapping[str, Any]) -> RunConfig:
    fields: dict[str, Any] = {"command": command}
    if "primes" in settings:
        fields["p_min"], fields["p_max"] = settings["primes"]
    renames = {"max_2n": "max_two_n", "out": "output"}
    for key in ("precision", "checks", "max_2n", "max_order", "out", "format", "workers",
                "cache", "prime", "max_n", "divided"):
        if key in settings:
            fields[renames.get(key, key)] = settings[key]
    if settings.get("verbose"):
        fields["log_level"] = logging.DEBUG
    elif settings.get("quiet"):
        fields["log_level"] = logging.WARNING
    checks = fields.get("checks")
    if checks is not None:
        unknown = [c for c in checks if c not in load_catalog()]
        if unknown:
            raise ValueError(f"unknown check ids: {', '.join(unknown)}")
    return RunConfig(**fields)


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    """Defaults < --config file < flags; usage errors exit with status 2.

    An unreadable config file raises CongruenceLabError.
    """
    parser = build_parser()
    args = vars(parser.parse_args(argv))
    command = args.pop("command", None) or "verify"
    config_path = args.pop("config", None)
    try:
        settings = _read_config_file(config_path) if config_path is not None else {}
        settings.update(args)
        if os.environ.get(CACHE_ENV):
            settings["cache"] = Path(os.environ[CACHE_ENV])
        return _to_config(command, settings)
    except ValueError as exc:
        parser.error(str(exc))


def prepare_cache(config: RunConfig) -> BernoulliCache:
    """Load the cache file when it is large enough, otherwise build and write it."""
    bound = config.cache_bound()
    path = config.cache
    if path is not None and path.exists():
        cache = BernoulliCache.load(path)
        if cache.max_index >= bound:
            install_cache(cache)
            return cache
        logger.info("cache %s stops at B_%d, rebuilding to B_%d", path, cache.max_index, bound)
    cache = BernoulliCache(bound)
    if path is not None:
        cache.dump(path)
    install_cache(cache)
    return cache


def report_payload(config: RunConfig, result: SuiteResult) -> dict[str, Any]:
    checks = list(config.checks) if config.checks is not None else sorted(load_catalog())
    return {
        "meta": {
            "p_range": [config.p_min, config.p_max],
            "K": config.precision,
            "version": __version__,
            "checks": checks,
            "readings": dict(sorted(result.readings.items())),
            "notes": dict(sorted(result.notes.items())),
        },
        "records": [r.to_record() for r in result.records],
        "summary": result.summary(),
    }


def _params_text(params: Mapping[str, int]) -> str:
    return json.dumps(params, sort_keys=True, separators=(",", ":"))


def render_json(payload: Mapping[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_csv(payload: Mapping[str, Any]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=RECORD_FIELDS, lineterminator="\n")
    writer.writeheader()
    for record in payload["records"]:
        writer.writerow({**record, "params": _params_text(record["params"])})
    return buffer.getvalue()


def render_text(payload: Mapping[str, Any]) -> str:
    meta = payload["meta"]
    lo, hi = meta["p_range"]
    lines = [f"congruence-lab {meta['version']}: primes {lo}..{hi}, K={meta['K']}", ""]
    for check_id, counts in payload["summary"].items():
        tally = " ".join(f"{status}={count}" for status, count in counts.items() if count)
        lines.append(f"{check_id}: {tally}")
    for check_id, reading in meta["readings"].items():
        lines.append(f"{check_id} reading: {reading or 'none holds everywhere'}")
    for check_id, note in meta["notes"].items():
        lines.append(f"{check_id} note: {note}")
    failing = [r for r in payload["records"] if r["status"] == "fail"]
    if failing:
        lines += ["", "failures:"]
        for r in failing:
            lines.append(
                f"  - {r['id']} p={r['p']} {_params_text(r['params'])} {r['form']}: "
                f"{r['lhs']} != {r['rhs']} mod {r['modulus']} {r['note']}".rstrip()
            )
    return "\n".join(lines) + "\n"


RENDERERS: dict[str, Callable[[Mapping[str, Any]], str]] = {
    "json": render_json,
    "csv": render_csv,
    "text": render_text,
}


def tables_payload(config: RunConfig) -> dict[str, Any]:
    p, K = config.prime, config.precision
    ctx = PrimeContext(p, K)
    modulus = p ** K
    payload: dict[str, Any] = {
        "prime": p,
        "K": K,
        "q": {str(a): ctx.q(a) % modulus for a in ctx.bases()},
        "w_p": ctx.w_p % modulus,
        "AG": str(ctx.ag),
        "D": {str(i): value for i, value in sorted(ctx.em.items())},
        "irregular_pairs": [list(pair) for pair in irregular_pairs(p)],
        "stirling": list(ctx.stirling.row),
    }
    if K >= 2:
        payload["corrections"] = {
            tag.value: {str(a): r.value for a, r in correction_residues(ctx.family(tag)).items()} for tag in LiftTag
        }
    return payload


def bernoulli_payload(config: RunConfig) -> dict[str, Any]:
    values: dict[str, Any] = {str(n): str(bernoulli(n)) for n in range(config.max_n + 1)}
    payload: dict[str, Any] = {"B": values}
    if config.divided:
        payload["divided"] = {str(t): str(divided_bernoulli(t)) for t in range(1, config.max_n + 1)}
    return payload


def _render_table(payload: Mapping[str, Any], fmt: str) -> str:
    if fmt == "json":
        return render_json(payload)
    rows = [(name, key, value) for name, column in payload.items() if isinstance(column, Mapping)
            for key, value in column.items()]
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(("table", "index", "value"))
        for name, key, value in rows:
            writer.writerow((name, key, json.dumps(value) if isinstance(value, Mapping) else value))
        for name, value in payload.items():
            if not isinstance(value, Mapping):
                writer.writerow((name, "", json.dumps(value)))
        return buffer.getvalue()
    lines = [f"{name}: {value}" for name, value in payload.items() if not isinstance(value, Mapping)]
    lines += [f"{name}[{key}] = {value}" for name, key, value in rows]
    return "\n".join(lines) + "\n"


def _write(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    output.write_text(text, encoding="utf-8")
    logger.info("wrote report to %s", output)


def execute(config: RunConfig) -> int:
    """Run one command; exit 0 iff no non-exploratory record failed."""
    try:
        cache = prepare_cache(config)
        if config.command == "tables":
            _write(_render_table(tables_payload(config), config.format), config.output)
            return EXIT_OK
        if config.command == "bernoulli":
            _write(_render_table(bernoulli_payload(config), config.format), config.output)
            return EXIT_OK
        primes = config.primes
        logger.info("verifying %d primes in %d..%d at K=%d", len(primes), config.p_min, config.p_max,
                    config.precision)
        result = run_suite(
            primes,
            config.checks,
            config.precision,
            max_two_n=config.max_two_n,
            max_order=config.max_order,
            workers=config.workers,
            cache=cache,
        )
        _write(RENDERERS[config.format](report_payload(config, result)), config.output)
    except (OSError, CongruenceLabError) as exc:
        logger.error("%s", exc)
        return EXIT_IO
    failures = result.failures
    if failures:
        logger.warning("%d failing records", len(failures))
        return EXIT_FAILURES
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = parse_config(argv)
    except CongruenceLabError as exc:
        logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
        logger.error("%s", exc)
        return EXIT_IO
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=config.log_level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
