#!/usr/bin/env python3
"""
Command line tests: settings precedence, exit codes and report writers.

Run via: python tests/test_cli.py
"""

import csv
import json
import os
import sys
import tempfile
from pathlib import Path

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from congruence_lab.cli_reporter import (
    CACHE_ENV,
    EXIT_FAILURES,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    main,
    parse_config,
)


def _run(args, tmp):
    """Run main with --out in tmp; return (exit code, report text)."""
    out = Path(tmp) / "report.out"
    code = main(list(args) + ["--out", str(out)])
    return code, out.read_text(encoding="utf-8") if out.exists() else ""


def test_defaults():
    print("=" * 70)
    print("Test 1: Defaults and a verify command line")
    print("=" * 70)

    saved = os.environ.pop(CACHE_ENV, None)
    try:
        default = parse_config([])
        config = parse_config(["verify", "--primes", "11..31", "--checks", "C01,C05", "--format", "csv"])
    finally:
        if saved is not None:
            os.environ[CACHE_ENV] = saved
    print(f"  {config}")
    passed = (
        default == RunConfig()
        and config.checks == ("C01", "C05")
        and (config.p_min, config.p_max) == (11, 31)
        and config.format == "csv"
        and config.primes == [11, 13, 17, 19, 23, 29, 31]
    )
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_usage_errors():
    print("=" * 70)
    print("Test 2: Usage errors exit with status 2")
    print("=" * 70)

    for argv in (
        ["verify", "--primes", "7..5"],
        ["verify", "--primes", "3..11"],
        ["verify", "--precision", "9"],
        ["verify", "--checks", "C99"],
        ["tables", "--prime", "15"],
    ):
        with pytest.raises(SystemExit) as info:
            parse_config(argv)
        assert info.value.code == EXIT_USAGE
    assert main(["verify", "--primes", "abc"]) == EXIT_USAGE
    print("  ✓ PASS\n")


def test_config_file_precedence():
    """Flags override the config file, which overrides the defaults."""
    print("=" * 70)
    print("Test 3: --config file below command-line flags")
    print("=" * 70)

    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "lab.json"
        path.write_text(json.dumps({"precision": 3, "primes": "11..23", "format": "csv",
                                    "checks": ["C01", "C47"]}), encoding="utf-8")
        config = parse_config(["verify", "--config", str(path), "--precision", "2"])
        bad = Path(tmp) / "bad.json"
        bad.write_text(json.dumps({"colour": "blue"}), encoding="utf-8")
        with pytest.raises(SystemExit):
            parse_config(["verify", "--config", str(bad)])
    print(f"  {config}")
    passed = (
        config.precision == 2
        and (config.p_min, config.p_max) == (11, 23)
        and config.format == "csv"
        and config.checks == ("C01", "C47")
    )
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_cache_environment_override():
    print("=" * 70)
    print(f"Test 4: {CACHE_ENV} overrides --cache")
    print("=" * 70)

    saved = os.environ.get(CACHE_ENV)
    os.environ[CACHE_ENV] = "/tmp/from-env.cache"
    try:
        config = parse_config(["verify", "--cache", "/tmp/from-flag.cache"])
    finally:
        if saved is None:
            del os.environ[CACHE_ENV]
        else:
            os.environ[CACHE_ENV] = saved
    passed = config.cache == Path("/tmp/from-env.cache")
    print(f"  cache = {config.cache}")
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_verify_json_report():
    print("=" * 70)
    print("Test 5: verify writes a JSON report and exits 0")
    print("=" * 70)

    with tempfile.TemporaryDirectory() as tmp:
        code, text = _run(["verify", "--primes", "11..19", "--checks", "C01", "--precision", "2", "-q"], tmp)
    report = json.loads(text)
    print(f"  exit {code}, {len(report['records'])} records, summary {report['summary']}")
    passed = (
        code == EXIT_OK
        and set(report) == {"meta", "records", "summary"}
        and report["meta"]["p_range"] == [11, 19]
        and report["meta"]["K"] == 2
        and report["meta"]["checks"] == ["C01"]
        and {r["p"] for r in report["records"]} == {11, 13, 17, 19}
        and all(r["status"] == "pass" for r in report["records"])
        and report["summary"]["C01"]["fail"] == 0
    )
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_csv_matches_json():
    print("=" * 70)
    print("Test 6: CSV and JSON reports hold the same records")
    print("=" * 70)

    args = ["verify", "--primes", "11..13", "--checks", "C01,C47,C48", "--precision", "2", "-q"]
    with tempfile.TemporaryDirectory() as tmp:
        _, text_json = _run(args + ["--format", "json"], tmp)
        _, text_csv = _run(args + ["--format", "csv"], tmp)
    from_json = {
        (r["id"], str(r["p"]), json.dumps(r["params"], sort_keys=True, separators=(",", ":")),
         r["form"], r["lhs"], r["rhs"], r["status"])
        for r in json.loads(text_json)["records"]
    }
    rows = list(csv.DictReader(text_csv.splitlines()))
    from_csv = {(r["id"], r["p"], r["params"], r["form"], r["lhs"], r["rhs"], r["status"]) for r in rows}
    print(f"  {len(from_json)} JSON records, {len(from_csv)} CSV rows")
    passed = from_json == from_csv and len(rows) == len(from_csv) and len(rows) > 0
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_exploratory_and_irregular_runs():
    """Exploratory records never fail a run; the irregular pair shows up as a note."""
    print("=" * 70)
    print("Test 7: C49 alone and C02 at p = 37")
    print("=" * 70)

    with tempfile.TemporaryDirectory() as tmp:
        code_c49, _ = _run(["verify", "--primes", "11..13", "--checks", "C49", "--precision", "1", "-q"], tmp)
        code_c02, text = _run(["verify", "--primes", "37", "--checks", "C02", "--precision", "1", "-q"], tmp)
    notes = [r for r in json.loads(text)["records"] if r["note"] == "irregular pair"]
    passed = code_c49 == EXIT_OK and code_c02 == EXIT_OK and [r["params"]["t"] for r in notes] == [32]
    print(f"  C49 exit {code_c49}, C02 exit {code_c02}")
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_text_report():
    print("=" * 70)
    print("Test 8: Text report summary lines")
    print("=" * 70)

    with tempfile.TemporaryDirectory() as tmp:
        code, text = _run(["verify", "--primes", "11", "--checks", "C47", "--format", "text", "-q"], tmp)
    print(text)
    passed = code == EXIT_OK and text.startswith("congruence-lab ") and "C47: pass=4" in text
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_tables_and_bernoulli_commands():
    """At p = 7: q_a = 0, 2, 6, 4, 6, 1 and w_7 = 5 mod 7."""
    print("=" * 70)
    print("Test 9: tables and bernoulli subcommands")
    print("=" * 70)

    with tempfile.TemporaryDirectory() as tmp:
        code_tables, tables = _run(["tables", "--prime", "7", "--precision", "1", "-q"], tmp)
        code_numbers, numbers = _run(["bernoulli", "--max-n", "6", "--divided", "-q"], tmp)
    tables, numbers = json.loads(tables), json.loads(numbers)
    passed = (
        code_tables == EXIT_OK
        and [tables["q"][str(a)] for a in range(1, 7)] == [0, 2, 6, 4, 6, 1]
        and tables["w_p"] == 5
        and tables["irregular_pairs"] == []
        and "corrections" not in tables
        and code_numbers == EXIT_OK
        and numbers["B"]["1"] == "-1/2"
        and numbers["B"]["6"] == "1/42"
        and numbers["divided"]["2"] == "1/12"
    )
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_io_errors():
    print("=" * 70)
    print("Test 10: Unreadable config and malformed cache exit with status 3")
    print("=" * 70)

    saved = os.environ.pop(CACHE_ENV, None)
    try:
        with tempfile.TemporaryDirectory() as tmp:
            missing = Path(tmp) / "missing.json"
            cache = Path(tmp) / "bernoulli.cache"
            cache.write_text("0 1/1\nnot a line\n", encoding="utf-8")
            code_config = main(["verify", "--config", str(missing), "-q"])
            code_cache = main(["verify", "--primes", "11", "--checks", "C01", "--cache", str(cache), "-q"])
    finally:
        if saved is not None:
            os.environ[CACHE_ENV] = saved
    print(f"  config exit {code_config}, cache exit {code_cache}")
    passed = code_config == EXIT_IO and code_cache == EXIT_IO
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_cache_file_written():
    print("=" * 70)
    print("Test 11: --cache writes a reusable Bernoulli table")
    print("=" * 70)

    saved = os.environ.pop(CACHE_ENV, None)
    try:
        with tempfile.TemporaryDirectory() as tmp:
            cache = Path(tmp) / "bernoulli.cache"
            first = main(["bernoulli", "--max-n", "10", "--cache", str(cache), "--out", str(Path(tmp) / "a"), "-q"])
            written = cache.exists() and cache.read_text(encoding="utf-8").startswith("0 1/1")
            second = main(["bernoulli", "--max-n", "8", "--cache", str(cache), "--out", str(Path(tmp) / "b"), "-q"])
    finally:
        if saved is not None:
            os.environ[CACHE_ENV] = saved
    passed = first == second == EXIT_OK and written
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_failures_exit_one():
    """EXIT_FAILURES is distinct from the usage and I/O codes."""
    assert len({EXIT_OK, EXIT_FAILURES, EXIT_USAGE, EXIT_IO}) == 4
    print("  ✓ PASS\n")

def test_reports_are_deterministic():
    """Two identical verify runs write byte-identical JSON, serial or parallel."""
    print("=" * 70)
    print("Test 13: Same settings, same report bytes")
    print("=" * 70)

    args = ["verify", "--primes", "11..17", "--checks", "C01,C19,C25,C48", "--precision", "2", "-q"]
    with tempfile.TemporaryDirectory() as tmp:
        first = Path(tmp) / "first.json"
        second = Path(tmp) / "second.json"
        parallel = Path(tmp) / "parallel.json"
        codes = [
            main(args + ["--out", str(first)]),
            main(args + ["--out", str(second)]),
            main(args + ["--workers", "2", "--out", str(parallel)]),
        ]
        blobs = [path.read_bytes() for path in (first, second, parallel)]
    report = json.loads(blobs[0])
    print(f"  exit codes {codes}, {len(blobs[0])} bytes, readings {report['meta']['readings']}")
    passed = (
        codes == [EXIT_OK] * 3
        and blobs[0] == blobs[1] == blobs[2]
        and report["meta"]["readings"]["C25"] == "weighted-sum"
    )
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def main_tests():
    tests = [
        test_defaults,
        test_usage_errors,
        test_config_file_precedence,
        test_cache_environment_override,
        test_verify_json_report,
        test_csv_matches_json,
        test_exploratory_and_irregular_runs,
        test_text_report,
        test_tables_and_bernoulli_commands,
        test_io_errors,
        test_cache_file_written,
        test_failures_exit_one,
        test_reports_are_deterministic,
    ]

    results = []
    for t in tests:
        try:
            t()
            results.append(True)
        except Exception as e:
            print(f"  ✗ FAIL: {e}\n")
            results.append(False)

    print("=" * 70)
    print(f"SUMMARY: {sum(results)}/{len(results)} tests passed")
    print("=" * 70)
    return all(results)


if __name__ == '__main__':
    success = main_tests()
    exit(0 if success else 1)
