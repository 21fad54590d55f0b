#!/usr/bin/env python3
"""
Bernoulli table tests for `congruence_lab/bernoulli_engine.py`.

The tangent-number table is compared with sympy for even indices, and the
derived quantities (divided numbers, EM residues, Agoh-Giuga quotients,
irregular pairs) are checked on small primes.

Run via: python congruence_lab/tests/test_bernoulli_engine.py
"""

import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import pytest
import sympy

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from congruence_lab.bernoulli_engine import (
    BernoulliCache,
    agoh_giuga,
    bernoulli,
    divided_bernoulli,
    em_residue,
    irregular_pairs,
    is_irregular_pair,
    tangent_numbers,
    von_staudt_denominator,
)
from congruence_lab.errors import CongruenceLabError


def test_tangent_numbers():
    print("=" * 70)
    print("Test 1: Tangent numbers T_1, T_3, T_5, T_7")
    print("=" * 70)

    found = tangent_numbers(4)
    print(f"  {found}")
    passed = found == [1, 2, 16, 272]
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_against_sympy():
    """Even-index Bernoulli numbers agree with sympy up to B_80."""
    print("=" * 70)
    print("Test 2: B_n against sympy.bernoulli for even n <= 80")
    print("=" * 70)

    mismatches = []
    for n in range(0, 81, 2):
        expected = sympy.bernoulli(n)
        if bernoulli(n) != Fraction(int(expected.p), int(expected.q)):
            mismatches.append(n)
    print(f"  mismatches: {mismatches}")
    passed = not mismatches
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_small_values():
    print("=" * 70)
    print("Test 3: B_1, B_3, B_12 and B'_6")
    print("=" * 70)

    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)
    assert divided_bernoulli(6) == Fraction(1, 252)
    print("  ✓ PASS\n")


def test_von_staudt():
    """The denominator of B_n is the product of primes q with q-1 | n."""
    print("=" * 70)
    print("Test 4: von Staudt-Clausen denominators")
    print("=" * 70)

    passed = True
    for n in range(2, 41, 2):
        ok = von_staudt_denominator(n) == bernoulli(n).denominator
        passed = passed and ok
    print(f"  B_12 denominator = {von_staudt_denominator(12)}")
    passed = passed and von_staudt_denominator(12) == 2730
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_irregular_pairs():
    print("=" * 70)
    print("Test 5: Irregular pairs of 37 and 59, none for 31")
    print("=" * 70)

    print(f"  37: {irregular_pairs(37)}, 59: {irregular_pairs(59)}")
    passed = (
        irregular_pairs(37) == [(37, 32)]
        and irregular_pairs(59) == [(59, 44)]
        and irregular_pairs(31) == []
        and is_irregular_pair(37, 32)
    )
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_em_residue():
    """D_2 = (B'_{p+1} - B'_2)_1 at p = 5 and p = 7."""
    print("=" * 70)
    print("Test 6: Ernvall-Metsankyla residues")
    print("=" * 70)

    found = (em_residue(5, 2), em_residue(7, 2))
    print(f"  D_2 at 5, 7 = {found}")
    assert found == (3, 2)
    with pytest.raises(ValueError):
        em_residue(7, 3)
    print("  ✓ PASS\n")


def test_agoh_giuga():
    print("=" * 70)
    print("Test 7: Agoh-Giuga quotients mod p")
    print("=" * 70)

    found = (agoh_giuga(5, 1).value, agoh_giuga(7, 1).value)
    print(f"  AG mod 5, 7 = {found}")
    passed = found == (1, 6)
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_cache_round_trip():
    print("=" * 70)
    print("Test 8: Cache dump and load")
    print("=" * 70)

    cache = BernoulliCache(30)
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "bernoulli.txt"
        cache.dump(path)
        loaded = BernoulliCache.load(path)
    passed = loaded.max_index == 30 and loaded.table == cache.table
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_cache_rejects_bad_files():
    print("=" * 70)
    print("Test 9: Malformed and gapped cache files")
    print("=" * 70)

    with tempfile.TemporaryDirectory() as tmp:
        bad = Path(tmp) / "bad.txt"
        bad.write_text("0 1/1\n1 one-half\n", encoding="utf-8")
        with pytest.raises(CongruenceLabError):
            BernoulliCache.load(bad)
        gapped = Path(tmp) / "gapped.txt"
        gapped.write_text("0 1/1\n1 -1/2\n4 -1/30\n", encoding="utf-8")
        with pytest.raises(CongruenceLabError):
            BernoulliCache.load(gapped)
    with pytest.raises(IndexError):
        BernoulliCache(10).bernoulli(11)
    print("  ✓ PASS\n")

def test_unit_numerators():
    """B'_n has numerator +-1 for n = 2, 4, 6, 8, 10, 14."""
    print("=" * 70)
    print("Test 10: Divided Bernoulli numbers with unit numerators")
    print("=" * 70)

    values = {n: divided_bernoulli(n) for n in (2, 4, 6, 8, 10, 14)}
    print(f"  {values}")
    passed = all(v.numerator in (1, -1) for v in values.values())
    passed = passed and divided_bernoulli(12).numerator == -691
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def main():
    tests = [
        test_tangent_numbers,
        test_against_sympy,
        test_small_values,
        test_von_staudt,
        test_irregular_pairs,
        test_em_residue,
        test_agoh_giuga,
        test_cache_round_trip,
        test_cache_rejects_bad_files,
        test_unit_numerators,
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
    success = main()
    exit(0 if success else 1)
