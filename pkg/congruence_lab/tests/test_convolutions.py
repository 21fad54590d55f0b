#!/usr/bin/env python3
"""
Bernoulli convolution tests for `congruence_lab/convolutions.py`.

With B'_2 = 1/12 and B'_4 = -1/120: CB(6) = -1/720, bCB(4) = 1/24,
B3(6) = 1/1728 and mB3(6) = 5/96.

Run via: python congruence_lab/tests/test_convolutions.py
"""

import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '../..')))

from congruence_lab.bernoulli_engine import divided_bernoulli, em_residue_table
from congruence_lab.combinatorics import harmonic
from congruence_lab.convolutions import (
    ConvolutionFamily,
    ConvolutionSpec,
    MixedWindow,
    b3,
    bcb,
    cb,
    convolution,
    mb3,
    tcb,
    truncated_spec,
)
from congruence_lab.errors import WindowInvalid
from congruence_lab.exact_arith import PadicResidue, reduce_mod


def test_small_orders():
    print("=" * 70)
    print("Test 1: Pure convolutions of small order")
    print("=" * 70)

    found = (cb(6), bcb(4), b3(6), mb3(6))
    print(f"  CB(6), bCB(4), B3(6), mB3(6) = {found}")
    passed = found == (Fraction(-1, 720), Fraction(1, 24), Fraction(1, 1728), Fraction(5, 96))
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_miki_identity():
    """CB(m) = bCB(m) + 2 H_m B'_m exactly."""
    print("=" * 70)
    print("Test 2: Miki's identity for even m in [4, 30]")
    print("=" * 70)

    passed = all(cb(m) == bcb(m) + 2 * harmonic(m) * divided_bernoulli(m) for m in range(4, 31, 2))
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def test_dispatch():
    print("=" * 70)
    print("Test 3: convolution() dispatches on the family")
    print("=" * 70)

    assert convolution(ConvolutionSpec(ConvolutionFamily.CB, 6)) == cb(6)
    assert convolution(ConvolutionSpec(ConvolutionFamily.TCB, 12, 4, 8)) == tcb(4, 8, 12)
    assert tcb(2, 10, 12) == cb(12)
    print("  ✓ PASS\n")


def test_windows():
    print("=" * 70)
    print("Test 4: Window bounds and refusals")
    print("=" * 70)

    assert ConvolutionSpec(ConvolutionFamily.CBD, 10, window=MixedWindow.SHORT).bounds() == (2, 6)
    assert ConvolutionSpec(ConvolutionFamily.CDBD, 10).bounds() == (2, 8)
    assert truncated_spec(ConvolutionFamily.TCDBD, 13, 4).bounds() == (10, 10)
    assert ConvolutionSpec(ConvolutionFamily.B3, 4).is_empty()
    with pytest.raises(WindowInvalid):
        convolution(ConvolutionSpec(ConvolutionFamily.TCB, 12))
    with pytest.raises(WindowInvalid):
        convolution(ConvolutionSpec(ConvolutionFamily.CBD, 8))
    print("  ✓ PASS\n")


def test_mixed_convolution():
    """CdBD(m) mod p is the literal sum of B'_i D_{m-i}."""
    print("=" * 70)
    print("Test 5: Mixed convolution CdBD(8) at p = 13")
    print("=" * 70)

    p, m = 13, 8
    em = em_residue_table(p)
    expected = sum(reduce_mod(divided_bernoulli(i), p, 1).value * em[m - i] for i in (2, 4, 6)) % p
    found = convolution(ConvolutionSpec(ConvolutionFamily.CDBD, m, prime=p))
    print(f"  CdBD(8) = {found.value}, literal sum = {expected}")
    passed = isinstance(found, PadicResidue) and found.value == expected
    print(f"  {'✓ PASS' if passed else '✗ FAIL'}\n")
    assert passed


def main():
    tests = [
        test_small_orders,
        test_miki_identity,
        test_dispatch,
        test_windows,
        test_mixed_convolution,
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
