"""Slow, independent reference computations used only by the tests."""
from __future__ import annotations

import math
from fractions import Fraction

import mpmath


def sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_bruteforce(h: int, k: int) -> Fraction:
    return sum((sawtooth(Fraction(i, k)) * sawtooth(Fraction(h * i, k)) for i in range(1, k)),
               Fraction(0))


def cot_pair_sum_direct(p: int, q: int, dps: int = 80) -> mpmath.mpf:
    with mpmath.workdps(dps):
        return mpmath.fsum(mpmath.cot(i * mpmath.pi / p) * mpmath.cot(q * i * mpmath.pi / p)
                           for i in range(1, p))


def eta_direct(p: int, q: int) -> float:
    return float(-cot_pair_sum_direct(p, q) / p)


def pell_bruteforce(k: int, m_bound: int) -> set[tuple[int, int]]:
    n_bound = math.isqrt(2 * m_bound * m_bound + k) + 1
    return {(m, n) for m in range(-m_bound, m_bound + 1) for n in range(-n_bound, n_bound + 1)
            if 2 * m * m - n * n == -k}


def area_sq(m: int, n: int, x: Fraction) -> Fraction:
    return (2 * m * (1 + x) + n * x) ** 2 / (1 + 2 * x + x * x / 2)


def grid_min(f, lo: Fraction, hi: Fraction, steps: int = 2000) -> Fraction:
    return min(f(lo + (hi - lo) * Fraction(i, steps)) for i in range(steps + 1))
