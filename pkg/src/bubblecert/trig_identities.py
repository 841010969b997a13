"""Numerical and exact checks of the finite trigonometric identities behind the
closed-form eta invariant of L(k^2-1, k).

Sample points are rational multiples of pi, passed as the rational multiplier
``r`` (so ``x = r*pi``). Residuals are absolute.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import CertificateError, PoleError
from .exact_core import (
    DEFAULT_CONTEXT,
    FloatContext,
    as_rational,
    cot_pi_mp,
    dedekind_sum,
)
from .eta_invariants import cot_pair_sum_mp

POLE_GUARD = Fraction(1, 1000)
BASE_K = 30


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    parameter_k: int
    sample_point: Optional[Fraction]
    lhs: float
    rhs: float
    residual: float
    passed: bool
    tolerance: float
    exact_match: Optional[bool] = None


def scaled_tolerance(k: int, ctx: FloatContext) -> float:
    """Context tolerance, grown linearly once k exceeds 30."""
    return ctx.tolerance * max(1.0, k / BASE_K)


def _report(name, k, r, lhs, rhs, ctx, exact_match=None) -> IdentityReport:
    tol = scaled_tolerance(k, ctx)
    residual = float(abs(lhs - rhs))
    return IdentityReport(name, k, r, float(lhs), float(rhs), residual, residual <= tol, tol,
                          exact_match)


def _shifted(r: Fraction, k: int) -> list[Fraction]:
    return [r + Fraction(i, k + 1) for i in range(k + 1)]


def _check_poles(r: Fraction, k: int) -> None:
    bad = [i for i, y in enumerate(_shifted(r, k)) if y.denominator == 1]
    if bad or ((k + 1) * r).denominator == 1:
        raise PoleError(f"cot pole at x = {r}π for k = {k} (indices {bad})", bad)


def verify_sin_product(k: int, r, ctx: FloatContext = DEFAULT_CONTEXT) -> IdentityReport:
    """sin((k+1)x) against 2^k * prod_{i=0}^k sin(x + i pi/(k+1))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r = as_rational(r)
    mp = ctx.mp
    lhs = mp.sinpi(_mpf(mp, ((k + 1) * r) % 2))
    prod = mp.mpf(2) ** k
    for y in _shifted(r, k):
        prod *= mp.sinpi(_mpf(mp, y % 2))
    return _report("sin_product", k, r, lhs, prod, ctx)


def verify_cot_sum(k: int, r, ctx: FloatContext = DEFAULT_CONTEXT) -> IdentityReport:
    """(k+1) cot((k+1)x) against sum_{i=0}^k cot(x + i pi/(k+1))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r = as_rational(r)
    _check_poles(r, k)
    mp = ctx.mp
    lhs = (k + 1) * cot_pi_mp((k + 1) * r, ctx)
    rhs = mp.fsum(cot_pi_mp(y, ctx) for y in _shifted(r, k))
    return _report("cot_sum", k, r, lhs, rhs, ctx)


def verify_cot2_sum(k: int, r, ctx: FloatContext = DEFAULT_CONTEXT) -> IdentityReport:
    """(k+1)^2 cot^2((k+1)x) + (k+1)k against sum_{i=0}^k cot^2(x + i pi/(k+1))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    r = as_rational(r)
    _check_poles(r, k)
    mp = ctx.mp
    lhs = (k + 1) ** 2 * cot_pi_mp((k + 1) * r, ctx) ** 2 + (k + 1) * k
    rhs = mp.fsum(cot_pi_mp(y, ctx) ** 2 for y in _shifted(r, k))
    return _report("cot2_sum", k, r, lhs, rhs, ctx)


def cot2_zero_limit_float(k: int, ctx: FloatContext = DEFAULT_CONTEXT):
    return ctx.mp.fsum(cot_pi_mp(Fraction(i, k + 1), ctx) ** 2 for i in range(1, k + 1))


def cot2_zero_limit(k: int, ctx: FloatContext = DEFAULT_CONTEXT) -> Fraction:
    """k(k-1)/3, after confirming it against the float sum of cot^2(i pi/(k+1))."""
    if k < 1:
        raise ValueError("k must be >= 1")
    exact = Fraction(k * (k - 1), 3)
    residual = abs(cot2_zero_limit_float(k, ctx) - ctx.mp.mpf(exact.numerator) / exact.denominator)
    if residual > scaled_tolerance(k, ctx):
        raise CertificateError(f"sum cot^2(iπ/{k + 1}) misses {exact} by {float(residual):.3g}")
    return exact


def verify_cot2_zero_limit(k: int, ctx: FloatContext = DEFAULT_CONTEXT) -> IdentityReport:
    exact = Fraction(k * (k - 1), 3)
    mp = ctx.mp
    lhs = cot2_zero_limit_float(k, ctx)
    return _report("cot2_zero_limit", k, None, lhs, mp.mpf(exact.numerator) / exact.denominator, ctx)


def main_identity_exact(k: int) -> Fraction:
    """4(k^2-1) s(k, k^2-1), i.e. the cotangent pair sum computed exactly."""
    p = k * k - 1
    return 4 * p * dedekind_sum(k, p)


def main_identity_rhs(k: int) -> Fraction:
    return Fraction(2, 3) * k ** 3 - 2 * k ** 2 + 2


def verify_main_identity(k: int, ctx: FloatContext = DEFAULT_CONTEXT) -> IdentityReport:
    if k < 2:
        raise ValueError("k must be >= 2")
    rhs = main_identity_rhs(k)
    lhs = cot_pair_sum_mp(k * k - 1, k, ctx)
    mp = ctx.mp
    report = _report("main_identity", k, None, lhs,
                     mp.mpf(rhs.numerator) / rhs.denominator, ctx,
                     exact_match=main_identity_exact(k) == rhs)
    return report


def regrouped_sums(k: int, j: int, ctx: FloatContext = DEFAULT_CONTEXT) -> tuple[float, float, float]:
    """The two regrouped partial sums over i = j + (k-1)m, m = 0..k, and their common value.

    Returns ``(sum cot(i pi/(k-1)) cot(i pi/(k^2-1)),
    sum cot(i pi/(k-1)) cot(k i pi/(k^2-1)), (k+1) cot^2(j pi/(k-1)))``.
    """
    if k < 3 or not 1 <= j <= k - 2:
        raise ValueError("need k >= 3 and 1 <= j <= k-2")
    p = k * k - 1
    mp = ctx.mp
    idx = [j + (k - 1) * m for m in range(k + 1)]
    first = mp.fsum(cot_pi_mp(Fraction(i, k - 1), ctx) * cot_pi_mp(Fraction(i, p), ctx) for i in idx)
    second = mp.fsum(cot_pi_mp(Fraction(i, k - 1), ctx) * cot_pi_mp(Fraction(k * i, p), ctx)
                     for i in idx)
    target = (k + 1) * cot_pi_mp(Fraction(j, k - 1), ctx) ** 2
    return float(first), float(second), float(target)


def sample_points(k: int, count: int, seed: int, guard: Fraction = POLE_GUARD,
                  resolution: int = 10 ** 6) -> list[Fraction]:
    """Seeded rational multipliers r in (0, 1), each at least ``guard`` away from (1/(k+1))Z."""
    rng = random.Random(f"{seed}:{k}")
    points: list[Fraction] = []
    spacing = Fraction(1, k + 1)
    while len(points) < count:
        r = Fraction(rng.randrange(1, resolution), resolution)
        offset = r % spacing
        if min(offset, spacing - offset) >= guard:
            points.append(r)
    return points


def identity_suite(k_max: int = BASE_K, samples: int = 20, seed: int = 0,
                   ctx: FloatContext = DEFAULT_CONTEXT) -> Iterator[IdentityReport]:
    """Residuals of the three shifted-angle identities at seeded sample points for k = 1..k_max."""
    for k in range(1, k_max + 1):
        for r in sample_points(k, samples, seed):
            yield verify_sin_product(k, r, ctx)
            yield verify_cot_sum(k, r, ctx)
            yield verify_cot2_sum(k, r, ctx)


def _mpf(mp, q: Fraction):
    return mp.mpf(q.numerator) / q.denominator

