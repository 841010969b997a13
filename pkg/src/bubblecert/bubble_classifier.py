"""Classification of deepest-bubble topologies and the homology exclusion search.

A bubble with b2 = 1 is O(-k) over CP^1; one with b2 = 2 has form
[[-k, 1], [1, -k]] and boundary L(k^2-1, k). Either way the vanishing cycle
gives a symmetric class S = m(F1+F2) + nE with 2m^2 - n^2 = -k, and its
pairing with the unit-volume class [w]_x would have to tend to zero. On a
compact parameter interval [A, B] that is impossible, and
:func:`exclusion_verdict` certifies it with exact arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .curvature_budgets import (
    ale_ric0,
    ale_w_minus,
    b2_2_candidate,
    eq21_implied_ric0,
    line_bundle_ric0,
)
from .errors import IntervalError
from .exact_core import PiSquared, RationalLike, as_rational
from .ratio_min import RatioMinimum, minimize_ratio

REFERENCE_B2_1 = frozenset({1, 2, 3, 4, 5})
REFERENCE_B2_2 = frozenset({2})
ETA_CEILING = Fraction(1, 3)


def classify_b2_1(ric0_budget: PiSquared, strict: bool = True) -> frozenset[int]:
    """Degrees k >= 1 for which the O(-k) bubble fits under ``ric0_budget``."""
    def fits(k):
        v = line_bundle_ric0(k)
        return v < ric0_budget if strict else v <= ric0_budget

    admitted = {1} if fits(1) else set()
    # 8(k-2)^2/k is increasing for k >= 2, so stop at the first failure
    k = 2
    while fits(k):
        admitted.add(k)
        k += 1
    return frozenset(admitted)


@dataclass(frozen=True)
class B2TwoRow:
    k: int
    gamma_order: int
    eta: Fraction
    w_minus: PiSquared
    ric0: PiSquared              # Gauss-Bonnet value from w_minus
    implied_ric0: PiSquared      # value forced by the combined identity
    fits_w_minus: bool
    eta_in_range: bool
    implied_ric0_negative: bool

    @property
    def admitted(self) -> bool:
        return self.fits_w_minus and self.eta_in_range


def b2_2_table(w_minus_budget: PiSquared, k_max: int = 100, strict: bool = True) -> list[B2TwoRow]:
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    rows = []
    for k in range(2, k_max + 1):
        c = b2_2_candidate(k)
        w = ale_w_minus(c)
        fits = w < w_minus_budget if strict else w <= w_minus_budget
        implied = eq21_implied_ric0(c)
        rows.append(B2TwoRow(
            k=k,
            gamma_order=c.gamma_order,
            eta=c.eta,
            w_minus=w,
            ric0=ale_ric0(c, w),
            implied_ric0=implied,
            fits_w_minus=fits,
            eta_in_range=c.eta <= ETA_CEILING,
            implied_ric0_negative=implied.coefficient < 0,
        ))
    return rows


def classify_b2_2(w_minus_budget: PiSquared, k_max: int = 100, strict: bool = True) -> frozenset[int]:
    """k in 2..k_max whose bubble energy fits the budget and whose eta is at most 1/3.

    With the 24 pi^2 budget the first condition is exactly eta > 0.
    """
    return frozenset(r.k for r in b2_2_table(w_minus_budget, k_max, strict) if r.admitted)


@dataclass(frozen=True, order=True)
class PellClass:
    m: int
    n: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if 2 * self.m ** 2 - self.n ** 2 != -self.k:
            raise ValueError(f"2m^2 - n^2 = {2 * self.m ** 2 - self.n ** 2} != -{self.k}")

    def negated(self) -> PellClass:
        return PellClass(-self.m, -self.n, self.k)

    def __str__(self) -> str:
        return f"({self.m},{self.n};k={self.k})"


def pell_solutions(k: int, m_bound: int) -> list[PellClass]:
    """All (m, n) with 2m^2 - n^2 = -k and |m| <= m_bound, ordered by |m|."""
    if k < 1:
        raise ValueError("k must be positive")
    if m_bound < 1:
        raise ValueError("m_bound must be >= 1")
    out = []
    for m in range(m_bound + 1):
        t = 2 * m * m + k
        n = math.isqrt(t)
        if n * n != t:
            continue
        for mm in sorted({m, -m}):
            for nn in (-n, n):
                out.append(PellClass(mm, nn, k))
    return out


def _check_interval(A, B) -> tuple[Fraction, Optional[Fraction]]:
    A = as_rational(A)
    B = None if B is None else as_rational(B)
    if A <= 0:
        raise IntervalError(f"interval must start at a positive number, got A = {A}")
    if B is not None and B <= A:
        raise IntervalError(f"need A < B, got [{A}, {B}]")
    return A, B


def _tail_condition(m: int, k: int, B: Optional[Fraction]) -> bool:
    """True when every class with this |m| has area^2 >= 1 on [A, B] (any A > 0).

    Write the pairing as 2m + (2m+n)x with m > 0 after a sign flip.
    (a) If 2m - 1 >= sqrt(2m^2+k), then 2m+n >= 1 for either sign of n, and
        since 1 + 2x + x^2/2 <= (1+x)^2 the area is at least
        (2m + (2m+n)x)/(1+x) >= min(2m, 2m+n) >= 1 for every x > 0.
    (b) If 2m >= sqrt(2m^2+k), the pairing is >= 2m, and on [A, B] the
        squared normalizer is at most its value at B; 4m^2 >= that suffices.
    Square roots enter only through squared comparisons.
    """
    if m < 1:
        return False
    if 2 * m - 1 >= 0 and (2 * m - 1) ** 2 >= 2 * m * m + k:
        return True
    if B is not None and 4 * m * m >= 2 * m * m + k:
        return 4 * m * m >= 1 + 2 * B + B * B / 2
    return False


def tail_bound(k: int, A: RationalLike, B: Optional[RationalLike]) -> int:
    """Smallest m* >= 1 such that all classes with |m| > m* have squared area >= 1 on [A, B]."""
    if k < 1:
        raise ValueError("k must be positive")
    A, B = _check_interval(A, B)
    # both conditions are monotone in m once they hold, so scan to the first m that works
    m = 1
    while not _tail_condition(m, k, B):
        m += 1
    return max(1, m - 1)


@dataclass(frozen=True)
class ClassInfimum:
    pell: PellClass
    infimum_sq: Fraction
    vanishing_point: Optional[Fraction]
    argmin: Optional[Fraction]
    attained: bool
    exact: bool


def area_infimum_sq(c: PellClass, A: RationalLike, B: Optional[RationalLike]) -> ClassInfimum:
    """Certified infimum of the squared normalized area of ``c`` over x in [A, B].

    The squared area is (alpha + beta x)^2 / (1 + 2x + x^2/2) with
    alpha = 2m, beta = 2m + n. ``B=None`` takes the infimum over [A, infinity).
    """
    A, B = _check_interval(A, B)
    alpha, beta = 2 * c.m, 2 * c.m + c.n
    numer = (alpha * alpha, 2 * alpha * beta, beta * beta)
    denom = (1, 2, Fraction(1, 2))
    res: RatioMinimum = minimize_ratio(numer, denom, A, B)
    vanishing = None
    if beta != 0:
        x0 = Fraction(-alpha, beta)
        if A <= x0 and (B is None or x0 <= B):
            vanishing = x0
    return ClassInfimum(c, res.lower_bound, vanishing, res.argmin, res.attained, res.exact)


@dataclass(frozen=True)
class ExclusionReport:
    interval: tuple[Fraction, Optional[Fraction]]
    per_class: tuple[ClassInfimum, ...]
    global_min_sq: Fraction
    excluded: bool
    tail_bound_m: int
    tail_floor_sq: Fraction
    witnesses: tuple[ClassInfimum, ...]
    k_values: tuple[int, ...]


def exclusion_verdict(A: RationalLike, B: Optional[RationalLike],
                      k_values: Iterable[int] = sorted(REFERENCE_B2_1)) -> ExclusionReport:
    """Search every admissible class for one whose area can vanish on [A, B].

    Classes with |m| beyond the tail bound have squared area >= 1 and are not
    listed; ``global_min_sq`` is therefore min(smallest listed infimum, 1),
    a certified lower bound that is the exact infimum whenever it is below 1.
    """
    A, B = _check_interval(A, B)
    k_values = tuple(sorted(set(k_values)))
    m_star = max(tail_bound(k, A, B) for k in k_values)
    per_class = tuple(area_infimum_sq(c, A, B)
                      for k in k_values for c in pell_solutions(k, m_star))
    floor = Fraction(1)
    listed_min = min((ci.infimum_sq for ci in per_class), default=floor)
    global_min = min(listed_min, floor)
    witnesses = tuple(ci for ci in per_class if ci.infimum_sq == global_min)
    return ExclusionReport(
        interval=(A, B),
        per_class=per_class,
        global_min_sq=global_min,
        excluded=global_min > 0,
        tail_bound_m=m_star,
        tail_floor_sq=floor,
        witnesses=witnesses,
        k_values=k_values,
    )
