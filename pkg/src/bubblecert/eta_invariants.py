"""Eta invariants of lens spaces S^3/Z_p.

Sign convention: eta(L(p, q)) = -(1/p) * sum_{i=1}^{p-1} cot(i pi/p) cot(q i pi/p),
so that L(k^2-1, k), the boundary of the (-k, -k) plumbing, has
eta = -((2/3)k^3 - 2k^2 + 2)/(k^2 - 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from operator import mul
from typing import Sequence

from .exact_core import DEFAULT_CONTEXT, FloatContext, cot_table_fixed, dedekind_sum


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) = S^3 / Z_p with Z_p acting by weights (1, q)."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"lens space order must be >= 2, got p={self.p}")
        if not 1 <= self.q < self.p:
            raise ValueError(f"need 1 <= q < p, got L({self.p}, {self.q})")
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"L({self.p}, {self.q}) needs gcd(p, q) = 1")

    @property
    def gamma_order(self) -> int:
        return self.p

    def reversed(self) -> LensSpace:
        """L(p, p - q), the orientation reversal."""
        return LensSpace(self.p, self.p - self.q)

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"


def eta_exact(lens: LensSpace) -> Fraction:
    # sum cot(i pi/p) cot(q i pi/p) = 4 p s(q, p)
    return -4 * dedekind_sum(lens.q, lens.p)


def cot_pair_sum_mp(p: int, q: int, ctx: FloatContext = DEFAULT_CONTEXT):
    """``sum_{i=1}^{p-1} cot(i pi/p) cot(q i pi/p)`` as an mpf.

    Cotangents are rounded once each to fixed point and then multiplied and
    accumulated exactly, so the error does not grow with the number of terms
    beyond the per-entry rounding.
    """
    if math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1 puts a pole in the sum")
    table, frac_bits = cot_table_fixed(p, ctx)
    acc = sum(map(mul, table, [table[(q * i) % p] for i in range(p)]))
    mp = ctx.mp
    return mp.ldexp(mp.mpf(acc), -2 * frac_bits)


def eta_float(lens: LensSpace, ctx: FloatContext = DEFAULT_CONTEXT) -> float:
    """Direct cotangent-sum evaluation at ``ctx`` precision, independent of the Dedekind path."""
    return float(-cot_pair_sum_mp(lens.p, lens.q, ctx) / lens.p)


def eta_closed_form(k: int) -> Fraction:
    if k < 2:
        raise ValueError(f"closed form needs k >= 2, got {k}")
    return -(Fraction(2, 3) * k ** 3 - 2 * k ** 2 + 2) / (k * k - 1)


def plumbing_lens_space(chain: Sequence[int]) -> LensSpace:
    """Boundary lens space of a linear plumbing of spheres with self-intersections ``-a_i``.

    ``p/q`` is the Hirzebruch-Jung continued fraction a_1 - 1/(a_2 - 1/(...)),
    e.g. (k,) -> L(k, 1) and (k, k) -> L(k^2 - 1, k).
    """
    if not chain or any(a < 2 for a in chain):
        raise ValueError("chain entries must all be >= 2")
    value = Fraction(chain[-1])
    for a in reversed(chain[:-1]):
        value = a - 1 / value
    return LensSpace(value.numerator, value.denominator)
