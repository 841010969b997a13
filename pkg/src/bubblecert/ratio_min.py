"""Certified minimum of P(x)/Q(x) on an interval, for P, Q of degree <= 2 over Q.

Everything is rational. Critical points are the roots of P'Q - PQ', a
polynomial of degree <= 2 (the cubic terms cancel). Rational roots are
evaluated exactly; irrational roots are bracketed and the ratio bounded
below on the bracket with exact interval arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import IntervalError
from .exact_core import exact_sqrt, sqrt_bracket

Poly = tuple[Fraction, ...]  # coefficients, lowest degree first

BRACKET_WIDTH = Fraction(1, 10 ** 12)


def poly(*coeffs) -> Poly:
    c = [Fraction(v) for v in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return -1 if p == (0,) else len(p) - 1


def peval(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pmul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly(*out)


def psub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly(*((p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)))


def pderiv(p: Poly) -> Poly:
    if len(p) == 1:
        return (Fraction(0),)
    return poly(*(i * c for i, c in enumerate(p) if i > 0))


def quad_range(p: Poly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Exact range of a polynomial of degree <= 2 on [lo, hi]."""
    vals = [peval(p, lo), peval(p, hi)]
    if degree(p) == 2:
        v = -p[1] / (2 * p[2])
        if lo < v < hi:
            vals.append(peval(p, v))
    return min(vals), max(vals)


@dataclass(frozen=True)
class Candidate:
    kind: str               # "endpoint", "critical", "bracket", "infinity"
    x: Optional[Fraction]   # exact location, None for brackets and infinity
    bracket: Optional[tuple[Fraction, Fraction]]
    value: Fraction         # exact value, or certified lower bound for brackets


@dataclass(frozen=True)
class RatioMinimum:
    lower_bound: Fraction
    argmin: Optional[Fraction]
    exact: bool        # lower_bound is the true infimum
    attained: bool     # infimum reached at a finite point
    candidates: tuple[Candidate, ...] = field(default=())


def _derivative_numerator(P: Poly, Q: Poly) -> Poly:
    return psub(pmul(pderiv(P), Q), pmul(P, pderiv(Q)))


def _root_brackets(S: Poly, width: Fraction):
    """Yield (exact_root | None, bracket) for the real roots of S (degree <= 2)."""
    d = degree(S)
    if d <= 0:
        return
    if d == 1:
        r = -S[0] / S[1]
        yield r, (r, r)
        return
    c, b, a = S
    disc = b * b - 4 * a * c
    if disc < 0:
        return
    root = exact_sqrt(disc)
    if root is not None:
        for s in {root, -root}:
            r = (-b + s) / (2 * a)
            yield r, (r, r)
        return
    lo, hi = sqrt_bracket(disc, width * 2 * abs(a))
    for sign in (1, -1):
        ends = sorted(((-b + sign * lo) / (2 * a), (-b + sign * hi) / (2 * a)))
        yield None, (ends[0], ends[1])


def minimize_ratio(P: Sequence, Q: Sequence, lo, hi=None,
                   width: Fraction = BRACKET_WIDTH) -> RatioMinimum:
    """Certified infimum of P/Q on [lo, hi]; ``hi=None`` means [lo, infinity).

    Q must be positive on the interval (checked exactly).
    """
    P, Q = poly(*P), poly(*Q)
    lo = Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    if degree(P) > 2 or degree(Q) > 2:
        raise ValueError("only numerators and denominators of degree <= 2 are supported")
    if hi is not None and hi < lo:
        raise IntervalError(f"empty interval [{lo}, {hi}]")
    q_min = quad_range(Q, lo, hi)[0] if hi is not None else _min_on_ray(Q, lo)
    if q_min <= 0:
        raise ValueError("denominator must stay positive on the interval")

    def inside(x: Fraction) -> bool:
        return lo <= x and (hi is None or x <= hi)

    cands = [Candidate("endpoint", lo, None, peval(P, lo) / peval(Q, lo))]
    if hi is not None and hi != lo:
        cands.append(Candidate("endpoint", hi, None, peval(P, hi) / peval(Q, hi)))

    S = _derivative_numerator(P, Q)
    if degree(S) >= 1:
        for r, (bl, bh) in _root_brackets(S, width):
            if r is not None:
                if inside(r):
                    cands.append(Candidate("critical", r, None, peval(P, r) / peval(Q, r)))
                continue
            bl, bh = max(bl, lo), bh if hi is None else min(bh, hi)
            if bl > bh:
                continue
            p_lo, _ = quad_range(P, bl, bh)
            q_lo, q_hi = quad_range(Q, bl, bh)
            bound = p_lo / q_hi if p_lo >= 0 else p_lo / q_lo
            cands.append(Candidate("bracket", None, (bl, bh), bound))

    if hi is None:
        if degree(P) > degree(Q):
            limit = None
        elif degree(P) < degree(Q):
            limit = Fraction(0)
        else:
            limit = P[-1] / Q[-1]
        if limit is not None:
            cands.append(Candidate("infinity", None, None, limit))

    best = min(cands, key=lambda c: c.value)
    # the infimum is exact unless the minimum came from a bracket bound
    exact = best.kind != "bracket"
    attained = best.kind in ("endpoint", "critical")
    if best.kind == "infinity":
        finite = [c for c in cands if c.kind != "infinity" and c.value == best.value]
        if finite:
            best, attained = finite[0], True
    return RatioMinimum(best.value, best.x if attained else None, exact, attained, tuple(cands))


def _min_on_ray(Q: Poly, lo: Fraction) -> Fraction:
    d = degree(Q)
    if d <= 0:
        return Q[0]
    if Q[-1] < 0:
        return Fraction(-1)  # unbounded below
    vals = [peval(Q, lo)]
    if d == 2:
        v = -Q[1] / (2 * Q[2])
        if v > lo:
            vals.append(peval(Q, v))
    return min(vals)
