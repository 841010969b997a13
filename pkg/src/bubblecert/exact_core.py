"""Exact rationals, pi^2-valued quantities, Dedekind sums and cotangent evaluation.

Exact values are :class:`fractions.Fraction` throughout. Floating work goes
through a :class:`FloatContext`, which owns a private mpmath context so that
different precisions never interfere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence, Union

import mpmath

from .errors import PoleError

Rational = Fraction
RationalLike = Union[int, str, Fraction]

DEFAULT_PRECISION_BITS = 113
DEFAULT_TOLERANCE = 1e-10


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, ``"p/q"`` strings and fractions; floats are converted exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


@dataclass(frozen=True, order=True)
class PiSquared:
    """A real number ``coefficient * pi**2`` kept symbolic.

    Comparisons and arithmetic only touch the coefficient, so inequalities
    between curvature integrals stay exact.
    """

    coefficient: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficient", as_rational(self.coefficient))

    def __add__(self, other: PiSquared) -> PiSquared:
        if not isinstance(other, PiSquared):
            return NotImplemented
        return PiSquared(self.coefficient + other.coefficient)

    def __sub__(self, other: PiSquared) -> PiSquared:
        if not isinstance(other, PiSquared):
            return NotImplemented
        return PiSquared(self.coefficient - other.coefficient)

    def __neg__(self) -> PiSquared:
        return PiSquared(-self.coefficient)

    def __mul__(self, scalar) -> PiSquared:
        if isinstance(scalar, PiSquared):
            return NotImplemented
        return PiSquared(self.coefficient * as_rational(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> PiSquared:
        return PiSquared(self.coefficient / as_rational(scalar))

    def __float__(self) -> float:
        return float(self.coefficient) * math.pi ** 2

    def __str__(self) -> str:
        c = self.coefficient
        if c == 0:
            return "0"
        return f"{c}π²" if c.denominator == 1 else f"({c})π²"


@dataclass(frozen=True)
class FloatContext:
    precision_bits: int = DEFAULT_PRECISION_BITS
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if int(self.precision_bits) != self.precision_bits or self.precision_bits < 53:
            raise ValueError("precision_bits must be an integer >= 53")
        if not self.tolerance >= 0:
            raise ValueError("tolerance must be nonnegative")

    @cached_property
    def mp(self) -> mpmath.ctx_mp.MPContext:
        ctx = mpmath.MPContext()
        ctx.prec = self.precision_bits
        return ctx


DEFAULT_CONTEXT = FloatContext()


def dedekind_sum(h: int, k: int) -> Fraction:
    """Classical Dedekind sum ``s(h, k)`` via the reciprocity law.

    Runs the Euclidean algorithm on (h, k), so the cost is logarithmic in k.
    ``h`` is reduced modulo ``k`` first.
    """
    if k <= 0:
        raise ValueError("k must be a positive integer")
    if math.gcd(h, k) != 1:
        raise ValueError(f"s(h, k) needs gcd(h, k) = 1, got gcd({h}, {k}) = {math.gcd(h, k)}")
    h %= k
    total = Fraction(0)
    sign = 1
    # s(h,k) = -1/4 + (h^2+k^2+1)/(12hk) - s(k mod h, h)
    while h != 0:
        total += sign * (Fraction(-1, 4) + Fraction(h * h + k * k + 1, 12 * h * k))
        h, k = k % h, h
        sign = -sign
    # loop ends at s(0, 1) = 0
    return total


def _reduced_angle(a: int, b: int) -> tuple[int, int]:
    if b <= 0:
        raise ValueError("angle denominator must be positive")
    if a % b == 0:
        raise PoleError(f"cot({a}π/{b}) is a pole")
    return a % b, b


def cot_pi_mp(angle: Fraction, ctx: FloatContext = DEFAULT_CONTEXT):
    """cot(angle * pi) as an mpf at the context precision.

    The angle is reduced mod 1 exactly before any rounding happens.
    """
    angle = as_rational(angle)
    frac = angle - math.floor(angle)
    if frac == 0:
        raise PoleError(f"cot({angle}π) is a pole")
    mp = ctx.mp
    # symmetric reduction to (0, 1/2] keeps sinpi/cospi well away from their zeros
    sign = 1
    if frac > Fraction(1, 2):
        frac = 1 - frac
        sign = -1
    y = mp.mpf(frac.numerator) / frac.denominator
    return sign * mp.cospi(y) / mp.sinpi(y)


def cot_eval(angle_numerator: int, angle_denominator: int,
             ctx: FloatContext = DEFAULT_CONTEXT) -> float:
    """``cot(a*pi/b)`` evaluated at ``ctx`` precision and rounded to a double."""
    a, b = _reduced_angle(angle_numerator, angle_denominator)
    return float(cot_pi_mp(Fraction(a, b), ctx))


def cot_table_fixed(p: int, ctx: FloatContext, guard_bits: int = 16) -> tuple[tuple[int, ...], int]:
    """Fixed-point table ``(round(cot(i*pi/p) * 2**F) for i in 0..p-1)`` (entry 0 unused).

    Products of table entries can then be accumulated exactly as integers,
    the only rounding being the one per table entry. Tables depend only on
    ``p`` and the precision, so they are memoized across calls.
    """
    return _cot_table(p, ctx.precision_bits, guard_bits)


@lru_cache(maxsize=1024)
def _cot_table(p: int, precision_bits: int, guard_bits: int) -> tuple[tuple[int, ...], int]:
    ctx = FloatContext(precision_bits)
    frac_bits = precision_bits + guard_bits
    mp = ctx.mp
    table = [0]
    for i in range(1, p):
        table.append(int(mp.nint(mp.ldexp(cot_pi_mp(Fraction(i, p), ctx), frac_bits))))
    return tuple(table), frac_bits


def symmetric_signature(matrix: Sequence[Sequence]) -> tuple[int, int]:
    """(positive, negative) inertia of a symmetric rational matrix.

    Exact congruence diagonalisation over Q (Sylvester's law of inertia).
    """
    n = len(matrix)
    a = [[as_rational(v) for v in row] for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise ValueError("matrix must be symmetric")

    pos = neg = 0
    size = n
    while size:
        # bring a nonzero diagonal entry to position 0
        piv = next((i for i in range(size) if a[i][i] != 0), None)
        if piv is None:
            off = next(((i, j) for i in range(size) for j in range(size) if a[i][j] != 0), None)
            if off is None:
                break  # remaining block is zero
            i, j = off
            # row_i += row_j, col_i += col_j makes the diagonal 2 a_ij != 0
            for c in range(size):
                a[i][c] += a[j][c]
            for r in range(size):
                a[r][i] += a[r][j]
            piv = i
        a[0], a[piv] = a[piv], a[0]
        for row in a:
            row[0], row[piv] = row[piv], row[0]
        d = a[0][0]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [[a[r][c] - a[r][0] * a[0][c] / d for c in range(1, size)] for r in range(1, size)]
        a = rest
        size -= 1
    return pos, neg


def signature(matrix: Sequence[Sequence]) -> int:
    pos, neg = symmetric_signature(matrix)
    return pos - neg


def sqrt_bracket(value: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(value) <= hi`` with ``hi - lo <= width``."""
    value = as_rational(value)
    if value < 0:
        raise ValueError("sqrt of a negative rational")
    bits = 1
    while Fraction(1, 2 ** bits) > width:
        bits += 1
    # sqrt(v) = sqrt(num*den)/den; bracket the integer square root at scale 2**bits
    scaled = value.numerator * value.denominator * 4 ** bits
    root = math.isqrt(scaled)
    denom = value.denominator * 2 ** bits
    lo = Fraction(root, denom)
    hi = lo if root * root == scaled else Fraction(root + 1, denom)
    return lo, hi


def exact_sqrt(value: Fraction) -> Fraction | None:
    """The rational square root of ``value`` if there is one."""
    value = as_rational(value)
    if value < 0:
        return None
    rn, rd = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if rn * rn == value.numerator and rd * rd == value.denominator:
        return Fraction(rn, rd)
    return None
