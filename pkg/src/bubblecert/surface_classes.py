"""Rational cohomology of CP^2 # 2(-CP^2) = (CP^1 x CP^1) # (-CP^2).

Classes are written in the basis (F1, F2, E): F1, F2 dual to the two rulings
of the quadric and E the exceptional divisor, with F1.F2 = 1, E.E = -1 and
all other basis pairings zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact_core import PiSquared, RationalLike, as_rational, symmetric_signature

GRAM = ((0, 1, 0), (1, 0, 0), (0, 0, -1))


@dataclass(frozen=True)
class CohClass:
    a: Fraction  # F1
    b: Fraction  # F2
    e: Fraction  # E

    def __post_init__(self):
        for name in ("a", "b", "e"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def __add__(self, other: CohClass) -> CohClass:
        return CohClass(self.a + other.a, self.b + other.b, self.e + other.e)

    def __sub__(self, other: CohClass) -> CohClass:
        return CohClass(self.a - other.a, self.b - other.b, self.e - other.e)

    def __neg__(self) -> CohClass:
        return CohClass(-self.a, -self.b, -self.e)

    def __rmul__(self, scalar) -> CohClass:
        s = as_rational(scalar)
        return CohClass(s * self.a, s * self.b, s * self.e)

    def __mul__(self, other):
        if isinstance(other, CohClass):
            return pair(self, other)
        return self.__rmul__(other)

    def swap(self) -> CohClass:
        """Image under F1 <-> F2."""
        return CohClass(self.b, self.a, self.e)

    @property
    def is_symmetric(self) -> bool:
        return self.a == self.b

    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.e)


F1 = CohClass(1, 0, 0)
F2 = CohClass(0, 1, 0)
E = CohClass(0, 0, 1)


def pair(u: CohClass, v: CohClass) -> Fraction:
    return u.a * v.b + u.b * v.a - u.e * v.e


def gram_signature() -> tuple[int, int]:
    return symmetric_signature(GRAM)


def _param(x: RationalLike) -> Fraction:
    x = as_rational(x)
    if x <= 0:
        raise ValueError(f"the symmetric family needs x > 0, got {x}")
    return x


def symmetric_class(x: RationalLike) -> CohClass:
    """(1+x)(F1+F2) - xE."""
    x = _param(x)
    return CohClass(1 + x, 1 + x, -x)


def volume_normalizer_sq(x: RationalLike) -> Fraction:
    """1 + 2x + x^2/2, the squared factor that rescales the class to unit volume."""
    x = _param(x)
    value = 1 + 2 * x + x * x / 2
    omega = symmetric_class(x)
    assert pair(omega, omega) == 2 * value
    return value


def c1() -> CohClass:
    return CohClass(2, 2, -1)


def calabi_bound_first_term(x: RationalLike) -> Fraction:
    """(c1.[w])^2 / [w]^2 for the symmetric class; the Futaki correction is not included."""
    omega = symmetric_class(x)
    return pair(c1(), omega) ** 2 / pair(omega, omega)


def calabi_lower_bound(x: RationalLike, futaki: Optional[PiSquared] = None) -> Fraction:
    """Lower bound for the normalized Calabi energy given a caller-supplied Futaki value.

    ``futaki`` is F(Xi, [w]) as a multiple of pi^2; without it only the first
    term is returned.
    """
    first = calabi_bound_first_term(x)
    if futaki is None:
        return first
    return first - futaki.coefficient / 32


@dataclass(frozen=True)
class AreaValue:
    """numerator / sqrt(denominator_sq); only the square is ever evaluated exactly."""

    numerator: Fraction
    denominator_sq: Fraction

    @property
    def squared(self) -> Fraction:
        return self.numerator ** 2 / self.denominator_sq

    def __float__(self) -> float:
        return float(self.numerator) / float(self.denominator_sq) ** 0.5


def area_value(m: int, n: int, x: RationalLike) -> AreaValue:
    """Pairing of m(F1+F2)+nE with the unit-volume symmetric class."""
    x = _param(x)
    return AreaValue(2 * m * (1 + x) + n * x, volume_normalizer_sq(x))


def pell_class(m: int, n: int) -> CohClass:
    return CohClass(m, m, n)
