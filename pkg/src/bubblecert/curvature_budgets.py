"""Gauss-Bonnet / signature bookkeeping in units of pi^2.

Compact side: M = CP^2 # 2(-CP^2) with a Kahler metric whose normalized
Calabi energy is below ``calabi_A_bound``. ALE side: scalar-flat Kahler
bubbles X with group Gamma at infinity, where

    int_X |W-|^2          = -12 (tau + eta)          pi^2
    int_X |Ric0|^2        = 2 (int |W-|^2 - 8 (chi - 1/|Gamma|) pi^2)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleCandidate
from .eta_invariants import LensSpace, eta_exact, plumbing_lens_space
from .exact_core import PiSquared, RationalLike, as_rational, signature
from .surface_classes import c1, gram_signature, pair


def tau_M() -> int:
    pos, neg = gram_signature()
    return pos - neg


def c1_squared_M() -> Fraction:
    return pair(c1(), c1())


@dataclass(frozen=True)
class CurvatureBudget:
    s_squared: PiSquared
    w_minus: PiSquared
    ric0: PiSquared
    strict: bool = True

    def __post_init__(self):
        for name in ("s_squared", "w_minus", "ric0"):
            if getattr(self, name).coefficient < 0:
                raise ValueError(f"{name} budget must be nonnegative")

    @property
    def w_plus(self) -> PiSquared:
        # Kahler: |W+|^2 = s^2/24 pointwise
        return self.s_squared / 24

    def admits(self, value: PiSquared, which: str) -> bool:
        bound = getattr(self, which)
        return value < bound if self.strict else value <= bound


def compact_budgets(calabi_A_bound: RationalLike, strict: bool = True) -> CurvatureBudget:
    """Curvature budgets on M implied by ``int s^2 < 32 pi^2 * calabi_A_bound``."""
    A = as_rational(calabi_A_bound)
    if A <= 0:
        raise ValueError(f"Calabi bound must be positive, got {A}")
    s2 = 32 * A
    # -12 tau(M) pi^2 + int |W+|^2, with int |W+|^2 = int s^2/24
    w_minus = -12 * tau_M() + s2 / 24
    # int |Ric0|^2 = (1/4) int s^2 - 8 pi^2 c1^2
    ric0 = max(Fraction(0), s2 / 4 - 8 * c1_squared_M())
    return CurvatureBudget(PiSquared(s2), PiSquared(w_minus), PiSquared(ric0), strict)


@dataclass(frozen=True)
class AleCandidate:
    """Topological data of a candidate deepest bubble."""

    b2: int
    intersection_matrix: tuple[tuple[int, ...], ...]
    chi: int
    tau: int
    gamma_order: int
    eta: Fraction
    lens: LensSpace | None = field(default=None, compare=False)

    def __post_init__(self):
        matrix = tuple(tuple(int(v) for v in row) for row in self.intersection_matrix)
        object.__setattr__(self, "intersection_matrix", matrix)
        object.__setattr__(self, "eta", as_rational(self.eta))
        if self.b2 < 0 or len(matrix) != self.b2 or any(len(r) != self.b2 for r in matrix):
            raise ValueError("intersection matrix must be b2 x b2")
        if self.chi != 1 + self.b2:
            raise ValueError(f"chi must equal 1 + b2 = {1 + self.b2} (b1 = b3 = 0), got {self.chi}")
        if self.b2 and self.tau != signature(matrix):
            raise ValueError(f"tau = {self.tau} disagrees with the intersection form signature")
        if self.b2 == 0 and self.tau != 0:
            raise ValueError("tau must vanish when b2 = 0")
        if self.gamma_order < 1:
            raise ValueError("|Gamma| must be positive")

    @classmethod
    def from_form(cls, matrix: Sequence[Sequence[int]], gamma_order: int, eta: RationalLike,
                  lens: LensSpace | None = None) -> AleCandidate:
        b2 = len(matrix)
        tau = signature(matrix) if b2 else 0
        return cls(b2, tuple(map(tuple, matrix)), 1 + b2, tau, gamma_order, as_rational(eta), lens)

    @classmethod
    def plumbing(cls, chain: Sequence[int]) -> AleCandidate:
        """Linear chain of spheres with self-intersections -chain[i]; boundary lens space from the chain."""
        r = len(chain)
        matrix = [[0] * r for _ in range(r)]
        for i, a in enumerate(chain):
            matrix[i][i] = -a
            if i + 1 < r:
                matrix[i][i + 1] = matrix[i + 1][i] = 1
        lens = plumbing_lens_space(chain)
        return cls.from_form(matrix, lens.p, eta_exact(lens), lens)


def line_bundle_candidate(k: int) -> AleCandidate:
    """Total space of O(-k) over CP^1, boundary L(k, 1)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        # boundary S^3, trivial group
        return AleCandidate.from_form([[-1]], 1, 0)
    return AleCandidate.plumbing([k])


def b2_2_candidate(k: int) -> AleCandidate:
    """Form [[-k, 1], [1, -k]], Gamma = Z_{k^2-1}, boundary L(k^2-1, k)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return AleCandidate.plumbing([k, k])


def ale_w_minus(c: AleCandidate) -> PiSquared:
    value = -12 * (c.tau + c.eta)
    if value < 0:
        raise InfeasibleCandidate(f"int |W-|^2 = {value} pi^2 < 0 for {c}")
    return PiSquared(value)


def ale_ric0(c: AleCandidate, w_minus: PiSquared) -> PiSquared:
    value = 2 * (w_minus.coefficient - 8 * (c.chi - Fraction(1, c.gamma_order)))
    if value < 0:
        raise InfeasibleCandidate(f"int |Ric0|^2 = {value} pi^2 < 0 for {c}")
    return PiSquared(value)


def eq21_residual(c: AleCandidate, ric0: PiSquared) -> Fraction:
    """(3/2) eta + ric0/(16 pi^2) - 1/|Gamma|; zero exactly when b2 = 2 Gauss-Bonnet and signature agree."""
    if c.b2 != 2:
        raise ValueError(f"the combined identity is stated for b2 = 2, got b2 = {c.b2}")
    return Fraction(3, 2) * c.eta + ric0.coefficient / 16 - Fraction(1, c.gamma_order)


def eq21_implied_ric0(c: AleCandidate) -> PiSquared:
    """The ric0 value making eq21_residual vanish; may be negative (no clamping)."""
    if c.b2 != 2:
        raise ValueError("b2 must be 2")
    return PiSquared(16 * (Fraction(1, c.gamma_order) - Fraction(3, 2) * c.eta))


def line_bundle_ric0(k: int) -> PiSquared:
    """8 (k-2)^2 / k pi^2 for the O(-k) bubble."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return PiSquared(Fraction(8 * (k - 2) ** 2, k))


def chern_dual(matrix: Sequence[Sequence[int]]) -> list[Fraction]:
    """Coefficients of the rational class dual to c1 on a plumbing of holomorphic spheres.

    Adjunction gives c1.S_i = 2 + S_i.S_i; solve Q a = (2 + Q_ii)_i exactly.
    """
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(2 + row[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def chern_ric0(matrix: Sequence[Sequence[int]]) -> PiSquared:
    """-8 pi^2 c1^2 for a scalar-flat Kahler bubble, from the adjunction dual of c1."""
    a = chern_dual(matrix)
    n = len(a)
    c1_sq = sum(a[i] * matrix[i][j] * a[j] for i in range(n) for j in range(n))
    return PiSquared(-8 * c1_sq)
