"""Exact and certified-float checks for bubble exclusion on CP^2 # 2(-CP^2)."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BubbleCertError,
    CertificateError,
    ConfigError,
    InfeasibleCandidate,
    IntervalError,
    PoleError,
)
from .exact_core import FloatContext, PiSquared, dedekind_sum, cot_eval  # noqa: E402
from .eta_invariants import LensSpace, eta_closed_form, eta_exact, eta_float  # noqa: E402

__all__ = [
    "BubbleCertError", "CertificateError", "ConfigError", "InfeasibleCandidate",
    "IntervalError", "PoleError", "FloatContext", "PiSquared", "dedekind_sum",
    "cot_eval", "LensSpace", "eta_closed_form", "eta_exact", "eta_float",
]
