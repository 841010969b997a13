"""Scenario configuration and report sections.

Every exact value in a report is the string ``"num/den"``; floats are plain
JSON numbers and each float-bearing section records ``precision_bits``.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .bubble_classifier import (
    REFERENCE_B2_1,
    REFERENCE_B2_2,
    b2_2_table,
    classify_b2_1,
    exclusion_verdict,
)
from .curvature_budgets import (
    b2_2_candidate,
    chern_ric0,
    compact_budgets,
    eq21_residual,
)
from .errors import ConfigError
from .eta_invariants import LensSpace, eta_closed_form, eta_exact, eta_float
from .exact_core import FloatContext, format_rational, parse_rational
from .trig_identities import (
    identity_suite,
    regrouped_sums,
    scaled_tolerance,
    verify_cot2_zero_limit,
    verify_main_identity,
    main_identity_exact,
    main_identity_rhs,
)

REFERENCE_CALABI_BOUND = Fraction(9)
ETA_FLOAT_K_CLIP = 50
IDENTITY_K_MAX = 30
COT2_LIMIT_K_MAX = 100


def _q(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else format_rational(x)


@dataclass(frozen=True)
class Scenario:
    name: str = "default"
    interval_a: Fraction = Fraction(1, 10)
    interval_b: Optional[Fraction] = Fraction(10)   # None: unbounded above
    calabi_A_bound: Fraction = REFERENCE_CALABI_BOUND
    k_max: int = 100
    float_precision_bits: int = 113
    tolerance: float = 1e-10
    samples: int = 20
    seed: int = 0

    def __post_init__(self):
        if self.interval_a <= 0:
            raise ConfigError(f"interval_a must be positive, got {self.interval_a}")
        if self.interval_b is not None and self.interval_b <= self.interval_a:
            raise ConfigError(f"need interval_a < interval_b, got [{self.interval_a}, {self.interval_b}]")
        if self.calabi_A_bound <= 0:
            raise ConfigError("calabi_A_bound must be positive")
        if self.k_max < 2:
            raise ConfigError("k_max must be >= 2")
        if self.float_precision_bits < 53:
            raise ConfigError("float_precision_bits must be >= 53")
        if not self.tolerance >= 0:
            raise ConfigError("tolerance must be nonnegative")
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")

    @property
    def ctx(self) -> FloatContext:
        return FloatContext(self.float_precision_bits, self.tolerance)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for key in ("interval_a", "interval_b", "calabi_A_bound"):
            d[key] = _q(d[key])
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> Scenario:
        return cls(**{f.name: _coerce(f.name, d[f.name]) for f in fields(cls) if f.name in d})

    def replace(self, **overrides) -> Scenario:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d.update({k: v for k, v in overrides.items() if v is not None})
        return Scenario(**d)


_INT_FIELDS = {"k_max", "float_precision_bits", "samples", "seed"}
_RATIONAL_FIELDS = {"interval_a", "interval_b", "calabi_A_bound"}


def _coerce(key: str, value):
    if value is None:
        return None
    if key in _RATIONAL_FIELDS:
        if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "none"):
            if key != "interval_b":
                raise ConfigError(f"{key} must be finite")
            return None
        return value if isinstance(value, Fraction) else parse_rational(str(value))
    if key in _INT_FIELDS:
        return int(value)
    if key == "tolerance":
        return float(value)
    return str(value)


def parse_config(text: str, source: str = "<config>") -> dict[str, Any]:
    """Parse ``key = value`` lines; ``#`` starts a comment. Errors name the line and field."""
    known = {f.name for f in fields(Scenario)}
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{source}:{lineno}: unknown field {key!r}")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate field {key!r}")
        try:
            out[key] = _coerce(key, value.strip("\"'"))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r} ({exc})") from None
    return out


def load_scenario(path: str | Path, **overrides) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    values = parse_config(text, str(path))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Scenario(**values)


# ---------------------------------------------------------------- sections

def run_eta(k_min: int, k_max: int, ctx: FloatContext,
            float_k_max: int = ETA_FLOAT_K_CLIP) -> dict[str, Any]:
    if k_min < 2:
        raise ConfigError(f"eta table needs k >= 2 (k = {k_min} gives a degenerate lens space)")
    if k_max < k_min:
        raise ConfigError(f"empty k range {k_min}..{k_max}")
    rows = []
    for k in range(k_min, k_max + 1):
        lens = LensSpace(k * k - 1, k)
        exact = eta_exact(lens)
        closed = eta_closed_form(k)
        fl = eta_float(lens, ctx) if k <= float_k_max else None
        agree = exact == closed and (fl is None or abs(fl - float(exact)) <= max(ctx.tolerance, 1e-15))
        rows.append({"k": k, "p": lens.p, "eta_exact": _q(exact), "eta_closed_form": _q(closed),
                     "eta_float": fl, "agree": agree})
    return {"precision_bits": ctx.precision_bits, "float_k_max": float_k_max, "rows": rows,
            "passed": all(r["agree"] for r in rows)}


def run_identities(k_max: int, samples: int, seed: int, ctx: FloatContext,
                   cot2_limit_k_max: int = COT2_LIMIT_K_MAX) -> dict[str, Any]:
    worst: dict[tuple[str, int], dict[str, Any]] = {}
    for rep in identity_suite(k_max, samples, seed, ctx):
        key = (rep.identity_name, rep.parameter_k)
        row = worst.setdefault(key, {"identity": rep.identity_name, "k": rep.parameter_k,
                                     "samples": 0, "max_residual": 0.0,
                                     "tolerance": rep.tolerance, "passed": True})
        row["samples"] += 1
        row["max_residual"] = max(row["max_residual"], rep.residual)
        row["passed"] = row["passed"] and rep.passed
    shifted_sums = list(worst.values())

    limit_rows = []
    for k in range(1, cot2_limit_k_max + 1):
        rep = verify_cot2_zero_limit(k, ctx)
        limit_rows.append({"k": k, "exact": _q(Fraction(k * (k - 1), 3)),
                           "float_sum": rep.lhs, "residual": rep.residual, "passed": rep.passed})

    main_rows = []
    for k in range(2, k_max + 1):
        rep = verify_main_identity(k, ctx)
        main_rows.append({"k": k, "rhs": _q(main_identity_rhs(k)), "exact_sum": _q(main_identity_exact(k)),
                          "float_sum": rep.lhs, "residual": rep.residual,
                          "exact_match": rep.exact_match, "passed": rep.passed and bool(rep.exact_match)})

    regroup_rows = []
    for k in range(3, k_max + 1):
        for j in range(1, k - 1):
            a, b, target = regrouped_sums(k, j, ctx)
            res = max(abs(a - target), abs(b - target))
            regroup_rows.append({"k": k, "j": j, "residual": res,
                                 "passed": res <= scaled_tolerance(k, ctx) * max(1.0, abs(target))})

    passed = all(r["passed"] for r in shifted_sums + limit_rows + main_rows + regroup_rows)
    return {"precision_bits": ctx.precision_bits, "tolerance": ctx.tolerance, "seed": seed,
            "samples": samples, "shifted_sums": shifted_sums, "cot2_zero_limit": limit_rows,
            "main_identity": main_rows, "regrouped": regroup_rows, "passed": passed}


def run_budgets(calabi_bound: Fraction) -> dict[str, Any]:
    b = compact_budgets(calabi_bound)
    reference = compact_budgets(REFERENCE_CALABI_BOUND)
    return {
        "calabi_A_bound": _q(Fraction(calabi_bound)),
        "unit": "pi^2",
        "strict": b.strict,
        "s_squared": _q(b.s_squared.coefficient),
        "w_plus": _q(b.w_plus.coefficient),
        "w_minus": _q(b.w_minus.coefficient),
        "ric0": _q(b.ric0.coefficient),
        "signature_identity": b.w_minus.coefficient == 12 + b.s_squared.coefficient / 24,
        "reference_match": b == reference,
        "passed": b.w_minus.coefficient == 12 + b.s_squared.coefficient / 24,
    }


def run_classify(calabi_bound: Fraction, k_max: int) -> dict[str, Any]:
    b = compact_budgets(calabi_bound)
    set1 = classify_b2_1(b.ric0)
    table = b2_2_table(b.w_minus, k_max)
    set2 = frozenset(r.k for r in table if r.admitted)
    rows = []
    consistent = True
    for r in table:
        c = b2_2_candidate(r.k)
        chern = chern_ric0(c.intersection_matrix).coefficient
        # Gauss-Bonnet ric0, the combined-identity ric0 and -8 pi^2 c1^2 must all coincide
        ok = (r.ric0 == r.implied_ric0 and r.ric0.coefficient == chern
              and eq21_residual(c, r.ric0) == 0)
        consistent = consistent and ok
        rows.append({"k": r.k, "gamma_order": r.gamma_order, "eta": _q(r.eta),
                     "w_minus": _q(r.w_minus.coefficient), "ric0": _q(r.ric0.coefficient),
                     "implied_ric0": _q(r.implied_ric0.coefficient), "chern_ric0": _q(chern),
                     "fits_w_minus": r.fits_w_minus, "eta_in_range": r.eta_in_range,
                     "implied_ric0_negative": r.implied_ric0_negative, "admitted": r.admitted,
                     "consistent": ok})
    return {
        "calabi_A_bound": _q(Fraction(calabi_bound)),
        "ric0_budget": _q(b.ric0.coefficient),
        "w_minus_budget": _q(b.w_minus.coefficient),
        "k_max": k_max,
        "b2_1": sorted(set1),
        "b2_2": sorted(set2),
        "b2_2_rows": rows,
        "reference_match": set1 == REFERENCE_B2_1 and set2 == REFERENCE_B2_2,
        "passed": consistent,
    }


def run_exclude(a: Fraction, b: Optional[Fraction]) -> dict[str, Any]:
    rep = exclusion_verdict(a, b)

    def row(ci):
        return {"m": ci.pell.m, "n": ci.pell.n, "k": ci.pell.k, "infimum_sq": _q(ci.infimum_sq),
                "argmin": _q(ci.argmin), "vanishing_point": _q(ci.vanishing_point),
                "attained": ci.attained, "exact": ci.exact}

    return {
        "interval": [_q(rep.interval[0]), _q(rep.interval[1])],
        "k_values": list(rep.k_values),
        "tail_bound_m": rep.tail_bound_m,
        "tail_floor_sq": _q(rep.tail_floor_sq),
        "per_class": [row(ci) for ci in rep.per_class],
        "global_min_sq": _q(rep.global_min_sq),
        "witnesses": [row(ci) for ci in rep.witnesses],
        "excluded": rep.excluded,
        "passed": rep.excluded,
    }


# ---------------------------------------------------------------- report

@dataclass
class Report:
    scenario: Scenario
    sections: dict[str, dict[str, Any]] = field(default_factory=dict)
    version: str = __version__
    timestamp: str = ""

    @property
    def passed(self) -> bool:
        return all(s.get("passed", False) for s in self.sections.values())

    def failing_sections(self) -> list[str]:
        return [name for name, s in self.sections.items() if not s.get("passed", False)]

    def to_dict(self) -> dict[str, Any]:
        return {"scenario": self.scenario.to_dict(), "sections": self.sections,
                "version": self.version, "timestamp": self.timestamp}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, allow_nan=False)

    @classmethod
    def from_json(cls, text: str) -> Report:
        d = json.loads(text)
        return cls(Scenario.from_dict(d["scenario"]), d["sections"], d["version"], d["timestamp"])


def now_timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def run_all(scenario: Scenario, timestamp: Optional[str] = None) -> Report:
    ctx = scenario.ctx
    sections = {
        "eta_table": run_eta(2, scenario.k_max, ctx),
        "identity_residuals": run_identities(min(IDENTITY_K_MAX, scenario.k_max), scenario.samples,
                                             scenario.seed, ctx),
        "budgets": run_budgets(scenario.calabi_A_bound),
        "classification": run_classify(scenario.calabi_A_bound, scenario.k_max),
        "exclusion": run_exclude(scenario.interval_a, scenario.interval_b),
    }
    return Report(scenario, sections, timestamp=timestamp if timestamp is not None else now_timestamp())

