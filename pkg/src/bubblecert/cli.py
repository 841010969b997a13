"""Command-line front end.

Exit codes: 0 every certificate passed, 1 some certificate failed,
2 configuration or usage error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .errors import BubbleCertError, ConfigError
from .report import (
    Report,
    Scenario,
    load_scenario,
    now_timestamp,
    run_all,
    run_budgets,
    run_classify,
    run_eta,
    run_exclude,
    run_identities,
    COT2_LIMIT_K_MAX,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _rational_or_inf(text: str) -> Optional[Fraction]:
    if text.strip().lower() in ("inf", "infinity"):
        return None
    return _rational(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS,
                        help="also write the report as JSON")
    common.add_argument("--precision-bits", type=int, default=argparse.SUPPRESS)
    common.add_argument("--tolerance", type=float, default=argparse.SUPPRESS)

    parser = _Parser(prog="bubblecert", parents=[common],
                     description="Exact checks behind bubble exclusion on CP2#2(-CP2).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eta", parents=[common], help="eta invariants of L(k^2-1, k)")
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=10)

    p = sub.add_parser("identities", parents=[common], help="trigonometric identity residuals")
    p.add_argument("--k-max", type=int, default=30)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("budgets", parents=[common], help="curvature budgets on M")
    p.add_argument("--calabi-bound", type=_rational, default=Fraction(9))

    p = sub.add_parser("classify", parents=[common], help="admissible bubble topologies")
    p.add_argument("--calabi-bound", type=_rational, default=Fraction(9))
    p.add_argument("--k-max", type=int, default=100)

    p = sub.add_parser("exclude", parents=[common], help="homology exclusion on [A, B]")
    p.add_argument("--interval-a", type=_rational, default=Fraction(1, 10))
    p.add_argument("--interval-b", type=_rational_or_inf, default=Fraction(10),
                   help="right endpoint, or 'inf' for the unbounded check")

    p = sub.add_parser("all", parents=[common], help="every section for one scenario")
    p.add_argument("--config", metavar="FILE")
    p.add_argument("--interval-a", type=_rational)
    p.add_argument("--interval-b", type=_rational_or_inf, default=argparse.SUPPRESS)
    p.add_argument("--calabi-bound", type=_rational)
    p.add_argument("--k-max", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    return parser


def _scenario(args) -> Scenario:
    overrides = {
        "interval_a": getattr(args, "interval_a", None),
        "calabi_A_bound": getattr(args, "calabi_bound", None),
        "k_max": getattr(args, "k_max", None),
        "samples": getattr(args, "samples", None),
        "seed": getattr(args, "seed", None),
        "float_precision_bits": getattr(args, "precision_bits", None),
        "tolerance": getattr(args, "tolerance", None),
    }
    config = getattr(args, "config", None)
    base = load_scenario(config) if config else Scenario()
    scenario = base.replace(**overrides)
    if hasattr(args, "interval_b"):
        # None is a meaningful value here (unbounded), so apply it explicitly
        scenario = Scenario(**{**scenario.__dict__, "interval_b": args.interval_b})
    return scenario


def _build_report(args) -> Report:
    scenario = _scenario(args)
    ctx = scenario.ctx
    cmd = args.command
    if cmd == "all":
        return run_all(scenario)
    if cmd == "eta":
        sections = {"eta_table": run_eta(args.k_min, args.k_max, ctx)}
    elif cmd == "identities":
        if args.k_max < 1:
            raise ConfigError("--k-max must be >= 1")
        sections = {"identity_residuals": run_identities(args.k_max, scenario.samples, scenario.seed, ctx,
                                                         cot2_limit_k_max=max(args.k_max, COT2_LIMIT_K_MAX))}
    elif cmd == "budgets":
        sections = {"budgets": run_budgets(scenario.calabi_A_bound)}
    elif cmd == "classify":
        sections = {"classification": run_classify(scenario.calabi_A_bound, scenario.k_max)}
    elif cmd == "exclude":
        sections = {"exclusion": run_exclude(scenario.interval_a, scenario.interval_b)}
    else:  # pragma: no cover - argparse restricts the choices
        raise ConfigError(f"unknown command {cmd}")
    return Report(scenario, sections, timestamp=now_timestamp())


# ---------------------------------------------------------------- text output

def _t(q: str) -> str:
    return q[:-2] if q.endswith("/1") else q


def _mark(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _print_eta(s, out):
    print(f"eta(L(k^2-1, k))   [float at {s['precision_bits']} bits]", file=out)
    print(f"{'k':>4} {'p':>6} {'exact':>16} {'closed form':>16} {'float':>22}  agree", file=out)
    for r in s["rows"]:
        fl = "-" if r["eta_float"] is None else f"{r['eta_float']:.15g}"
        print(f"{r['k']:>4} {r['p']:>6} {r['eta_exact']:>16} {r['eta_closed_form']:>16} {fl:>22}  "
              f"{'yes' if r['agree'] else 'NO'}", file=out)


def _print_identities(s, out):
    print(f"identity residuals   [{s['precision_bits']} bits, tol {s['tolerance']:g}, "
          f"{s['samples']} samples/k, seed {s['seed']}]", file=out)
    by_name: dict[str, list] = {}
    for r in s["shifted_sums"]:
        by_name.setdefault(r["identity"], []).append(r)
    for name, rows in by_name.items():
        worst = max(r["max_residual"] for r in rows)
        ok = all(r["passed"] for r in rows)
        print(f"  {name:<16} k=1..{rows[-1]['k']:<4} max residual {worst:.3e}  {_mark(ok)}", file=out)
    lim = s["cot2_zero_limit"]
    print(f"  {'cot2_zero_limit':<16} k=1..{lim[-1]['k']:<4} max residual "
          f"{max(r['residual'] for r in lim):.3e}  {_mark(all(r['passed'] for r in lim))}", file=out)
    main = s["main_identity"]
    if main:
        print(f"  {'main_identity':<16} k=2..{main[-1]['k']:<4} max residual "
              f"{max(r['residual'] for r in main):.3e}  exact "
              f"{'all equal' if all(r['exact_match'] for r in main) else 'MISMATCH'}  "
              f"{_mark(all(r['passed'] for r in main))}", file=out)
    reg = s["regrouped"]
    if reg:
        print(f"  {'regrouped sums':<16} {len(reg)} (k, j) pairs  {_mark(all(r['passed'] for r in reg))}",
              file=out)


def _print_budgets(s, out):
    print(f"compact budgets for A([w]) < {_t(s['calabi_A_bound'])}  (units of pi^2)", file=out)
    for label, key in (("s^2", "s_squared"), ("|W+|^2", "w_plus"), ("|W-|^2", "w_minus"),
                       ("|Ric0|^2", "ric0")):
        print(f"  int {label:<9} < {_t(s[key])} pi^2", file=out)
    print(f"  matches reference values: {'yes' if s['reference_match'] else 'no (deviation)'}",
          file=out)


def _print_classification(s, out):
    print(f"classification   (Ric0 budget {_t(s['ric0_budget'])} pi^2, "
          f"W- budget {_t(s['w_minus_budget'])} pi^2)",
          file=out)
    print(f"  b2 = 1: k in {s['b2_1']}", file=out)
    print(f"  b2 = 2: k in {s['b2_2']}   (searched k <= {s['k_max']})", file=out)
    for r in s["b2_2_rows"][:4]:
        print(f"    k={r['k']:<3} |Gamma|={r['gamma_order']:<5} eta={r['eta']:<10} "
              f"W-={_t(r['w_minus']):<8} Ric0={_t(r['ric0']):<8} admitted={r['admitted']}", file=out)
    print(f"  matches reference sets: {'yes' if s['reference_match'] else 'no (deviation)'}",
          file=out)


def _print_exclusion(s, out):
    a, b = s["interval"]
    print(f"homology exclusion on [{_t(a)}, {_t(b) if b is not None else 'inf'}]   "
          f"(tail bound |m| <= {s['tail_bound_m']})", file=out)
    print(f"  {'m':>4} {'n':>4} {'k':>2} {'inf eps^2':>16} {'at x':>10}", file=out)
    for r in s["per_class"]:
        at = _t(r["argmin"]) if r["attained"] else "inf"
        print(f"  {r['m']:>4} {r['n']:>4} {r['k']:>2} {_t(r['infimum_sq']):>16} {at:>10}", file=out)
    wit = ", ".join(f"({w['m']},{w['n']};k={w['k']})" for w in s["witnesses"])
    print(f"  global min eps^2 = {_t(s['global_min_sq'])}  witnesses {wit}", file=out)
    print(f"  excluded: {s['excluded']}", file=out)


_PRINTERS = {
    "eta_table": _print_eta,
    "identity_residuals": _print_identities,
    "budgets": _print_budgets,
    "classification": _print_classification,
    "exclusion": _print_exclusion,
}


def print_report(report: Report, out=None) -> None:
    out = sys.stdout if out is None else out
    print(f"bubblecert {report.version}  scenario '{report.scenario.name}'", file=out)
    for name, section in report.sections.items():
        print(file=out)
        _PRINTERS[name](section, out)
        print(f"[{_mark(section['passed'])}] {name}", file=out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = _build_report(args)
    except (ConfigError, ValueError) as exc:
        print(f"bubblecert: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BubbleCertError as exc:
        print(f"bubblecert: {exc}", file=sys.stderr)
        return EXIT_FAIL

    print_report(report)
    json_path = getattr(args, "json", None)
    if json_path:
        Path(json_path).write_text(report.to_json() + "\n", encoding="utf-8")
    if not report.passed:
        print(f"\ncertificate failure in: {', '.join(report.failing_sections())}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
