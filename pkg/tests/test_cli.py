import json
from fractions import Fraction

import pytest

from bubblecert.cli import main
from bubblecert.errors import ConfigError
from bubblecert.report import Report, Scenario, load_scenario, parse_config, run_all, run_budgets, run_classify


def test_eta_command(capsys):
    assert main(["eta", "--k-min", "2", "--k-max", "5"]) == 0
    out = capsys.readouterr().out
    assert "2/9" in out and "-1/4" in out


@pytest.mark.parametrize("argv", [
    ["eta", "--k-min", "1"],
    ["eta", "--k-min", "6", "--k-max", "3"],
    ["exclude", "--interval-a", "0"],
    ["exclude", "--interval-a", "3", "--interval-b", "2"],
    ["exclude", "--interval-a", "abc"],
    ["budgets", "--calabi-bound", "-1"],
    ["all", "--precision-bits", "20"],
    ["nonsense"],
])
def test_config_errors_exit_two(argv):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 2


def test_unbounded_exclusion_is_certificate_failure(capsys):
    assert main(["exclude", "--interval-b", "inf"]) == 1
    out = capsys.readouterr().out
    assert "excluded: False" in out


def test_exclude_default(capsys):
    assert main(["exclude"]) == 0
    assert "2/241" in capsys.readouterr().out


def test_budgets_deviation_is_flagged(capsys, tmp_path):
    path = tmp_path / "b.json"
    assert main(["budgets", "--calabi-bound", "20", "--json", str(path)]) == 0
    sec = json.loads(path.read_text())["sections"]["budgets"]
    assert sec["reference_match"] is False
    assert sec["w_minus"] == "116/3"


def test_classify_tampered_budget():
    sec = run_classify(Fraction(20), 30)
    assert sec["b2_1"] == list(range(1, 17))
    assert not sec["reference_match"] and sec["passed"]


def test_budget_section_reference_values():
    sec = run_budgets(Fraction(9))
    assert sec["w_minus"] == "24/1" and sec["ric0"] == "16/1" and sec["reference_match"]


@pytest.fixture(scope="module")
def small_report():
    return run_all(Scenario(name="small", k_max=12, samples=3), timestamp="2000-01-01T00:00:00+00:00")


def test_report_json_round_trip(small_report):
    text = small_report.to_json()
    back = Report.from_json(text)
    assert back.scenario == small_report.scenario
    assert back.to_json() == text
    d = json.loads(text)
    assert set(d) == {"scenario", "sections", "version", "timestamp"}
    assert {"eta_table", "identity_residuals", "classification", "exclusion"} <= set(d["sections"])


def test_report_deterministic(small_report):
    again = run_all(small_report.scenario, timestamp=small_report.timestamp)
    assert again.to_json() == small_report.to_json()
    assert small_report.passed


def test_all_with_config(tmp_path, capsys):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("name = tiny\nk_max = 6  # small\nsamples = 2\ninterval_a = 1\ninterval_b = 2\n")
    out = tmp_path / "r.json"
    assert main(["all", "--config", str(cfg), "--json", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["scenario"]["name"] == "tiny"
    assert d["sections"]["exclusion"]["global_min_sq"] == "2/7"


def test_config_override_beats_file(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("k_max = 6\n")
    assert load_scenario(cfg, k_max=9).k_max == 9


@pytest.mark.parametrize("text,needle", [
    ("k_max = 5\nbogus = 1\n", "<config>:2: unknown field 'bogus'"),
    ("k_max = 5\nk_max = 6\n", "<config>:2: duplicate field 'k_max'"),
    ("interval_a = 1/0\n", "<config>:1: bad value for 'interval_a'"),
    ("just words\n", "<config>:1: expected"),
    ("calabi_A_bound = inf\n", "calabi_A_bound must be finite"),
])
def test_config_diagnostics(text, needle):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert needle in str(info.value)


def test_config_reports_file_name(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("seed = x\n")
    with pytest.raises(ConfigError, match=r"bad\.cfg:1"):
        load_scenario(cfg)


def test_missing_config_file_exits_two(tmp_path):
    assert main(["all", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_scenario_validation():
    with pytest.raises(ConfigError):
        Scenario(interval_a=Fraction(2), interval_b=Fraction(1))
    with pytest.raises(ConfigError):
        Scenario(samples=0)
    assert Scenario(interval_b=None).interval_b is None
