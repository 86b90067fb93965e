import os
from fractions import Fraction
from pathlib import Path

import pytest

import expansia

SCENARIOS = Path(os.environ.get("EXPANSIA_SCENARIO_DIR", Path(__file__).resolve().parents[2] / "scenarios"))


def load(name):
    return expansia.Scenario.load(str(SCENARIOS / name))


def test_scenario_fields():
    s = load("certify_BC.scn")
    assert s.target == "BC"
    assert s.group_names == ["G", "BC", "B", "C"]
    assert s.params["witness"] == "1/100"


def test_certify_exit_codes():
    for name, code in [("certify_G.scn", 0), ("certify_BC.scn", 0), ("certify_B.scn", 1), ("certify_C.scn", 1)]:
        got, reports = expansia.run("certify", load(name))
        assert got == code
        assert reports[0]["exit"] == code


def test_certify_linear_direct():
    v = expansia.certify_linear(load("certify_BC.scn"))
    assert v["verdict"] == "Certified"
    assert v["exit"] == 0


def test_hexagon_rotation():
    s = load("cyclic6.scn")
    assert expansia.falsify_expansive(s, "1/2")["verdict"] == "Certified"
    v = expansia.falsify_expansive(s, "1")
    assert v["verdict"] == "Falsified" and v["exact"]
    est = expansia.estimate_sup_constant(s, grid=6)
    assert expansia.fraction(est["threshold"]) == Fraction(1)
    assert expansia.verify_cover(s, "S")["exit"] == 0
    assert expansia.decide_finite(s)
    assert expansia.fraction(expansia.constant_from_cover(s, "S")) > 0


def test_sierpinski_refuted():
    s = load("sierpinski.scn")
    assert not expansia.decide_finite(s)
    v = expansia.verify_cover(s, "N")
    assert v["verdict"] == "Refuted"
    assert set(v["pair"]) == {"o", "x"}


def test_fixed_points_and_hyperbolicity():
    assert expansia.fixed_points(load("bc_fixed_points.scn")) == ["(0, 0)"]
    assert expansia.is_hyperbolic("2,1;1,1")
    assert not expansia.is_hyperbolic("-1,1;0,1")


def test_rationals_are_strings():
    _, reports = expansia.run("estimate", load("cyclic6.scn"), seed=3)
    text = str(reports[0])
    assert "/" in text


def test_replay_round_trip():
    _, reports = expansia.run("certify", load("certify_G.scn"))
    assert expansia.replay(reports)[0]
    reports[0]["exit"] = 1
    ok, field, _ = expansia.replay(reports)
    assert not ok and field


def test_errors():
    with pytest.raises(expansia.ScenarioError):
        load("bad_matrix.scn")
    with pytest.raises(ValueError):
        expansia.run("teleport", load("cyclic6.scn"))
    _, reports = expansia.run("certify", load("certify_G.scn"))
    reports[0]["version"] = "2.0.0"
    with pytest.raises(expansia.VersionMismatch):
        expansia.replay(reports)
