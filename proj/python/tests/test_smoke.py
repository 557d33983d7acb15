import math

import pytest

import tatep

BUNDLE = {
    "n": 1,
    "vertices": [
        {"id": 0, "coords": [["-1", "-1"]]},
        {"id": 1, "coords": [["2", "-1"]]},
        {"id": 2, "coords": [["-1", "2"]]},
    ],
    "simplexes": [[0, 1, 2]],
    "chains": {"gamma": [{"simplex": [0, 1, 2], "coeff": "1"}]},
}


def test_rationals_are_normalized():
    assert tatep.normalize_rational("6/8") == "3/4"
    with pytest.raises(tatep.ParseError):
        tatep.normalize_rational("0.75")


def test_boundary_of_a_triangle():
    terms = {tuple(t["simplex"]): t["coeff"] for t in tatep.boundary(BUNDLE, "gamma")}
    assert terms == {(1, 2): "1", (0, 2): "-1", (0, 1): "1"}


def test_bundle_errors_name_the_location():
    bad = dict(BUNDLE, chains={"gamma": [{"simplex": [0, 1, 2], "coeff": "0.5"}]})
    with pytest.raises(tatep.ParseError, match="/chains/gamma/0/coeff"):
        tatep.boundary(bad, "gamma")


def test_cauchy_on_a_triangle_around_the_origin():
    report = tatep.verify_cauchy(BUNDLE, "gamma")
    assert report["pass"]
    assert report["residual"] < 1e-6


def test_cauchy_on_the_disk_box():
    report = tatep.verify_cauchy_disk_box(1, 2)
    assert report["pass"]
    oracle = math.log(2) / (2j * math.pi)
    assert abs(report["boundary_term"] - oracle) < 1e-6


def test_integral_of_a_serialized_cell_chain():
    box = tatep.disk_box_chain("1/2", 3)
    assert box["degree"] == 3
    face = tatep.cubical_differential(box)
    assert face["degree"] == 1 and face["n"] == 1
    result = tatep.integrate(face)
    assert result["converged"]
    value = complex(*result["value"])
    assert abs(value - math.log(6) / (2j * math.pi)) < 1e-6


def test_dilog_periods_at_one_half():
    report = tatep.dilog_periods("1/2")
    assert all(c["pass"] for c in report["checks"])
    entries = report["matrix"]["entries"]
    tau = 2j * math.pi
    li2 = complex(*entries[2][0]["value"]) * tau**2
    assert abs(li2 - (math.pi**2 / 12 - math.log(2) ** 2 / 2)) < 1e-4
    assert entries[0][0]["symbolic"] == "(2πi)^-2"
    assert entries[0][1]["exact"] and entries[0][1]["symbolic"] == "0"


def test_bar_suite_and_unknown_suite():
    assert "bar" in tatep.suite_names()
    checks = tatep.run_suite("bar", seed=3)
    assert checks and all(c["pass"] and c["residual"] == 0 for c in checks)
    with pytest.raises(tatep.DomainError):
        tatep.run_suite("nope")


def test_bar_differential_and_shuffle():
    presentation = {
        "generators": [
            {"name": "x", "r": 1, "deg": 1, "kind": "cycle"},
            {"name": "y", "r": 1, "deg": 1, "kind": "cycle"},
            {"name": "z", "r": 2, "deg": 1, "kind": "cycle"},
        ],
        "differential": {"z": [{"coeff": "1", "monomial": ["x", "y"]}]},
    }
    word = [["1", [["z"]], [], 0], ["-1", [["x"], ["y"]], [], 0]]
    assert tatep.bar_differential(presentation, word) == []
    product = tatep.shuffle(presentation, [["1", [["x"]], [], 0]], [["1", [["y"]], [], 0]])
    assert len(product) == 2
