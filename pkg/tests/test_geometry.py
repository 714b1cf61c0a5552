"""Unit tests for concrete scenarios: rings, tangent classes, Euler numbers."""

import pytest

from blowchern.blowup import bl_pushforward, bl_restrict
from blowchern.chowring import degree
from blowchern.geometry import (
    CATALOG,
    CICenter,
    LinearCenter,
    Scenario,
    ScenarioError,
    ambient_tangent_chern,
    blowup_total_chern,
    catalog_by_label,
    center_degrees,
    center_euler,
    center_tangent_chern,
    difflp_agreement_check,
    euler_identity_check,
    scenario_context,
    scenario_from_dict,
    scenario_from_json,
    simlem_agreement_check,
)

# Euler characteristics of the catalog centers.  Linear centers are
# projective spaces (chi = m + 1); curves have chi = 2 - 2g with the genus
# from the adjunction/degree count; the surfaces are the classical ones
# (quadric 4, cubic 9, quartic del Pezzo 8).
CENTER_CHI = {
    "point-in-P2": 1,
    "point-in-P3": 1,
    "line-in-P3": 2,
    "plane-in-P4": 3,
    "line-in-P4": 2,
    "point-in-P4": 1,
    "quadric-surface-in-P3": 4,
    "cubic-surface-in-P3": 9,
    "elliptic-quartic-in-P3": 0,
    "genus4-sextic-in-P3": -6,
    "quadric-surface-in-P4": 4,
    "delpezzo-quartic-in-P4": 8,
    "genus5-octic-in-P4": -8,
}


# -- scenario validation -------------------------------------------------


def test_scenario_rejects_bad_parameters():
    with pytest.raises(ScenarioError):
        Scenario(0, LinearCenter(0), "bad")
    with pytest.raises(ScenarioError):
        Scenario(3, LinearCenter(3), "center-not-proper")
    with pytest.raises(ScenarioError):
        Scenario(3, LinearCenter(-1), "negative")
    with pytest.raises(ScenarioError):
        Scenario(3, CICenter(()), "no-hypersurfaces")
    with pytest.raises(ScenarioError):
        Scenario(3, CICenter((2, 2, 2, 2)), "too-many")
    with pytest.raises(ScenarioError):
        Scenario(3, CICenter((2, 0)), "degree-zero")


def test_scenario_codim_and_degrees():
    s = Scenario(4, LinearCenter(1), "line")
    assert s.codim == 3 and s.center_dim == 1
    assert center_degrees(s) == (1, 1, 1)
    t = Scenario(4, CICenter((2, 3)), "ci")
    assert t.codim == 2 and t.center_dim == 2
    assert center_degrees(t) == (2, 3)


def test_scenario_json_roundtrip():
    s = Scenario(3, CICenter((2, 2)), "elliptic-quartic-in-P3")
    assert scenario_from_dict(s.to_dict()) == s
    t = Scenario(2, LinearCenter(0), "point-in-P2")
    assert scenario_from_dict(t.to_dict()) == t
    parsed = scenario_from_json(
        '{"ambient_dim": 3, "center": {"type": "linear", "dim": 1}, '
        '"label": "line-in-P3"}'
    )
    assert parsed == Scenario(3, LinearCenter(1), "line-in-P3")


def test_scenario_json_errors():
    with pytest.raises(ScenarioError):
        scenario_from_json("")
    with pytest.raises(ScenarioError):
        scenario_from_json("[]")
    with pytest.raises(ScenarioError):
        scenario_from_json('{"ambient_dim": 3}')
    with pytest.raises(ScenarioError):
        scenario_from_json('{"ambient_dim": 3, "center": {"type": "torus"}}')
    with pytest.raises(ScenarioError):
        scenario_from_json(
            '{"ambient_dim": "3", "center": {"type": "linear", "dim": 0}}'
        )
    with pytest.raises(ScenarioError):
        scenario_from_json(
            '{"ambient_dim": 3, "center": {"type": "ci", "degrees": [2, "2"]}}'
        )


def test_catalog_lookup():
    assert catalog_by_label("line-in-P3").center == LinearCenter(1)
    with pytest.raises(ScenarioError):
        catalog_by_label("no-such-scenario")


def test_catalog_is_large_and_unlabeled_twice():
    assert len(CATALOG) >= 10
    labels = [s.label for s in CATALOG]
    assert len(set(labels)) == len(labels)


# -- contexts ------------------------------------------------------------


def test_point_center_has_trivial_normal_class():
    ctx = scenario_context(catalog_by_label("point-in-P2"))
    assert ctx.d == 2
    assert str(ctx.N.total().value) == "1"


def test_line_in_p3_context():
    ctx = scenario_context(catalog_by_label("line-in-P3"))
    assert ctx.d == 2
    assert str(ctx.N.total().value) == "1 + 2*h"
    assert str(ctx.push_i(ctx.ringX.one()).value) == "H^2"
    assert str(ctx.push_i(ctx.ringX.var("h")).value) == "H^3"
    assert ctx.pull_i(ctx.ringY.var("H")) == ctx.ringX.var("h")


def test_ci22_in_p3_context():
    ctx = scenario_context(catalog_by_label("elliptic-quartic-in-P3"))
    assert ctx.d == 2
    assert str(ctx.N.total().value) == "1 + 4*h"
    assert str(ctx.push_i(ctx.ringX.one()).value) == "4*H^2"
    assert degree(ctx.ringX.var("h")) == 4  # curve degree


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: s.label)
def test_projection_formula_on_generators(s):
    ctx = scenario_context(s)
    H = ctx.ringY.var("H")
    for c in (ctx.ringX.one(), ctx.ringX.var("h")):
        assert ctx.push_i(ctx.pull_i(H) * c) == H * ctx.push_i(c)


# -- tangent classes and Euler characteristics ---------------------------


def test_center_tangent_frozen_values():
    assert str(center_tangent_chern(catalog_by_label("point-in-P2")).value) == "1"
    assert str(center_tangent_chern(catalog_by_label("line-in-P3")).value) == "1 + 2*h"
    # genus-1 curve: top component vanishes
    assert (
        str(center_tangent_chern(catalog_by_label("elliptic-quartic-in-P3")).value)
        == "1"
    )


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: s.label)
def test_center_euler_catalog(s):
    assert center_euler(s) == CENTER_CHI[s.label]


def test_ambient_tangent_class():
    c = ambient_tangent_chern(catalog_by_label("point-in-P2"))
    assert str(c.value) == "1 + 3*H + 3*H^2"


# -- blow-up classes -----------------------------------------------------


def test_blowup_point_in_p2():
    total, pushed, chi = blowup_total_chern(catalog_by_label("point-in-P2"))
    assert str(pushed.value) == "1 + 3*H + 4*H^2"
    assert chi == 4


def test_blowup_line_in_p3():
    total, pushed, chi = blowup_total_chern(catalog_by_label("line-in-P3"))
    assert chi == 6
    assert str(pushed.value.homogeneous_component(1)) == "4*H"


def test_blowup_ci22_in_p3():
    _, _, chi = blowup_total_chern(catalog_by_label("elliptic-quartic-in-P3"))
    assert chi == 4


def test_blowup_along_hypersurface_is_identity():
    s = catalog_by_label("quadric-surface-in-P3")
    total, pushed, chi = blowup_total_chern(s)
    assert total.x_part.is_zero()
    assert pushed == ambient_tangent_chern(s)
    assert chi == 4


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: s.label)
def test_blowup_total_starts_with_one(s):
    _, pushed, _ = blowup_total_chern(s)
    assert str(pushed.value.homogeneous_component(0)) == "1"


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: s.label)
def test_euler_identity_catalog(s):
    report = euler_identity_check(s)
    assert report.passed, report.to_text()
    assert report.parameters["label"] == s.label


@pytest.mark.parametrize("s", CATALOG, ids=lambda s: s.label)
def test_difflp_agreement_catalog(s):
    report = difflp_agreement_check(s)
    assert report.passed, report.to_text()


def test_simlem_agreement_small():
    report = simlem_agreement_check(2, cases=5, seed=7)
    assert report.passed, report.to_text()
    assert report.check == "simlem-vs-main"
    assert report.parameters["cases"] == 5
