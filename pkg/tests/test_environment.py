import math

import numpy as np
import pytest

from herdsim.environment import (contour_tangent_angle, corner_level,
                                 derive_obstacle, min_spread,
                                 scenario_from_dict, scenario_warnings,
                                 solve_shape_exponent, superelliptic_distance,
                                 validate_scenario)
from herdsim.errors import ConfigError, DomainError
from herdsim.geom import Vec2

from conftest import REFERENCE_OBSTACLES, small_scenario_doc


def bisect_exponent_oracle(w, h, iw, ih):
    """Independent root finder for the coupled exponent/corner-level pair."""
    def level(n):
        return 0.5 * ((iw / w) ** (2 * n) + (ih / h) ** (2 * n)) - 1.0

    def g(n):
        return n - 1.0 / (1.0 - math.exp(-level(n)))

    lo, hi = 1.0 + 1e-9, 50.0
    assert g(lo) < 0.0 < g(hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    n = 0.5 * (lo + hi)
    return n, level(n)


# frozen from the bisection oracle above, run to 1e-14 before the build
ORACLE_N = 1.10981029497268
ORACLE_LEVEL = 2.3131900884547


def test_solver_matches_frozen_oracle():
    n, lvl = solve_shape_exponent(2.0, 3.0, 3.7, 4.7)
    assert n == pytest.approx(ORACLE_N, abs=1e-9)
    assert lvl == pytest.approx(ORACLE_LEVEL, abs=1e-9)


def test_solver_matches_oracle_on_random_rectangles():
    # side/inflation ranges keep the corner level moderate; past ~30 the
    # exponent sits within machine epsilon of its lower limit and float
    # comparisons against an oracle stop being meaningful
    rng = np.random.default_rng(7)
    for _ in range(25):
        w, h = rng.uniform(1.0, 8.0, size=2)
        iw = w + 2.0 * rng.uniform(0.2, 1.2)
        ih = h + 2.0 * rng.uniform(0.2, 1.2)
        n, lvl = solve_shape_exponent(w, h, iw, ih)
        n_ref, lvl_ref = bisect_exponent_oracle(w, h, iw, ih)
        assert n == pytest.approx(n_ref, abs=1e-8)
        assert lvl == pytest.approx(lvl_ref, rel=1e-8)
        assert n > 1.0
        assert lvl > 0.0
        # both defining relations hold
        assert abs(n - 1.0 / (1.0 - math.exp(-lvl))) < 1e-9
        assert abs(0.5 * ((iw / w) ** (2 * n) + (ih / h) ** (2 * n)) - 1.0 - lvl) < 1e-9


def test_solver_rejects_non_inflated():
    with pytest.raises(ConfigError):
        solve_shape_exponent(2.0, 3.0, 2.0, 4.0)


def test_superelliptic_distance_landmarks(derivation):
    ob = derive_obstacle(Vec2(1.0, -2.0), 2.0, 3.0, derivation)
    assert superelliptic_distance(ob.center, ob) == -1.0
    assert superelliptic_distance(Vec2(ob.center.x + ob.semi_x, ob.center.y), ob) \
        == pytest.approx(0.0, abs=1e-12)
    corner = Vec2(ob.center.x + ob.formation_width / 2.0,
                  ob.center.y + ob.formation_height / 2.0)
    assert superelliptic_distance(corner, ob) == pytest.approx(ob.formation_band.lo, abs=1e-9)


def test_levels_nest_along_rays(derivation):
    ob = derive_obstacle(Vec2(0.0, 0.0), 3.0, 4.0, derivation)
    rng = np.random.default_rng(3)
    for _ in range(50):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        u = Vec2(math.cos(theta), math.sin(theta))
        radii = np.sort(rng.uniform(0.05, 12.0, size=4))
        levels = [superelliptic_distance(Vec2(r * u.x, r * u.y), ob) for r in radii]
        assert all(a < b for a, b in zip(levels, levels[1:]))


def test_all_inflated_corners_on_lo_contour(derivation):
    ob = derive_obstacle(Vec2(-3.0, 7.0), 2.0, 3.0, derivation)
    for sx in (-1.0, 1.0):
        for sy in (-1.0, 1.0):
            corner = Vec2(ob.center.x + sx * ob.formation_width / 2.0,
                          ob.center.y + sy * ob.formation_height / 2.0)
            assert superelliptic_distance(corner, ob) == \
                pytest.approx(ob.formation_band.lo, abs=1e-9)


def test_tangent_square_diagonal(derivation):
    ob = derive_obstacle(Vec2(0.0, 0.0), 2.0, 2.0, derivation)
    assert math.tan(contour_tangent_angle(Vec2(1.0, 1.0), ob)) == pytest.approx(-1.0)


def test_tangent_axis_limits(derivation):
    ob = derive_obstacle(Vec2(0.0, 0.0), 2.0, 3.0, derivation)
    # vertical tangent approaching the x axis, horizontal on the y axis
    assert abs(contour_tangent_angle(Vec2(4.0, 1e-13), ob)) == pytest.approx(math.pi / 2.0, abs=1e-9)
    assert abs(contour_tangent_angle(Vec2(0.0, 4.0), ob)) == pytest.approx(math.pi, abs=1e-9)


def test_tangent_rejects_center(derivation):
    ob = derive_obstacle(Vec2(0.0, 0.0), 2.0, 2.0, derivation)
    with pytest.raises(DomainError):
        contour_tangent_angle(ob.center, ob)


def test_derive_obstacle_footprint(derivation):
    # defender radius 0.1, arc radius 0.55, clearance 0.2 -> side + 1.7
    ob = derive_obstacle(Vec2(0.0, 0.0), 2.0, 3.0, derivation)
    assert ob.formation_width == pytest.approx(3.7)
    assert ob.formation_height == pytest.approx(4.7)
    assert ob.defender_width == pytest.approx(2.4)
    assert ob.defender_band.lo < ob.formation_band.lo
    assert ob.defender_band.lo > 0.0
    assert ob.attacker_band.lo == pytest.approx(math.hypot(3.7, 4.7))


def test_derive_obstacle_deterministic(derivation):
    a = derive_obstacle(Vec2(2.0, 5.0), 3.0, 4.0, derivation)
    b = derive_obstacle(Vec2(2.0, 5.0), 3.0, 4.0, derivation)
    assert a == b


def test_min_spread_example():
    assert min_spread(3, 0.3, 0.3) == pytest.approx(2.0 * math.pi / 3.0)


def test_validate_clean_bundle(reference_cfg):
    assert validate_scenario(reference_cfg) == []
    assert scenario_warnings(reference_cfg) == []


def test_validate_coincident_obstacles():
    doc = small_scenario_doc()
    doc["obstacles"] = [
        {"center_m": [0.0, 20.0], "width_m": 2.0, "height_m": 2.0},
        {"center_m": [0.0, 20.0], "width_m": 2.0, "height_m": 2.0},
    ]
    doc["attacker"]["start_m"] = [0.0, 35.0]
    cfg = scenario_from_dict(doc)
    v = validate_scenario(cfg)
    assert any(s.startswith("shell-overlap") for s in v)
    assert any(s.startswith("obstacle-spacing") for s in v)


def test_validate_clearance_violation():
    cfg = scenario_from_dict(small_scenario_doc(**{"formation.clearance_m": 0.1}))
    v = validate_scenario(cfg)
    assert any(s.startswith("clearance") for s in v)


def test_validate_inconsistent_reference_parameters():
    """A deliberately inconsistent parameter set: the saturated standoff
    radius implied by the arc geometry exceeds the given outer radius, and
    with default circle factors three obstacle pairs sit too close for their
    circular stand-ins.  Expected set frozen from an independent pre-build
    check."""
    doc = small_scenario_doc()
    doc["obstacles"] = [{"center_m": [x, y], "width_m": w, "height_m": h}
                        for x, y, w, h in REFERENCE_OBSTACLES]
    doc["attacker"]["start_m"] = [20.0, 48.0]
    doc["attacker"]["defender_standoff_band_m"] = [0.3, 0.8, 0.65]
    doc["safe_area"] = {"center_m": [-5.0, 60.0], "radius_m": 5.0}
    doc["defenders"]["start_m"] = [[-10.0, 16.0], [6.0, 2.0], [-5.0, -1.0]]
    del doc["obstacle_model"]["attacker_circle_factors"]
    doc["capture"]["transition_time_s"] = 4.6
    cfg = scenario_from_dict(doc)
    v = validate_scenario(cfg)
    assert any(s.startswith("standoff-triplet") for s in v)
    spacing = sorted(s.split(":")[1].split("but")[0] for s in v
                     if s.startswith("obstacle-spacing"))
    assert len(spacing) == 3
    joined = " | ".join(spacing)
    for pair in ("obstacles 0 and 1", "obstacles 3 and 4", "obstacles 3 and 5"):
        assert pair in joined


def test_validate_speed_order():
    cfg = scenario_from_dict(small_scenario_doc(**{"attacker.speed_max_mps": 3.0}))
    assert any(s.startswith("speed-order") for s in validate_scenario(cfg))


def test_validate_safe_radius_bound():
    cfg = scenario_from_dict(small_scenario_doc(**{"capture.transition_time_s": 30.0}))
    assert any(s.startswith("safe-radius") for s in validate_scenario(cfg))


def test_peer_band_default_expansion():
    doc = small_scenario_doc(**{"defenders.peer_separation_band_m": [0.2]})
    cfg = scenario_from_dict(doc)
    assert cfg.defenders.peer_band == pytest.approx((0.2, 0.3, 0.4))


def test_arc_radius_midpoint_warning():
    doc = small_scenario_doc(**{"formation.arc_radius_m": 0.5})
    w = scenario_warnings(scenario_from_dict(doc))
    assert any(s.startswith("arc-radius-midpoint") for s in w)


def test_corner_level_helper():
    n = 1.25
    lvl = corner_level(2.0, 3.0, 3.0, 4.0, n)
    assert lvl == pytest.approx(0.5 * (1.5 ** 2.5 + (4 / 3) ** 2.5) - 1.0)


@pytest.mark.parametrize("dotted,value", [
    ("formation.arc_radius_m", 0.0),
    ("attacker.body_radius_m", 0.0),
    ("defenders.body_radius_m", -0.1),
    ("defenders.speed_max_mps", 0.0),
])
def test_degenerate_scalars_rejected_at_load(dotted, value):
    with pytest.raises(ConfigError):
        scenario_from_dict(small_scenario_doc(**{dotted: value}))
