import math

import pytest

from herdsim.environment import scenario_from_dict
from herdsim.errors import ConfigError
from herdsim.geom import Vec2
from herdsim.sim import (build_context, new_state, run, safety_snapshot, step)

from conftest import small_scenario_doc


def test_zero_dt_rejected():
    with pytest.raises(ConfigError):
        scenario_from_dict(small_scenario_doc(**{"integrator.dt_s": 0.0}))
    cfg = scenario_from_dict(small_scenario_doc())
    with pytest.raises(ConfigError):
        run(cfg, dt=-0.01)


def test_defenders_idle_outside_sensing_zone():
    doc = small_scenario_doc(**{"defenders.sensing_zone_radius_m": 5.0})
    cfg = scenario_from_dict(doc)  # attacker starts 20 m out, zone is 5 m
    state = new_state(cfg)
    starts = [d.position for d in state.defenders]
    step(state, cfg)
    assert all(d.position == s for d, s in zip(state.defenders, starts))
    assert all(d.goal == s for d, s in zip(state.defenders, starts))
    assert state.attacker.position != cfg.attacker.start
    assert state.t_sense is None


def test_defenders_act_inside_sensing_zone():
    cfg = scenario_from_dict(small_scenario_doc())
    state = new_state(cfg)
    starts = [d.position for d in state.defenders]
    step(state, cfg)
    assert state.t_sense == 0.0
    assert any(d.position != s for d, s in zip(state.defenders, starts))


def test_static_world_only_time_advances():
    # a speed-zero attacker outside the sensing zone moves nothing
    doc = small_scenario_doc(**{"attacker.speed_max_mps": 0.0,
                                "defenders.sensing_zone_radius_m": 5.0})
    cfg = scenario_from_dict(doc)
    state = new_state(cfg)
    before = (state.attacker.position, [d.position for d in state.defenders])
    step(state, cfg)
    assert state.attacker.position == before[0]
    assert [d.position for d in state.defenders] == before[1]
    assert state.t == pytest.approx(cfg.integrator.dt)


def test_run_deterministic():
    cfg = scenario_from_dict(small_scenario_doc(**{"integrator.t_max_s": 8.0}))
    a = run(cfg)
    b = run(cfg)
    assert a.rows == b.rows
    assert a.to_csv() == b.to_csv()
    assert a.events == b.events


def test_run_converges_under_refinement():
    cfg = scenario_from_dict(small_scenario_doc())
    coarse = run(cfg, t_max=5.0)
    fine = run(cfg, dt=0.005, t_max=5.0)
    ca, fa = coarse.rows[-1], fine.rows[-1]
    assert math.hypot(ca[1] - fa[1], ca[2] - fa[2]) < 0.05
    assert len(fine.rows) == 2 * len(coarse.rows) - 1


def test_unopposed_attacker_breaches():
    doc = small_scenario_doc()
    doc["defenders"]["start_m"] = []
    doc["defenders"]["speed_max_mps"] = []
    doc["attacker"]["start_m"] = [20.0, 48.0]
    cfg = scenario_from_dict(doc)
    trace = run(cfg, t_max=80.0)
    assert trace.termination == "breached"
    # straight-line run: hits the boundary of the protected disc just before
    # the center-arrival bound of 52 s
    assert 52.0 - 2.0 - 0.1 <= trace.events["t_breach_s"] <= 52.0


def test_attacker_starting_inside_safe_is_captured_immediately():
    doc = small_scenario_doc(**{"attacker.start_m": [0.0, 41.0]})
    cfg = scenario_from_dict(doc)
    trace = run(cfg)
    assert trace.events["t_capture_s"] == 0.0
    assert trace.termination == "captured-stable"
    assert trace.capture_held
    assert trace.t_end == pytest.approx(
        cfg.capture.dwell_factor * cfg.capture.transition_time, abs=0.011)


def test_snapshot_far_from_everything(reference_cfg):
    snap = safety_snapshot(Vec2(500.0, 500.0),
                           [Vec2(400.0, 400.0), Vec2(430.0, 400.0)], reference_cfg)
    assert snap.attacker_obstacle < 0.01
    assert snap.defender_obstacle < 0.01
    assert snap.attacker_defender < 0.01
    assert snap.defender_defender < 0.01


def test_snapshot_boundary_and_violation(reference_cfg):
    peer_min = reference_cfg.defenders.peer_band[0]
    snap = safety_snapshot(Vec2(500.0, 500.0),
                           [Vec2(400.0, 400.0), Vec2(400.0 + peer_min, 400.0)],
                           reference_cfg)
    assert snap.defender_defender == pytest.approx(1.0)
    # a defender inside an obstacle's base contour has nonpositive level
    inside = reference_cfg.obstacles[0].center
    snap = safety_snapshot(Vec2(500.0, 500.0), [inside, Vec2(400.0, 400.0)],
                           reference_cfg)
    assert snap.defender_obstacle == math.inf


def test_reference_run_events_ordered(reference_run):
    trace, _ = reference_run
    ev = trace.events
    assert ev["t_sense_s"] is not None
    assert ev["t_formed_s"] is not None
    assert ev["t_capture_s"] is not None
    assert ev["t_sense_s"] <= ev["t_formed_s"] <= ev["t_capture_s"]
    assert ev["t_breach_s"] is None


def test_reference_run_speed_bounds_every_step(reference_cfg, reference_run):
    trace, _ = reference_run
    n = trace.defender_count
    for row in trace.rows:
        assert math.hypot(row[3], row[4]) <= reference_cfg.attacker.speed_max + 1e-12
        for j in range(n):
            speed = math.hypot(row[9 + 6 * j], row[10 + 6 * j])
            assert speed <= reference_cfg.defenders.speed_max[j] + 1e-12


def test_reference_run_time_monotone(reference_run):
    trace, _ = reference_run
    ts = [row[0] for row in trace.rows]
    assert all(b > a for a, b in zip(ts, ts[1:]))


def test_csv_round_trip_shape(reference_run):
    trace, _ = reference_run
    csv = trace.to_csv()
    lines = csv.strip().split("\n")
    assert len(lines) == len(trace.rows) + 1
    assert len(lines[0].split(",")) == len(trace.columns)
    assert len(lines[1].split(",")) == len(trace.columns)


def test_lone_defender_rejected():
    doc = small_scenario_doc()
    doc["defenders"]["start_m"] = [[0.0, 5.0]]
    doc["defenders"]["speed_max_mps"] = [2.6]
    cfg = scenario_from_dict(doc)
    with pytest.raises(ConfigError):
        build_context(cfg)


def test_positions_move_only_through_velocity(reference_run):
    # no hidden state: every logged displacement is exactly velocity * dt
    trace, _ = reference_run
    dt = trace.dt
    for prev, cur in zip(trace.rows[:-1], trace.rows[1:]):
        assert cur[1] == pytest.approx(prev[1] + prev[3] * dt, abs=1e-12)
        assert cur[2] == pytest.approx(prev[2] + prev[4] * dt, abs=1e-12)
        for j in range(trace.defender_count):
            assert cur[7 + 6 * j] == pytest.approx(
                prev[7 + 6 * j] + prev[9 + 6 * j] * dt, abs=1e-12)
            assert cur[8 + 6 * j] == pytest.approx(
                prev[8 + 6 * j] + prev[10 + 6 * j] * dt, abs=1e-12)


def test_desired_heading_mostly_continuous(reference_run):
    # smooth within phases; isolated jumps (watershed, capture ramp joins)
    # are expected but must stay rare
    trace, _ = reference_run
    headings = [row[5] for row in trace.rows]
    jumps = sum(1 for a, b in zip(headings, headings[1:])
                if abs(math.remainder(b - a, 2.0 * math.pi)) > 0.5)
    assert jumps < 0.01 * len(headings)


def test_non_finite_state_raises():
    from herdsim.attacker import AttackerState
    from herdsim.errors import IntegrityError
    from herdsim.sim import apply_commands
    cfg = scenario_from_dict(small_scenario_doc())
    state = new_state(cfg)
    bad = AttackerState(position=Vec2(math.nan, 0.0), heading=0.0, speed=1.0)
    with pytest.raises(IntegrityError) as exc:
        apply_commands(state, bad, cfg.integrator.dt)
    assert "t=" in str(exc.value)
    assert exc.value.dump["defenders"]
