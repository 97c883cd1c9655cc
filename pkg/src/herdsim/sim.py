"""Fixed-step closed-loop engine.

Explicit Euler with a fixed step: the fields involved are only piecewise
smooth (watershed rays, deadlock escape, conflict switching), so a high-order
integrator would buy accuracy it cannot keep; determinism and simplicity win.
Every per-step quantity is computed from the step-start snapshot and all
position updates are applied together at the end of the step.

Step order: sense -> plan (guidance field, heading schedule, arc command,
slots) -> attacker policy -> defender tracking -> synchronous Euler update ->
safety snapshot.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Optional

from .attacker import AttackerState, attacker_field, attacker_step
from .defender_control import (TrackingGains, defender_field, defender_velocity,
                               solve_tracking_gains)
from .environment import ScenarioConfig, superelliptic_distance
from .errors import ConfigError, IntegrityError
from .formation_field import combined_field
from .geom import Vec2, angle_of, dist
from .herding import (FormationSpec, HeadingState, formation_goals, formation_spec,
                      heading_rate, obstacle_resultant, schedule_heading,
                      solve_command_heading)

log = logging.getLogger("herdsim.sim")

TERM_CAPTURED = "captured-stable"
TERM_TIMEOUT = "t-max"
TERM_BREACHED = "breached"


@dataclass
class DefenderState:
    position: Vec2
    velocity: Vec2
    goal: Vec2
    goal_velocity: Vec2
    in_conflict: bool = False


@dataclass
class SimState:
    t: float
    attacker: AttackerState
    attacker_velocity: Vec2          # velocity commanded for the current step
    defenders: list[DefenderState]
    heading: HeadingState
    sensed: bool = False
    t_sense: Optional[float] = None
    t_formed: Optional[float] = None
    t_breach: Optional[float] = None
    capture_broken: bool = False

    @property
    def t_capture(self) -> Optional[float]:
        return self.heading.entered_safe_at


@dataclass(frozen=True)
class SafetySnapshot:
    """Threshold-over-actual distance ratios; any value >= 1 is a violation."""

    attacker_obstacle: float
    defender_obstacle: float
    defender_defender: float
    attacker_defender: float

    def worst(self) -> float:
        return max(self.attacker_obstacle, self.defender_obstacle,
                   self.defender_defender, self.attacker_defender)


@dataclass
class RunContext:
    """Quantities derived once per run."""

    spec: Optional[FormationSpec]
    gains: tuple[TrackingGains, ...]
    standoff: object
    peers: object


@dataclass
class SimTrace:
    """Time-indexed log of one closed-loop run."""

    dt: float
    defender_count: int
    columns: tuple[str, ...]
    rows: list = field(default_factory=list)
    events: dict = field(default_factory=dict)
    maxima: dict = field(default_factory=dict)
    termination: str = ""
    captured: bool = False
    capture_held: bool = False

    @property
    def t_end(self) -> float:
        return self.rows[-1][0] if self.rows else 0.0

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(repr(v) for v in row))
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "events": self.events,
            "maxima": self.maxima,
            "termination": self.termination,
            "captured": self.captured,
            "capture_held": self.capture_held,
            "t_end": self.t_end,
            "steps": len(self.rows) - 1 if self.rows else 0,
            "dt_s": self.dt,
            "defenders": self.defender_count,
        }


def _trace_columns(n_defenders: int) -> tuple[str, ...]:
    cols = ["t_s", "attacker_x_m", "attacker_y_m", "attacker_vx_mps",
            "attacker_vy_mps", "heading_desired_rad", "heading_cmd_rad"]
    for j in range(n_defenders):
        cols += [f"d{j}_x_m", f"d{j}_y_m", f"d{j}_vx_mps", f"d{j}_vy_mps",
                 f"d{j}_goal_x_m", f"d{j}_goal_y_m"]
    cols += ["ratio_attacker_obstacle", "ratio_defender_obstacle",
             "ratio_defender_defender", "ratio_attacker_defender"]
    return tuple(cols)


def build_context(cfg: ScenarioConfig) -> RunContext:
    n = cfg.defenders.count
    spec = None
    gains = ()
    if n >= 2:
        spec = formation_spec(n, cfg.formation.spread, cfg.formation.arc_radius,
                              cfg.attacker.standoff_band[0], cfg.defenders.peer_band[0])
        gains = tuple(
            solve_tracking_gains(cfg.control.terminal_exponent, vmax,
                                 cfg.attacker.speed_max, cfg.formation.arc_radius,
                                 cfg.control.heading_rate_max, tol=cfg.solver.tolerance)
            for vmax in cfg.defenders.speed_max)
    elif n == 1:
        raise ConfigError("a lone defender cannot form an arc; use 0 or >= 2")
    return RunContext(spec=spec, gains=gains,
                      standoff=cfg.attacker.standoff_triplet() if n else None,
                      peers=cfg.defenders.peer_triplet() if n else None)


def new_state(cfg: ScenarioConfig) -> SimState:
    return SimState(
        t=0.0,
        attacker=AttackerState(position=cfg.attacker.start, heading=0.0,
                               speed=cfg.attacker.speed_max),
        attacker_velocity=Vec2(0.0, 0.0),
        defenders=[DefenderState(position=p, velocity=Vec2(0.0, 0.0),
                                 goal=p, goal_velocity=Vec2(0.0, 0.0))
                   for p in cfg.defenders.starts],
        heading=HeadingState(),
    )


def safety_snapshot(attacker_pos: Vec2, defender_positions, cfg: ScenarioConfig) -> SafetySnapshot:
    """Evaluate the four critical relative distances at given positions.

    A nonpositive actual distance (already inside a forbidden region) maps to
    +inf.  With nothing in the world a ratio is 0 by convention.
    """

    def ratio(threshold, actual):
        if actual <= 0.0:
            return math.inf
        return threshold / actual

    r_ao = 0.0
    r_do = 0.0
    for ob in cfg.obstacles:
        r_ao = max(r_ao, ratio(ob.formation_band.lo,
                               superelliptic_distance(attacker_pos, ob)))
        for p in defender_positions:
            r_do = max(r_do, ratio(ob.defender_band.lo, superelliptic_distance(p, ob)))

    r_dd = 0.0
    peer_min = cfg.defenders.peer_band[0]
    n = len(defender_positions)
    for j in range(n):
        for l in range(j + 1, n):
            r_dd = max(r_dd, ratio(peer_min, dist(defender_positions[j],
                                                  defender_positions[l])))

    r_ad = 0.0
    standoff_min = cfg.attacker.standoff_band[0]
    for p in defender_positions:
        r_ad = max(r_ad, ratio(standoff_min, dist(attacker_pos, p)))

    return SafetySnapshot(attacker_obstacle=r_ao, defender_obstacle=r_do,
                          defender_defender=r_dd, attacker_defender=r_ad)


def _plan(state: SimState, cfg: ScenarioConfig, ctx: RunContext) -> None:
    """Guidance for this step: desired heading, arc command, slot targets."""
    hs = state.heading
    r_a = state.attacker.position
    sample = combined_field(r_a, cfg.obstacles, cfg.safe.center)
    field_angle = angle_of(sample.direction)
    inside = dist(r_a, cfg.safe.center) <= cfg.safe.radius
    desired = schedule_heading(field_angle, state.t, inside, hs,
                               cfg.capture.transition_time, cfg.capture.tangent_margin)
    mag, gamma = obstacle_resultant(r_a, cfg.obstacles, cfg.attacker.sensing_radius)
    command = solve_command_heading(desired, mag, gamma, ctx.spec.arc_magnitude)
    if hs._prev_command is None:
        rate = 0.0
    else:
        rate = heading_rate([hs._prev_command, command], cfg.integrator.dt,
                            cfg.control.heading_rate_max)
    hs.command = command
    hs.command_rate = rate
    hs._prev_command = command
    goals = formation_goals(r_a, state.attacker_velocity, command, rate, ctx.spec)
    for d, (gp, gv) in zip(state.defenders, goals):
        d.goal = gp
        d.goal_velocity = gv


def compute_commands(state: SimState, cfg: ScenarioConfig, ctx: RunContext) -> AttackerState:
    """Fill every command for the current step from the step-start snapshot.

    Returns the attacker's next state (not yet applied); defender velocities,
    goals, and the heading state are written into `state` directly.
    """
    r_a = state.attacker.position
    state.sensed = dist(r_a, cfg.protected.center) <= cfg.defenders.sensing_zone_radius
    if state.sensed and state.t_sense is None:
        state.t_sense = state.t

    planning = state.sensed and ctx.spec is not None
    if planning:
        _plan(state, cfg, ctx)
    else:
        for d in state.defenders:
            d.goal = d.position
            d.goal_velocity = Vec2(0.0, 0.0)

    positions = [d.position for d in state.defenders]
    a_field = attacker_field(r_a, positions, cfg.obstacles, cfg.protected.center,
                             cfg.attacker.sensing_radius, ctx.standoff)
    next_attacker = attacker_step(state.attacker, a_field,
                                  cfg.attacker.deadlock_turn, cfg.integrator.dt)
    state.attacker_velocity = Vec2(state.attacker.speed * math.cos(next_attacker.heading),
                                   state.attacker.speed * math.sin(next_attacker.heading))

    if planning:
        for j, d in enumerate(state.defenders):
            f, conflict = defender_field(j, positions, d.goal, cfg.obstacles, ctx.peers)
            d.in_conflict = conflict
            d.velocity = defender_velocity(d.position, d.goal, d.goal_velocity,
                                           f, conflict, ctx.gains[j])
    else:
        for d in state.defenders:
            d.in_conflict = False
            d.velocity = Vec2(0.0, 0.0)
    return next_attacker


def apply_commands(state: SimState, next_attacker: AttackerState, dt: float) -> None:
    """Synchronous Euler update of every agent, with an integrity check."""
    state.attacker = next_attacker
    for d in state.defenders:
        d.position = Vec2(d.position.x + d.velocity.x * dt,
                          d.position.y + d.velocity.y * dt)
    if not state.attacker.position.is_finite() or \
            any(not d.position.is_finite() for d in state.defenders):
        raise IntegrityError(
            f"non-finite state at t={state.t}",
            dump={"t": state.t,
                  "attacker": tuple(state.attacker.position),
                  "defenders": [tuple(d.position) for d in state.defenders]})


def step(state: SimState, cfg: ScenarioConfig, ctx: Optional[RunContext] = None) -> SimState:
    """Advance the world by one step (compute, then apply), in place."""
    if ctx is None:
        ctx = build_context(cfg)
    next_attacker = compute_commands(state, cfg, ctx)
    apply_commands(state, next_attacker, cfg.integrator.dt)
    state.t += cfg.integrator.dt
    return state


def run(cfg: ScenarioConfig, dt: Optional[float] = None,
        t_max: Optional[float] = None) -> SimTrace:
    """Run the closed loop until capture holds through the dwell window, the
    protected area is breached, or the time budget runs out.

    Deterministic: identical configurations produce identical traces.
    """
    if dt is not None or t_max is not None:
        integ = dataclasses.replace(cfg.integrator,
                                    **({"dt": dt} if dt is not None else {}),
                                    **({"t_max": t_max} if t_max is not None else {}))
        if integ.dt <= 0.0 or integ.t_max <= 0.0:
            raise ConfigError("dt and t_max overrides must be positive")
        cfg = dataclasses.replace(cfg, integrator=integ)

    ctx = build_context(cfg)
    state = new_state(cfg)
    n = cfg.defenders.count
    trace = SimTrace(dt=cfg.integrator.dt, defender_count=n,
                     columns=_trace_columns(n))
    n_steps = round(cfg.integrator.t_max / cfg.integrator.dt)
    dwell = cfg.capture.dwell_factor * cfg.capture.transition_time

    max_ratios = [0.0, 0.0, 0.0, 0.0]
    max_def_speed = [0.0] * n
    max_att_speed = 0.0
    goal_tol = cfg.formation.goal_tolerance

    for i in range(n_steps + 1):
        state.t = i * cfg.integrator.dt
        r_a = state.attacker.position

        if state.t_capture is not None and not state.capture_broken:
            if dist(r_a, cfg.safe.center) > cfg.safe.radius:
                state.capture_broken = True
                log.warning("attacker left the safe area at t=%.3f", state.t)
        if state.t_breach is None and cfg.protected.contains(r_a):
            state.t_breach = state.t

        terminal = None
        if state.t_breach is not None:
            terminal = TERM_BREACHED
        elif (state.t_capture is not None and not state.capture_broken
              and state.t - state.t_capture >= dwell):
            terminal = TERM_CAPTURED
        elif i == n_steps:
            terminal = TERM_TIMEOUT

        if terminal is None:
            next_attacker = compute_commands(state, cfg, ctx)
        else:
            state.attacker_velocity = Vec2(0.0, 0.0)
            for d in state.defenders:
                d.velocity = Vec2(0.0, 0.0)

        positions = [d.position for d in state.defenders]
        snap = safety_snapshot(r_a, positions, cfg)
        row = [state.t, r_a.x, r_a.y,
               state.attacker_velocity.x, state.attacker_velocity.y,
               state.heading.desired, state.heading.command]
        for d in state.defenders:
            row += [d.position.x, d.position.y, d.velocity.x, d.velocity.y,
                    d.goal.x, d.goal.y]
        row += [snap.attacker_obstacle, snap.defender_obstacle,
                snap.defender_defender, snap.attacker_defender]
        trace.rows.append(tuple(row))

        max_ratios[0] = max(max_ratios[0], snap.attacker_obstacle)
        max_ratios[1] = max(max_ratios[1], snap.defender_obstacle)
        max_ratios[2] = max(max_ratios[2], snap.defender_defender)
        max_ratios[3] = max(max_ratios[3], snap.attacker_defender)
        max_att_speed = max(max_att_speed, state.attacker_velocity.norm())
        for j, d in enumerate(state.defenders):
            max_def_speed[j] = max(max_def_speed[j], d.velocity.norm())

        if (state.t_formed is None and state.sensed and ctx.spec is not None
                and all(dist(d.position, d.goal) <= goal_tol for d in state.defenders)):
            state.t_formed = state.t

        if terminal is not None:
            trace.termination = terminal
            break
        apply_commands(state, next_attacker, cfg.integrator.dt)

    trace.captured = state.t_capture is not None
    trace.capture_held = trace.captured and not state.capture_broken
    trace.events = {
        "t_sense_s": state.t_sense,
        "t_formed_s": state.t_formed,
        "t_capture_s": state.t_capture,
        "t_breach_s": state.t_breach,
    }
    trace.maxima = {
        "ratio_attacker_obstacle": max_ratios[0],
        "ratio_defender_obstacle": max_ratios[1],
        "ratio_defender_defender": max_ratios[2],
        "ratio_attacker_defender": max_ratios[3],
        "attacker_speed_mps": max_att_speed,
        "defender_speed_mps": max_def_speed,
    }
    return trace
