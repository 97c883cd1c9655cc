"""Formation geometry and heading resolution.

The defenders sit on a circular arc behind the attacker.  Because each one
repels the attacker with a unit vector, the whole arc acts like a single
pusher of fixed magnitude along the arc axis.  Given the desired direction of
travel and the summed obstacle repulsion felt by the attacker, the arc axis is
rotated just enough that the total field seen by the attacker lines up with
the desired direction.  A time schedule retargets that desired direction once
the attacker is inside the safe area, swinging it to nearly perpendicular so
the attacker orbits instead of escaping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .environment import Obstacle, arc_magnitude, min_spread
from .errors import ConfigError, InfeasibleHeadingError
from .geom import Vec2, blend_weight, wrap_angle

PHASE_APPROACH = "approach"
PHASE_TRANSITION = "transition"
PHASE_CAPTURED = "captured"


@dataclass(frozen=True)
class FormationSpec:
    """Static geometry of the defender arc."""

    count: int
    spread: float                    # total angular spread (rad)
    arc_radius: float                # distance of each slot from the attacker
    offsets: tuple[float, ...]       # symmetric slot offsets along the arc
    arc_magnitude: float             # norm of the summed unit repulsions


def formation_spec(count: int, spread: float, arc_radius: float,
                   standoff_min: float, peer_min: float) -> FormationSpec:
    """Build the arc geometry, rejecting spreads too tight for safe slots."""
    if count < 2:
        raise ConfigError(f"a formation needs at least 2 defenders, got {count}")
    needed = min_spread(count, standoff_min, peer_min)
    if spread < needed:
        raise ConfigError(
            f"spread {spread} rad is below the minimum {needed:.6f} rad "
            f"for {count} defenders")
    offsets = tuple(spread * (2 * j - count - 1) / (2 * count - 2)
                    for j in range(1, count + 1))
    return FormationSpec(count=count, spread=spread, arc_radius=arc_radius,
                         offsets=offsets, arc_magnitude=arc_magnitude(count, spread))


def obstacle_resultant(position: Vec2, obstacles: Sequence[Obstacle],
                       sensing_radius: float) -> tuple[float, float]:
    """Polar form (magnitude, angle) of the summed circular-model repulsion
    the attacker feels at this position; (0, 0) when nothing is in range."""
    rx = 0.0
    ry = 0.0
    for ob in obstacles:
        dx = position.x - ob.center.x
        dy = position.y - ob.center.y
        d = math.hypot(dx, dy)
        if d > sensing_radius or d == 0.0:
            continue
        sigma = blend_weight(d, ob.attacker_band)
        if sigma <= 0.0:
            continue
        rx += sigma * dx / d
        ry += sigma * dy / d
    mag = math.hypot(rx, ry)
    if mag == 0.0:
        return 0.0, 0.0
    return mag, math.atan2(ry, rx)


def solve_command_heading(desired: float, resultant_mag: float,
                          resultant_angle: float, magnitude: float) -> float:
    """Arc-axis angle that makes the attacker's total field point along
    `desired` despite the obstacle resultant.

    Principal arcsine branch: continuous with the unperturbed command as the
    obstacle resultant fades.  Requires the arc magnitude to dominate the
    resultant, otherwise no command can cancel it.
    """
    if not magnitude > resultant_mag:
        raise InfeasibleHeadingError(
            f"arc magnitude {magnitude} cannot dominate obstacle resultant "
            f"{resultant_mag}")
    ratio = (resultant_mag / magnitude) * math.sin(desired - resultant_angle)
    return wrap_angle(desired + math.asin(ratio))


def heading_rate(history: Sequence[float], dt: float, limit: float) -> float:
    """Backward finite difference of the command heading, unwrapped across
    the circle seam and clamped to the configured rate limit."""
    if len(history) < 2:
        return 0.0
    raw = wrap_angle(history[-1] - history[-2]) / dt
    return max(-limit, min(limit, raw))


def heading_rate_closed_form(desired: float, desired_rate: float, command: float,
                             resultant_mag: float, resultant_mag_rate: float,
                             resultant_angle: float, resultant_angle_rate: float,
                             magnitude: float) -> float:
    """Exact command-heading rate from the differentiated alignment equation.

    Needs rates the planner cannot measure directly; kept as a cross-check
    for the finite-difference path.  Undefined at desired = +-pi/2 where the
    tangent blows up.
    """
    t = math.tan(desired)
    sec2 = 1.0 / math.cos(desired) ** 2
    cg, sg = math.cos(resultant_angle), math.sin(resultant_angle)
    cc, sc = math.cos(command), math.sin(command)
    denom = magnitude * (cc + t * sc)
    num = (resultant_mag_rate * (t * cg - sg)
           - resultant_mag * resultant_angle_rate * (t * sg + cg)
           + sec2 * desired_rate * (resultant_mag * cg + magnitude * cc))
    return num / denom


@dataclass
class HeadingState:
    """Planner memory: last desired/command headings and the capture clock."""

    desired: float = 0.0
    command: float = 0.0
    command_rate: float = 0.0
    phase: str = PHASE_APPROACH
    entered_safe_at: Optional[float] = None
    _prev_command: Optional[float] = None


def schedule_heading(field_angle: float, t: float, inside_safe: bool,
                     state: HeadingState, transition_time: float,
                     tangent_margin: float) -> float:
    """Desired herd direction for this instant.

    Before capture it is the guidance-field direction itself; once the
    attacker first enters the safe area the direction ramps linearly over the
    transition window to nearly perpendicular and stays there, turning the
    safe area into an orbit the attacker cannot leave.
    """
    if state.entered_safe_at is None and inside_safe:
        state.entered_safe_at = t
    if state.entered_safe_at is None:
        state.phase = PHASE_APPROACH
        offset = 0.0
    elif t <= state.entered_safe_at + transition_time:
        state.phase = PHASE_TRANSITION
        offset = (t - state.entered_safe_at) * (math.pi / 2.0 - tangent_margin) / transition_time
    else:
        state.phase = PHASE_CAPTURED
        offset = math.pi / 2.0 - tangent_margin
    state.desired = wrap_angle(field_angle + offset)
    return state.desired


def formation_goals(attacker_pos: Vec2, attacker_vel: Vec2, command: float,
                    command_rate: float, spec: FormationSpec):
    """Slot positions and feedforward velocities on the arc.

    Slots ride the circle of the arc radius around the attacker, centered on
    the direction opposite the command heading; their velocities combine the
    attacker's motion with the arc rotation.
    """
    goals = []
    r = spec.arc_radius
    for off in spec.offsets:
        a = command + math.pi + off
        c, s = math.cos(a), math.sin(a)
        goals.append((
            Vec2(attacker_pos.x + r * c, attacker_pos.y + r * s),
            Vec2(attacker_vel.x - r * command_rate * s,
                 attacker_vel.y + r * command_rate * c),
        ))
    return goals
