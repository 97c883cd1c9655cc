"""Per-defender steering field and the finite-time tracking law.

Each defender blends attraction to its formation slot with obstacle-following
repulsion (the same construction as the formation guidance field, with the
slot standing in for the safe center and the tighter single-defender shells)
and radial repulsion from its peers.  Speed along that field follows a
two-regime law: a saturating tanh profile far from the slot and a fractional
power law near it.  The power law reaches zero error in finite time; the
handoff error and near-goal gain are solved so speed and its slope are both
continuous at the switch.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from .environment import Obstacle, superelliptic_distance
from .errors import ConfigError, DomainError, SolverError
from .formation_field import repulsive_angle
from .geom import BlendTriplet, Vec2, blend_weight

log = logging.getLogger("herdsim.defender")

FIELD_TOL = 1e-12


@dataclass(frozen=True)
class TrackingGains:
    approach_speed: float      # far-field speed scale (m/s)
    terminal_gain: float       # near-goal power-law gain
    terminal_exponent: float   # power-law exponent, in (0, 1)
    handoff_error: float       # error magnitude where the two regimes join (m)


def solve_tracking_gains(terminal_exponent: float, speed_max: float,
                         attacker_speed_max: float, arc_radius: float,
                         heading_rate_max: float, tol: float = 1e-12) -> TrackingGains:
    """Derive the tracking gains from the speed budget.

    The far-field speed scale is what remains of the defender's speed after
    reserving enough to ride a slot that translates with the attacker and
    rotates with the commanded heading.  The handoff error solves

        1 - tanh(e)^2 = exponent * tanh(e) / e

    by bisection on (0, 10]; the left side starts above the right and decays
    exponentially while the right decays only like 1/e, so the root exists
    and is unique there.
    """
    if not (0.0 < terminal_exponent < 1.0):
        raise ConfigError(f"terminal exponent must lie in (0, 1), got {terminal_exponent}")
    approach = speed_max - attacker_speed_max - arc_radius * heading_rate_max
    if approach <= 0.0:
        raise ConfigError(
            f"speed budget exhausted: {speed_max} - {attacker_speed_max} - "
            f"{arc_radius}*{heading_rate_max} = {approach} <= 0")

    def residual(e):
        th = math.tanh(e)
        return (1.0 - th * th) - terminal_exponent * th / e

    lo, hi = 1e-9, 10.0
    if not (residual(lo) > 0.0 > residual(hi)):
        raise SolverError("handoff-error bisection failed to bracket a sign change")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if residual(mid) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol * 1e-3:
            break
    handoff = 0.5 * (lo + hi)
    if abs(residual(handoff)) > max(tol, 1e-12) * 10.0:
        raise SolverError(f"handoff-error residual {residual(handoff)} above tolerance")
    gain = approach * math.tanh(handoff) / handoff ** terminal_exponent
    return TrackingGains(approach_speed=approach, terminal_gain=gain,
                         terminal_exponent=terminal_exponent, handoff_error=handoff)


def defender_field(index: int, positions: Sequence[Vec2], goal: Vec2,
                   obstacles: Sequence[Obstacle],
                   peer_band: BlendTriplet) -> tuple[Vec2, bool]:
    """Blended steering field for one defender plus its conflict flag.

    Conflict means any obstacle or peer blending weight is nonzero; in that
    regime the tracking law drops the slot-velocity feedforward and just
    follows the field.
    """
    p = positions[index]
    prod = 1.0
    rx = 0.0
    ry = 0.0
    conflict = False

    for ob in obstacles:
        sigma = blend_weight(superelliptic_distance(p, ob), ob.defender_band)
        if sigma <= 0.0:
            continue
        conflict = True
        prod *= 1.0 - sigma
        phi = repulsive_angle(p, ob, goal)
        rx += sigma * math.cos(phi)
        ry += sigma * math.sin(phi)

    for l, other in enumerate(positions):
        if l == index:
            continue
        dx = p.x - other.x
        dy = p.y - other.y
        d = math.hypot(dx, dy)
        if d == 0.0:
            raise DomainError(f"defenders {index} and {l} coincide")
        sigma = blend_weight(d, peer_band)
        if sigma <= 0.0:
            continue
        conflict = True
        prod *= 1.0 - sigma
        rx += sigma * dx / d
        ry += sigma * dy / d

    gx = goal.x - p.x
    gy = goal.y - p.y
    g = math.hypot(gx, gy)
    if g > 0.0:
        rx += prod * gx / g
        ry += prod * gy / g
    return Vec2(rx, ry), conflict


def defender_velocity(position: Vec2, goal: Vec2, goal_velocity: Vec2,
                      field: Vec2, conflict: bool, gains: TrackingGains) -> Vec2:
    """Commanded velocity for one defender.

    Conflict-free motion tracks the slot velocity plus the error-shaping term
    along the field; in conflict only the field term survives, so the speed
    never exceeds the reserved budget.  A vanishing field with nonzero error
    (opposing terms cancelling exactly) is logged and the defender holds for
    one step.
    """
    ex = position.x - goal.x
    ey = position.y - goal.y
    err = math.hypot(ex, ey)
    if err == 0.0:
        return goal_velocity if not conflict else Vec2(0.0, 0.0)
    fnorm = field.norm()
    if fnorm < FIELD_TOL:
        log.warning("degenerate field with error %.3g m; holding one step", err)
        return Vec2(0.0, 0.0)
    if err > gains.handoff_error:
        speed = gains.approach_speed * math.tanh(err)
    else:
        speed = gains.terminal_gain * err ** gains.terminal_exponent
    ux = field.x / fnorm
    uy = field.y / fnorm
    if conflict:
        return Vec2(speed * ux, speed * uy)
    return Vec2(goal_velocity.x + speed * ux, goal_velocity.y + speed * uy)


def convergence_bounds(initial_error: float, gains: TrackingGains,
                       attacker_start: Vec2, protected_center: Vec2,
                       attacker_speed_max: float) -> tuple[float, float]:
    """Conservative timing pair (slot-reach bound, attacker-arrival bound).

    The first bounds the time for the tracking error to fall inside the
    handoff basin from the given start (zero if already inside, using the
    quadratic certificate half'err^2); the second is the straight-line time
    for the attacker to reach the protected center unopposed.  The defense is
    viable when every defender's bound beats the attacker's.
    """
    if attacker_speed_max <= 0.0:
        raise ConfigError("attacker speed must be positive")
    if initial_error <= gains.handoff_error:
        reach = 0.0
    else:
        reach = (-initial_error / math.tanh(initial_error)) * math.log(
            gains.handoff_error ** 2 / initial_error ** 2)
    arrival = math.hypot(attacker_start.x - protected_center.x,
                         attacker_start.y - protected_center.y) / attacker_speed_max
    return reach, arrival


def terminal_phase_time(gains: TrackingGains, start_error: float) -> float:
    """Exact time for the power-law regime to drive the error to zero."""
    k = gains.terminal_exponent
    return start_error ** (1.0 - k) / (gains.terminal_gain * (1.0 - k))
