"""The guidance field that routes the formation center to the safe area.

A radially converging unit field around the safe center is blended with an
obstacle-following field around each super-elliptic shell.  The
obstacle-following direction is built from the contour tangent: on the ray
through the target it points radially outward, at the watershed ray
(diametrically opposite the target) it is purely tangential, and it
interpolates linearly in the sector angle in between.  The watershed carries
an intentional half-turn jump, splitting the flow around the two sides of the
obstacle.

singularity_sweep numerically certifies that the angle between the converging
and obstacle-following components stays away from a half turn everywhere on
the worst-case outer contour, which is what keeps the blended field from
vanishing anywhere except the safe center.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .environment import Obstacle, superelliptic_distance, tangent_angle_at
from .errors import DomainError
from .geom import TWO_PI, Vec2, blend_weight, unit, wrap_angle, wrap_sector


@dataclass(frozen=True)
class FieldSample:
    """One evaluation of the combined field.

    direction is the raw blended vector (norm in [0, 1]); sigma is the active
    obstacle's blending weight, at most one obstacle being active in a valid
    scenario.
    """

    direction: Vec2
    active_obstacle: Optional[int]
    sigma: float


def _field_angle(beta_f: float, beta_s: float, ob: Obstacle) -> float:
    """Direction of the obstacle-following field at sector angle beta_f,
    for a target sitting at sector angle beta_s."""
    tangent_f = tangent_angle_at(beta_f, ob)
    tangent_s = tangent_angle_at(beta_s, ob)
    span = wrap_sector(beta_f - beta_s)
    lead_s = wrap_sector(tangent_s - beta_s)
    if span < math.pi:
        phi = tangent_f - lead_s + (span / math.pi) * (lead_s - math.pi)
    else:
        phi = tangent_f - lead_s * (span - math.pi) / math.pi
    return wrap_angle(phi)


def repulsive_angle(p: Vec2, ob: Obstacle, target: Vec2) -> float:
    """Angle of the obstacle-following field at p, steering flow around the
    shell toward the side facing the target (the safe center, or a defender's
    goal).  Depends on p only through its sector angle."""
    dfx = p.x - ob.center.x
    dfy = p.y - ob.center.y
    dsx = target.x - ob.center.x
    dsy = target.y - ob.center.y
    if (dfx == 0.0 and dfy == 0.0) or (dsx == 0.0 and dsy == 0.0):
        raise DomainError("field angle undefined at the obstacle center")
    return _field_angle(math.atan2(dfy, dfx), math.atan2(dsy, dsx), ob)


def attractive_field(p: Vec2, target: Vec2) -> Vec2:
    """Unit vector toward the target; the zero vector exactly at the target."""
    return unit(Vec2(target.x - p.x, target.y - p.y))


def combined_field(p: Vec2, obstacles: Sequence[Obstacle], safe_center: Vec2) -> FieldSample:
    """Blend the converging field with the obstacle-following fields.

    Weights come from each obstacle's formation band evaluated at the
    super-elliptic distance of p.  With disjoint outer shells the result is
    nonzero everywhere outside the inner shells except at the safe center.
    """
    attract = attractive_field(p, safe_center)
    prod = 1.0
    fx = 0.0
    fy = 0.0
    active = None
    sigma_max = 0.0
    for k, ob in enumerate(obstacles):
        sigma = blend_weight(superelliptic_distance(p, ob), ob.formation_band)
        if sigma <= 0.0:
            continue
        prod *= 1.0 - sigma
        phi = repulsive_angle(p, ob, safe_center)
        fx += sigma * math.cos(phi)
        fy += sigma * math.sin(phi)
        if sigma > sigma_max:
            sigma_max = sigma
            active = k
    return FieldSample(
        direction=Vec2(prod * attract.x + fx, prod * attract.y + fy),
        active_obstacle=active,
        sigma=sigma_max,
    )


def component_angle_gap(p: Vec2, ob: Obstacle, target: Vec2) -> float:
    """Angle between the converging field and the obstacle-following field
    at p, wrapped to (-pi, pi].  Zero by convention when p coincides with
    the target (the converging field vanishes there)."""
    if p.x == target.x and p.y == target.y:
        return 0.0
    toward = math.atan2(target.y - p.y, target.x - p.x)
    return wrap_angle(toward - repulsive_angle(p, ob, target))


# ---------------------------------------------------------------------------
# vectorized contour machinery for the sweep
# ---------------------------------------------------------------------------

def _tangent_angle_np(beta, ob: Obstacle):
    c = np.cos(beta)
    s = np.sin(beta)
    p = 2.0 * ob.exponent - 1.0
    gx = np.copysign(np.abs(c) ** p, c) / ob.semi_x ** (2.0 * ob.exponent)
    gy = np.copysign(np.abs(s) ** p, s) / ob.semi_y ** (2.0 * ob.exponent)
    return np.arctan2(gx, -gy)


def _wrap_sector_np(theta):
    return np.mod(theta, TWO_PI)


def _wrap_angle_np(theta):
    return theta - TWO_PI * np.floor((theta + math.pi) / TWO_PI)


def _field_angle_np(beta_f, beta_s, ob: Obstacle):
    tangent_f = _tangent_angle_np(beta_f, ob)
    tangent_s = _tangent_angle_np(beta_s, ob)
    span = _wrap_sector_np(beta_f - beta_s)
    lead_s = _wrap_sector_np(tangent_s - beta_s)
    inner = tangent_f - lead_s + (span / math.pi) * (lead_s - math.pi)
    outer = tangent_f - lead_s * (span - math.pi) / math.pi
    return np.where(span < math.pi, inner, outer)


def contour_point(ob: Obstacle, beta: float, level: float) -> Vec2:
    """Point on the contour E = level lying on the ray at sector angle beta."""
    x, y = _contour_point_np(np.asarray(beta, dtype=float), level, ob)
    return Vec2(ob.center.x + float(x), ob.center.y + float(y))


def _contour_point_np(beta, level, ob: Obstacle):
    """Offsets from the obstacle center to the level contour along each ray."""
    n = ob.exponent
    scale = (1.0 + level) ** (1.0 / (2.0 * n))
    ax = ob.semi_x * scale
    by = ob.semi_y * scale
    c = np.cos(beta)
    s = np.sin(beta)
    num = np.copysign((ax * np.abs(s)) ** n, s)
    den = np.copysign((by * np.abs(c)) ** n, c)
    p = np.arctan2(num, den)
    cp = np.cos(p)
    sp = np.sin(p)
    x = ax * np.copysign(np.abs(cp) ** (1.0 / n), cp)
    y = by * np.copysign(np.abs(sp) ** (1.0 / n), sp)
    return x, y


@dataclass(frozen=True)
class SweepReport:
    """Per-cell extrema of the component angle gap on the worst-case contour.

    Rows index the target sector angle over [0, pi/2]; columns index the
    sector span between the sample point and the target over [0, 2*pi).
    """

    target_angles: np.ndarray      # cell edges, shape (cells+1,)
    span_angles: np.ndarray        # cell edges, shape (cells+1,)
    cell_min: np.ndarray           # shape (cells, cells)
    cell_max: np.ndarray
    margin: float

    @property
    def min_value(self) -> float:
        return float(self.cell_min.min())

    @property
    def max_value(self) -> float:
        return float(self.cell_max.max())

    @property
    def max_abs(self) -> float:
        return max(abs(self.min_value), abs(self.max_value))

    @property
    def passed(self) -> bool:
        return self.max_abs < math.pi - self.margin

    def to_csv(self) -> str:
        lines = ["target_angle_rad,span_rad,gap_min_rad,gap_max_rad"]
        bc = 0.5 * (self.target_angles[:-1] + self.target_angles[1:])
        sc = 0.5 * (self.span_angles[:-1] + self.span_angles[1:])
        for i, b in enumerate(bc):
            for j, s in enumerate(sc):
                lines.append(f"{b!r},{s!r},{self.cell_min[i, j]!r},{self.cell_max[i, j]!r}")
        return "\n".join(lines) + "\n"

    def summary(self) -> dict:
        return {
            "cells": int(self.cell_min.shape[0]),
            "gap_min_rad": self.min_value,
            "gap_max_rad": self.max_value,
            "max_abs_rad": self.max_abs,
            "margin_rad": self.margin,
            "limit_rad": math.pi - self.margin,
            "passed": self.passed,
        }


def _cell_reduce(values: np.ndarray, cells: int, sub: int, fn):
    """Reduce a fine lattice of shape (sub*cells+1, sub*cells+1) to per-cell
    extrema over each (sub+1) x (sub+1) covering window."""
    idx = sub * np.arange(cells)[:, None] + np.arange(sub + 1)[None, :]
    rows = fn(values[idx], axis=1)          # (cells, fine)
    return fn(rows[:, idx], axis=2)         # (cells, cells)


def singularity_sweep(ob: Obstacle, resolution: int = 128, margin: float = 0.1,
                      subsamples: int = 3) -> SweepReport:
    """Map the angle between field components over the worst-case contour.

    Both the target point and the sample point are placed on the outermost
    blending contour (the configuration that maximizes the gap); the target
    sector angle covers the first quadrant, the remaining quadrants following
    by symmetry of the axis-aligned family.  Passes when the gap magnitude
    never reaches a half turn minus the margin.
    """
    if resolution < 64:
        raise ValueError(f"sweep resolution must be at least 64, got {resolution}")
    level = ob.formation_band.hi
    fine = subsamples * resolution + 1

    beta_s = np.linspace(0.0, math.pi / 2.0, fine)
    span = np.linspace(0.0, TWO_PI, fine)
    # nudge the endpoints off the coincidence point (sample == target)
    span[0] = 1e-9
    span[-1] = TWO_PI - 1e-9

    bs = beta_s[:, None]
    dv = span[None, :]
    bf = bs + dv

    sx, sy = _contour_point_np(bs, level, ob)
    fx, fy = _contour_point_np(bf, level, ob)
    phi = _field_angle_np(bf, bs, ob)
    toward = np.arctan2(sy - fy, sx - fx)
    gap = _wrap_angle_np(toward - phi)

    edges_b = np.linspace(0.0, math.pi / 2.0, resolution + 1)
    edges_s = np.linspace(0.0, TWO_PI, resolution + 1)
    return SweepReport(
        target_angles=edges_b,
        span_angles=edges_s,
        cell_min=_cell_reduce(gap, resolution, subsamples, np.min),
        cell_max=_cell_reduce(gap, resolution, subsamples, np.max),
        margin=margin,
    )


def follow_field(start: Vec2, obstacles: Sequence[Obstacle], safe: "Disc",
                 step: float = 0.03, max_path: float = 400.0):
    """Integrate the normalized field from start until the safe area is
    reached or the path budget runs out.

    Returns (points, converged, min_norm, min_level_slack) where
    min_level_slack is the smallest margin of any sampled point above any
    obstacle's inner shell (negative means the inner shell was entered).
    """
    p = start
    points = [p]
    min_norm = math.inf
    min_slack = math.inf
    steps = int(max_path / step)
    converged = False
    for _ in range(steps):
        if math.hypot(p.x - safe.center.x, p.y - safe.center.y) < safe.radius:
            converged = True
            break
        sample = combined_field(p, obstacles, safe.center)
        norm = sample.direction.norm()
        min_norm = min(min_norm, norm)
        for ob in obstacles:
            min_slack = min(min_slack,
                            superelliptic_distance(p, ob) - ob.formation_band.lo)
        if norm == 0.0:
            break
        p = Vec2(p.x + step * sample.direction.x / norm,
                 p.y + step * sample.direction.y / norm)
        points.append(p)
    return points, converged, min_norm, min_slack
