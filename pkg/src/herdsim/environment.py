"""World model: protected/safe areas, rectangular obstacles with their derived
super-elliptic shells, scenario configuration, and scenario validation.

Each axis-aligned rectangular obstacle carries one super-ellipse family whose
level coordinate is

    E(p) = |dx / semi_x|^(2n) + |dy / semi_y|^(2n) - 1,

with the semi-axes chosen so the level-0 contour passes through the corners of
the raw rectangle.  The exponent n and the corner level of the inflated
rectangle are coupled through an implicit pair of relations solved here; all
blending thresholds for the formation field, the defenders, and the attacker's
circular stand-in are derived from that single family.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass


from .errors import ConfigError, DomainError, SchemaError, SolverError
from .geom import BlendTriplet, Vec2, wrap_angle


@dataclass(frozen=True)
class Disc:
    """A disc-shaped area (protected or safe)."""

    center: Vec2
    radius: float

    def __post_init__(self):
        if not (self.center.is_finite() and math.isfinite(self.radius)):
            raise ConfigError(f"disc must be finite: {self}")
        if self.radius <= 0.0:
            raise ConfigError(f"disc radius must be positive, got {self.radius}")

    def contains(self, p: Vec2) -> bool:
        return math.hypot(p.x - self.center.x, p.y - self.center.y) <= self.radius


@dataclass(frozen=True)
class Obstacle:
    """Axis-aligned rectangle plus its derived super-elliptic shells.

    formation_* is the rectangle inflated by the whole formation footprint
    plus the safety clearance; defender_* by a single defender body plus its
    own clearance.  All level thresholds live in the one super-ellipse family
    (semi_x, semi_y, exponent).  attacker_band holds Euclidean radii for the
    circular obstacle model the adversary navigates by.
    """

    center: Vec2
    width: float
    height: float
    formation_width: float
    formation_height: float
    defender_width: float
    defender_height: float
    exponent: float
    semi_x: float
    semi_y: float
    formation_band: BlendTriplet
    defender_band: BlendTriplet
    attacker_band: BlendTriplet


@dataclass(frozen=True)
class ObstacleDerivation:
    """Parameters driving the rectangle -> Obstacle derivation."""

    formation_radius: float          # arc radius + defender body radius
    clearance: float                 # standoff added around the formation
    defender_clearance: float        # standoff added around a single defender
    defender_radius: float
    attacker_mid_factor: float = 1.15
    attacker_hi_factor: float = 1.3
    outer_pad_factors: tuple = (1.25, 1.5)   # mid/hi shells as extra pad fractions
    tol: float = 1e-12
    max_iter: int = 500


def solve_shape_exponent(width: float, height: float, infl_width: float,
                         infl_height: float, tol: float = 1e-12,
                         max_iter: int = 500) -> tuple[float, float]:
    """Solve the coupled (exponent, corner level) pair for one obstacle.

    The exponent n and the level xi of the contour through the inflated
    rectangle's corners must satisfy both

        n  = 1 / (1 - exp(-xi))
        xi = ((iw/w)^(2n) + (ih/h)^(2n)) / 2 - 1

    simultaneously.  A damped fixed-point iteration (damping 0.5, seed n=2)
    handles every practical geometry; if it fails to settle within max_iter
    we fall back to bisection on g(n) = n - 1/(1-exp(-xi(n))), which is
    strictly increasing with a guaranteed sign change on [1+1e-6, 50].

    Returns (exponent, corner_level) with |g| below tol.
    """
    if not (infl_width > width > 0.0 and infl_height > height > 0.0):
        raise ConfigError(
            f"inflated rectangle must strictly contain the raw one: "
            f"{width}x{height} -> {infl_width}x{infl_height}"
        )
    rw = infl_width / width
    rh = infl_height / height

    def level_of(n):
        return 0.5 * (rw ** (2.0 * n) + rh ** (2.0 * n)) - 1.0

    def mapped(n):
        return 1.0 / (1.0 - math.exp(-level_of(n)))

    n = 2.0
    damping = 0.5
    for _ in range(max_iter):
        n_next = (1.0 - damping) * n + damping * mapped(n)
        if abs(n_next - n) < tol:
            return n_next, level_of(n_next)
        n = n_next

    lo, hi = 1.0 + 1e-6, 50.0
    g_lo = lo - mapped(lo)
    g_hi = hi - mapped(hi)
    if not (g_lo < 0.0 < g_hi):
        raise SolverError(
            f"exponent solve failed to bracket a root for "
            f"{width}x{height} -> {infl_width}x{infl_height}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid - mapped(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    n = 0.5 * (lo + hi)
    return n, level_of(n)


def superelliptic_distance(p: Vec2, ob: Obstacle) -> float:
    """Level-set coordinate of p in the obstacle's super-ellipse family.

    -1 at the center, 0 on the contour through the raw rectangle corners,
    strictly increasing along rays from the center.
    """
    ex = abs((p.x - ob.center.x) / ob.semi_x)
    ey = abs((p.y - ob.center.y) / ob.semi_y)
    two_n = 2.0 * ob.exponent
    return ex ** two_n + ey ** two_n - 1.0


def tangent_angle_at(beta: float, ob: Obstacle) -> float:
    """Counter-clockwise tangent direction of the contour family at ray angle beta.

    Every contour of the family shares the same tangent direction along a
    given ray, so only the sector angle matters.  The counter-clockwise
    orientation (outward gradient rotated +90 degrees) is what makes the
    obstacle-following flow circulate from the watershed toward the target
    side.
    """
    c = math.cos(beta)
    s = math.sin(beta)
    p = 2.0 * ob.exponent - 1.0
    gx = math.copysign(abs(c) ** p, c) / ob.semi_x ** (2.0 * ob.exponent)
    gy = math.copysign(abs(s) ** p, s) / ob.semi_y ** (2.0 * ob.exponent)
    return math.atan2(gx, -gy)


def contour_tangent_angle(p: Vec2, ob: Obstacle) -> float:
    """Tangent direction of the contour through p, wrapped to (-pi, pi]."""
    dx = p.x - ob.center.x
    dy = p.y - ob.center.y
    if dx == 0.0 and dy == 0.0:
        raise DomainError("tangent undefined at the obstacle center")
    return wrap_angle(tangent_angle_at(math.atan2(dy, dx), ob))


def corner_level(width: float, height: float, infl_width: float,
                 infl_height: float, exponent: float) -> float:
    """Level of the contour through the corners of an inflated rectangle."""
    two_n = 2.0 * exponent
    return 0.5 * ((infl_width / width) ** two_n + (infl_height / height) ** two_n) - 1.0


def derive_obstacle(center: Vec2, width: float, height: float,
                    params: ObstacleDerivation) -> Obstacle:
    """Build a fully derived Obstacle from a raw rectangle.

    Deterministic: identical inputs yield bit-identical outputs.
    """
    if not (width > 0.0 and height > 0.0):
        raise ConfigError(f"obstacle sides must be positive, got {width}x{height}")
    pad = params.formation_radius + params.clearance
    fw = width + 2.0 * pad
    fh = height + 2.0 * pad
    try:
        exponent, lvl_lo = solve_shape_exponent(
            width, height, fw, fh, tol=params.tol, max_iter=params.max_iter)
    except SolverError as exc:
        raise SolverError(f"obstacle at {center}: {exc}") from exc

    half_exp = 2.0 ** (1.0 / (2.0 * exponent))
    semi_x = 0.5 * width * half_exp
    semi_y = 0.5 * height * half_exp

    f_mid, f_hi = params.outer_pad_factors
    lvl_mid = corner_level(width, height, width + 2.0 * f_mid * pad,
                           height + 2.0 * f_mid * pad, exponent)
    lvl_hi = corner_level(width, height, width + 2.0 * f_hi * pad,
                          height + 2.0 * f_hi * pad, exponent)

    pad_d = params.defender_radius + params.defender_clearance
    dw = width + 2.0 * pad_d
    dh = height + 2.0 * pad_d
    d_lo = corner_level(width, height, dw, dh, exponent)
    d_mid = corner_level(width, height, width + 2.0 * f_mid * pad_d,
                         height + 2.0 * f_mid * pad_d, exponent)
    d_hi = corner_level(width, height, width + 2.0 * f_hi * pad_d,
                        height + 2.0 * f_hi * pad_d, exponent)

    r_lo = math.hypot(fw, fh)
    attacker_band = BlendTriplet(r_lo, params.attacker_mid_factor * r_lo,
                                 params.attacker_hi_factor * r_lo)

    return Obstacle(
        center=center, width=width, height=height,
        formation_width=fw, formation_height=fh,
        defender_width=dw, defender_height=dh,
        exponent=exponent, semi_x=semi_x, semi_y=semi_y,
        formation_band=BlendTriplet(lvl_lo, lvl_mid, lvl_hi),
        defender_band=BlendTriplet(d_lo, d_mid, d_hi),
        attacker_band=attacker_band,
    )


# ---------------------------------------------------------------------------
# scenario configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AttackerConfig:
    start: Vec2
    body_radius: float
    speed_max: float
    sensing_radius: float
    deadlock_turn: float                       # rad added to the stale heading
    standoff_band: tuple[float, float, float]  # euclidean radii around defenders

    def standoff_triplet(self) -> BlendTriplet:
        return BlendTriplet(*self.standoff_band)


@dataclass(frozen=True)
class DefenderTeamConfig:
    starts: tuple[Vec2, ...]
    body_radius: float
    speed_max: tuple[float, ...]
    sensing_zone_radius: float
    peer_band: tuple[float, float, float]      # euclidean radii between defenders

    @property
    def count(self) -> int:
        return len(self.starts)

    def peer_triplet(self) -> BlendTriplet:
        return BlendTriplet(*self.peer_band)


@dataclass(frozen=True)
class FormationConfig:
    arc_radius: float
    spread: float               # rad
    clearance: float            # standoff added around the formation footprint
    defender_clearance: float
    goal_tolerance: float       # error below which a goal counts as reached


@dataclass(frozen=True)
class ControlConfig:
    terminal_exponent: float    # exponent of the near-goal power law, in (0, 1)
    heading_rate_max: float     # rad/s clamp on the commanded-heading rate


@dataclass(frozen=True)
class CaptureConfig:
    transition_time: float      # s, ramp duration after the safe area is entered
    tangent_margin: float       # rad short of perpendicular in the captured phase
    dwell_factor: float         # termination dwell as a multiple of transition_time


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    t_max: float


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-12
    max_iterations: int = 500


@dataclass(frozen=True)
class ScenarioConfig:
    """Full world description; immutable after construction."""

    protected: Disc
    safe: Disc
    obstacles: tuple[Obstacle, ...]
    attacker: AttackerConfig
    defenders: DefenderTeamConfig
    formation: FormationConfig
    control: ControlConfig
    capture: CaptureConfig
    integrator: IntegratorConfig
    solver: SolverConfig
    attacker_circle_factors: tuple[float, float]


def _require(d: dict, key: str, where: str):
    if key not in d:
        raise SchemaError(f"missing key '{key}' in {where}")
    return d[key]


def _vec(v, where: str) -> Vec2:
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise SchemaError(f"{where} must be a 2-element [x, y] list")
    try:
        out = Vec2(float(v[0]), float(v[1]))
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where} must hold numbers: {exc}") from exc
    if not out.is_finite():
        raise ConfigError(f"{where} must be finite, got {v}")
    return out


def _num(v, where: str) -> float:
    try:
        out = float(v)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{where} must be a number: {exc}") from exc
    if not math.isfinite(out):
        raise ConfigError(f"{where} must be finite, got {v}")
    return out


def _band(v, where: str) -> tuple[float, float, float]:
    if not (isinstance(v, (list, tuple)) and len(v) == 3):
        raise SchemaError(f"{where} must be a 3-element [lo, mid, hi] list")
    return (_num(v[0], where), _num(v[1], where), _num(v[2], where))


def _band_or_min(v, where: str) -> tuple[float, float, float]:
    """A full [lo, mid, hi] band, or [lo] alone with mid/hi at 1.5x and 2x."""
    if isinstance(v, (list, tuple)) and len(v) == 1:
        lo = _num(v[0], where)
        return (lo, 1.5 * lo, 2.0 * lo)
    return _band(v, where)


def scenario_from_dict(doc: dict) -> ScenarioConfig:
    """Build a ScenarioConfig from a parsed scenario document.

    Structural problems raise SchemaError; unusable values raise ConfigError.
    Consistency conditions that merely make the scenario unsound are left to
    validate_scenario, which reports them as data.
    """
    if not isinstance(doc, dict):
        raise SchemaError("scenario document must be a JSON object")

    pa = _require(doc, "protected_area", "scenario")
    sa = _require(doc, "safe_area", "scenario")
    protected = Disc(_vec(_require(pa, "center_m", "protected_area"), "protected_area.center_m"),
                     _num(_require(pa, "radius_m", "protected_area"), "protected_area.radius_m"))
    safe = Disc(_vec(_require(sa, "center_m", "safe_area"), "safe_area.center_m"),
                _num(_require(sa, "radius_m", "safe_area"), "safe_area.radius_m"))

    at = _require(doc, "attacker", "scenario")
    attacker = AttackerConfig(
        start=_vec(_require(at, "start_m", "attacker"), "attacker.start_m"),
        body_radius=_num(_require(at, "body_radius_m", "attacker"), "attacker.body_radius_m"),
        speed_max=_num(_require(at, "speed_max_mps", "attacker"), "attacker.speed_max_mps"),
        sensing_radius=_num(_require(at, "sensing_radius_m", "attacker"), "attacker.sensing_radius_m"),
        deadlock_turn=_num(at.get("deadlock_turn_rad", 0.05), "attacker.deadlock_turn_rad"),
        standoff_band=_band(_require(at, "defender_standoff_band_m", "attacker"),
                            "attacker.defender_standoff_band_m"),
    )

    de = _require(doc, "defenders", "scenario")
    starts = _require(de, "start_m", "defenders")
    if not isinstance(starts, list):
        raise SchemaError("defenders.start_m must be a list of [x, y] pairs")
    start_vecs = tuple(_vec(s, f"defenders.start_m[{i}]") for i, s in enumerate(starts))
    speeds_raw = _require(de, "speed_max_mps", "defenders")
    if isinstance(speeds_raw, (int, float)):
        speeds = tuple(float(speeds_raw) for _ in start_vecs)
    elif isinstance(speeds_raw, list):
        if len(speeds_raw) != len(start_vecs):
            raise SchemaError("defenders.speed_max_mps list must match start_m length")
        speeds = tuple(_num(s, "defenders.speed_max_mps") for s in speeds_raw)
    else:
        raise SchemaError("defenders.speed_max_mps must be a number or list")
    defenders = DefenderTeamConfig(
        starts=start_vecs,
        body_radius=_num(_require(de, "body_radius_m", "defenders"), "defenders.body_radius_m"),
        speed_max=speeds,
        sensing_zone_radius=_num(_require(de, "sensing_zone_radius_m", "defenders"),
                                 "defenders.sensing_zone_radius_m"),
        peer_band=_band_or_min(_require(de, "peer_separation_band_m", "defenders"),
                               "defenders.peer_separation_band_m"),
    )

    if attacker.body_radius <= 0.0 or defenders.body_radius <= 0.0:
        raise ConfigError("agent body radii must be positive")
    if attacker.speed_max < 0.0 or any(v <= 0.0 for v in defenders.speed_max):
        raise ConfigError("speeds must be positive (attacker may be 0)")

    fo = _require(doc, "formation", "scenario")
    clearance = _num(_require(fo, "clearance_m", "formation"), "formation.clearance_m")
    formation = FormationConfig(
        arc_radius=_num(_require(fo, "arc_radius_m", "formation"), "formation.arc_radius_m"),
        spread=_num(_require(fo, "spread_rad", "formation"), "formation.spread_rad"),
        clearance=clearance,
        defender_clearance=_num(fo.get("defender_clearance_m", 0.5 * clearance),
                                "formation.defender_clearance_m"),
        goal_tolerance=_num(fo.get("goal_tolerance_m", 0.05), "formation.goal_tolerance_m"),
    )
    if formation.arc_radius <= 0.0:
        raise ConfigError(f"arc radius must be positive, got {formation.arc_radius}")

    co = _require(doc, "control", "scenario")
    control = ControlConfig(
        terminal_exponent=_num(_require(co, "terminal_exponent", "control"),
                               "control.terminal_exponent"),
        heading_rate_max=_num(_require(co, "heading_rate_max_radps", "control"),
                              "control.heading_rate_max_radps"),
    )

    ca = _require(doc, "capture", "scenario")
    v_d_min = min(speeds) if speeds else attacker.speed_max
    default_transition = (math.pi / 2.0) * (v_d_min - attacker.speed_max) / formation.arc_radius
    capture = CaptureConfig(
        transition_time=_num(ca.get("transition_time_s", default_transition),
                             "capture.transition_time_s"),
        tangent_margin=_num(ca.get("tangent_margin_rad", 0.1), "capture.tangent_margin_rad"),
        dwell_factor=_num(ca.get("dwell_factor", 2.0), "capture.dwell_factor"),
    )
    if capture.transition_time <= 0.0:
        raise ConfigError(f"capture transition time must be positive, got {capture.transition_time}")

    it = _require(doc, "integrator", "scenario")
    integrator = IntegratorConfig(
        dt=_num(_require(it, "dt_s", "integrator"), "integrator.dt_s"),
        t_max=_num(_require(it, "t_max_s", "integrator"), "integrator.t_max_s"),
    )
    if integrator.dt <= 0.0:
        raise ConfigError(f"integrator dt must be positive, got {integrator.dt}")
    if integrator.t_max <= 0.0:
        raise ConfigError(f"integrator t_max must be positive, got {integrator.t_max}")

    so = doc.get("solver", {})
    solver = SolverConfig(
        tolerance=_num(so.get("tolerance", 1e-12), "solver.tolerance"),
        max_iterations=int(so.get("max_iterations", 500)),
    )
    if solver.tolerance <= 0.0:
        raise ConfigError("solver tolerance must be positive")

    om = doc.get("obstacle_model", {})
    factors = om.get("attacker_circle_factors", [1.15, 1.3])
    if not (isinstance(factors, (list, tuple)) and len(factors) == 2):
        raise SchemaError("obstacle_model.attacker_circle_factors must be [mid, hi]")
    mid_f = _num(factors[0], "attacker_circle_factors[0]")
    hi_f = _num(factors[1], "attacker_circle_factors[1]")
    if not (1.0 < mid_f < hi_f):
        raise ConfigError(f"attacker circle factors must satisfy 1 < mid < hi, got {factors}")

    derivation = ObstacleDerivation(
        formation_radius=formation.arc_radius + defenders.body_radius,
        clearance=formation.clearance,
        defender_clearance=formation.defender_clearance,
        defender_radius=defenders.body_radius,
        attacker_mid_factor=mid_f,
        attacker_hi_factor=hi_f,
        tol=solver.tolerance,
        max_iter=solver.max_iterations,
    )
    raw_obstacles = _require(doc, "obstacles", "scenario")
    if not isinstance(raw_obstacles, list):
        raise SchemaError("obstacles must be a list")
    obstacles = []
    for i, rec in enumerate(raw_obstacles):
        c = _vec(_require(rec, "center_m", f"obstacles[{i}]"), f"obstacles[{i}].center_m")
        w = _num(_require(rec, "width_m", f"obstacles[{i}]"), f"obstacles[{i}].width_m")
        h = _num(_require(rec, "height_m", f"obstacles[{i}]"), f"obstacles[{i}].height_m")
        obstacles.append(derive_obstacle(c, w, h, derivation))

    return ScenarioConfig(
        protected=protected, safe=safe, obstacles=tuple(obstacles),
        attacker=attacker, defenders=defenders, formation=formation,
        control=control, capture=capture, integrator=integrator, solver=solver,
        attacker_circle_factors=(mid_f, hi_f),
    )


def load_scenario(path) -> tuple[ScenarioConfig, str]:
    """Load a scenario JSON file; returns (config, sha256 of the file bytes)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"scenario file is not valid JSON: {exc}") from exc
    return scenario_from_dict(doc), digest


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def min_spread(count: int, standoff_min: float, peer_min: float) -> float:
    """Smallest total arc spread keeping adjacent slots peer_min apart.

    Chord construction on the circle of radius standoff_min; if the peer
    separation exceeds the diameter the per-gap angle saturates at pi.
    """
    if count < 2:
        return 0.0
    arg = 1.0 - peer_min * peer_min / (2.0 * standoff_min * standoff_min)
    arg = min(1.0, max(-1.0, arg))
    return (count - 1) * math.acos(arg)


def arc_magnitude(count: int, spread: float) -> float:
    """Norm of the sum of unit vectors evenly fanned over the arc spread."""
    if count < 1:
        return 0.0
    if spread == 0.0:
        return float(count)
    half_gap = spread / (2.0 * (count - 1)) if count > 1 else 0.0
    if half_gap == 0.0:
        return float(count)
    return math.sin(count * half_gap) / math.sin(half_gap)


def _shell_boundary(ob: Obstacle, level: float, samples: int):
    """Points on the contour E = level, sampled over the full sector range."""
    # radius along each ray solves E(r) = level in closed form
    two_n = 2.0 * ob.exponent
    pts = []
    for i in range(samples):
        beta = 2.0 * math.pi * i / samples
        c = math.cos(beta)
        s = math.sin(beta)
        denom = (abs(c) / ob.semi_x) ** two_n + (abs(s) / ob.semi_y) ** two_n
        r = ((1.0 + level) / denom) ** (1.0 / two_n)
        pts.append(Vec2(ob.center.x + r * c, ob.center.y + r * s))
    return pts


def _max_overlap_count(cfg: ScenarioConfig) -> int:
    """Largest set of obstacles whose attacker-model influence discs can
    overlap at a single point (clique of the pairwise overlap graph)."""
    n = len(cfg.obstacles)
    adj = [[False] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        a, b = cfg.obstacles[i], cfg.obstacles[j]
        d = math.hypot(a.center.x - b.center.x, a.center.y - b.center.y)
        if d < a.attacker_band.hi + b.attacker_band.hi:
            adj[i][j] = adj[j][i] = True
    best = 1 if n else 0

    def grow(clique, candidates):
        nonlocal best
        best = max(best, len(clique))
        for k in candidates:
            if all(adj[k][m] for m in clique):
                grow(clique + [k], [c for c in candidates if c > k])

    grow([], list(range(n)))
    return best


def validate_scenario(cfg: ScenarioConfig, boundary_samples: int = 720) -> list[str]:
    """Check every structural assumption the guarantees rest on.

    Returns a list of violation strings (empty iff the scenario is sound).
    Each entry starts with a stable code so callers can match on categories.
    """
    v: list[str] = []

    if cfg.defenders.count > 0:
        v_d_min = min(cfg.defenders.speed_max)
        if not cfg.attacker.speed_max < v_d_min:
            v.append(f"speed-order: attacker speed {cfg.attacker.speed_max} must be "
                     f"strictly below every defender speed (min {v_d_min})")
    if cfg.defenders.body_radius > cfg.attacker.body_radius:
        v.append(f"body-radius: defender radius {cfg.defenders.body_radius} must not "
                 f"exceed attacker radius {cfg.attacker.body_radius}")
    if cfg.formation.clearance < 2.0 * cfg.defenders.body_radius:
        v.append(f"clearance: formation clearance {cfg.formation.clearance} must be "
                 f">= twice the defender radius {2.0 * cfg.defenders.body_radius}")

    lo, mid, hi = cfg.attacker.standoff_band
    if not (0.0 <= lo < mid < hi):
        v.append(f"standoff-triplet: attacker-defender radii must increase "
                 f"strictly, got ({lo}, {mid}, {hi})")
    else:
        if not (lo <= cfg.formation.arc_radius <= mid):
            v.append(f"arc-radius: {cfg.formation.arc_radius} must lie in "
                     f"[{lo}, {mid}] so the arc repulsion saturates")
    plo, pmid, phi = cfg.defenders.peer_band
    if not (0.0 <= plo < pmid < phi):
        v.append(f"peer-triplet: defender separation radii must increase "
                 f"strictly, got ({plo}, {pmid}, {phi})")
    if plo <= cfg.defenders.body_radius:
        v.append(f"peer-separation: minimum defender separation {plo} must exceed "
                 f"the defender radius {cfg.defenders.body_radius}")

    if cfg.defenders.count >= 2:
        needed = min_spread(cfg.defenders.count, lo, plo)
        if cfg.formation.spread < needed:
            v.append(f"spread: {cfg.formation.spread} rad is below the minimum "
                     f"{needed:.6f} rad for {cfg.defenders.count} defenders")
        mag = arc_magnitude(cfg.defenders.count, cfg.formation.spread)
        reachable = float(_max_overlap_count(cfg))
        if not mag > reachable:
            v.append(f"arc-magnitude: {mag:.6f} must exceed the worst simultaneous "
                     f"obstacle repulsion {reachable:.1f} or the heading command "
                     f"becomes unsolvable")

    if not (0.0 < cfg.control.terminal_exponent < 1.0):
        v.append(f"terminal-exponent: must lie in (0, 1), got "
                 f"{cfg.control.terminal_exponent}")
    if cfg.defenders.count > 0:
        k0 = (min(cfg.defenders.speed_max) - cfg.attacker.speed_max
              - cfg.formation.arc_radius * cfg.control.heading_rate_max)
        if k0 <= 0.0:
            v.append(f"tracking-speed: defender speed budget leaves no tracking "
                     f"margin (k0 = {k0:.6f} <= 0)")

    # shell spacing for the attacker's circular obstacle model
    for (i, a), (j, b) in itertools.combinations(enumerate(cfg.obstacles), 2):
        d = math.hypot(a.center.x - b.center.x, a.center.y - b.center.y)
        needed = a.attacker_band.hi + b.attacker_band.hi
        if d < needed:
            v.append(f"obstacle-spacing: obstacles {i} and {j} are {d:.4f} m apart "
                     f"but their circular influence radii need {needed:.4f} m")

    # outer super-elliptic shells must be pairwise disjoint
    boundaries = [_shell_boundary(ob, ob.formation_band.hi, boundary_samples)
                  for ob in cfg.obstacles]
    for (i, a), (j, b) in itertools.combinations(enumerate(cfg.obstacles), 2):
        overlap = any(superelliptic_distance(p, b) <= b.formation_band.hi
                      for p in boundaries[i])
        overlap = overlap or any(superelliptic_distance(p, a) <= a.formation_band.hi
                                 for p in boundaries[j])
        overlap = overlap or superelliptic_distance(a.center, b) <= b.formation_band.hi
        if overlap:
            v.append(f"shell-overlap: outer shells of obstacles {i} and {j} intersect")

    # the safe area must be clear of every outer shell
    for i, ob in enumerate(cfg.obstacles):
        ring = [Vec2(cfg.safe.center.x + cfg.safe.radius * math.cos(t),
                     cfg.safe.center.y + cfg.safe.radius * math.sin(t))
                for t in (2.0 * math.pi * k / boundary_samples for k in range(boundary_samples))]
        touched = any(superelliptic_distance(p, ob) <= ob.formation_band.hi for p in ring)
        touched = touched or superelliptic_distance(cfg.safe.center, ob) <= ob.formation_band.hi
        touched = touched or cfg.safe.contains(ob.center)
        if touched:
            v.append(f"safe-area-shell: obstacle {i} outer shell reaches into the safe area")

    # circular stand-in must contain the whole inflated rectangle
    for i, ob in enumerate(cfg.obstacles):
        diag = math.hypot(ob.formation_width, ob.formation_height)
        if ob.attacker_band.lo < diag - 1e-9:
            v.append(f"attacker-circle: obstacle {i} minimum radius "
                     f"{ob.attacker_band.lo:.4f} is below the inflated diagonal {diag:.4f}")

    # capture-phase timing must keep the attacker inside once it is in
    if cfg.defenders.count > 0:
        v_d_min = min(cfg.defenders.speed_max)
        gap = v_d_min - cfg.attacker.speed_max
        if gap > 0.0:
            rho_needed = (cfg.attacker.speed_max * cfg.capture.transition_time
                          + cfg.attacker.speed_max * cfg.formation.arc_radius / gap)
            if cfg.safe.radius < rho_needed:
                v.append(f"safe-radius: {cfg.safe.radius} m is below the "
                         f"{rho_needed:.4f} m needed to hold the attacker through "
                         f"the heading transition")
    if not (0.0 < cfg.capture.tangent_margin < math.pi / 2.0):
        v.append(f"tangent-margin: must lie in (0, pi/2), got {cfg.capture.tangent_margin}")

    return v


def scenario_warnings(cfg: ScenarioConfig) -> list[str]:
    """Non-fatal consistency notes (the run may still be sound)."""
    w: list[str] = []
    lo, mid, _ = cfg.attacker.standoff_band
    if lo < mid:
        midpoint = 0.5 * (lo + mid)
        if abs(cfg.formation.arc_radius - midpoint) > 1e-9:
            w.append(f"arc-radius-midpoint: arc radius {cfg.formation.arc_radius} is not "
                     f"the midpoint {midpoint} of the saturated standoff band")
    if cfg.defenders.count > 0:
        gap = min(cfg.defenders.speed_max) - cfg.attacker.speed_max
        heuristic = (math.pi / 2.0) * gap / cfg.formation.arc_radius
        if cfg.capture.transition_time < heuristic:
            w.append(f"transition-time: {cfg.capture.transition_time} s is below the "
                     f"heuristic floor {heuristic:.4f} s")
    return w
