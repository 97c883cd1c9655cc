"""Command-line front end: simulate | sweep | check.

Exit codes (stable, also listed in the README):
  0  success
  1  unexpected internal error
  2  scenario file missing or unreadable (argparse usage errors also exit 2)
  3  scenario malformed (schema mismatch, unusable values, bad index/resolution)
  4  scenario failed validation
  5  run finished but the outcome is unacceptable (no stable capture, safety
     ratio at or above 1, or the protected area was breached)
  6  numerical solver failure

Verbosity is controlled by the HERDSIM_LOG environment variable (DEBUG, INFO,
WARNING, ...).  --seed is accepted for interface stability but unused: the
dynamics are deterministic.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .environment import (load_scenario, scenario_warnings, validate_scenario)
from .errors import ConfigError, HerdsimError, SchemaError, SolverError
from .formation_field import singularity_sweep
from .sim import run
from .svg import ratio_curves_svg, sweep_heatmap_svg, trajectory_svg

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MISSING_FILE = 2
EXIT_BAD_SCENARIO = 3
EXIT_INVALID_SCENARIO = 4
EXIT_UNACCEPTABLE = 5
EXIT_SOLVER = 6

log = logging.getLogger("herdsim.cli")


def reference_scenario_path() -> Path:
    """Filesystem path of the bundled reference scenario."""
    return Path(resources.files("herdsim").joinpath("data/reference_scenario.json"))


def _setup_logging():
    level = os.environ.get("HERDSIM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")


def _load(scenario_arg):
    path = Path(scenario_arg) if scenario_arg else reference_scenario_path()
    if not path.is_file():
        print(f"error: scenario file not found: {path}", file=sys.stderr)
        return None, None, EXIT_MISSING_FILE
    try:
        cfg, digest = load_scenario(path)
    except (SchemaError, ConfigError) as exc:
        print(f"error: bad scenario: {exc}", file=sys.stderr)
        return None, None, EXIT_BAD_SCENARIO
    except SolverError as exc:
        print(f"error: solver failure while deriving obstacles: {exc}", file=sys.stderr)
        return None, None, EXIT_SOLVER
    return (cfg, {"scenario": str(scenario_arg) if scenario_arg else "bundled:reference_scenario",
                  "scenario_sha256": digest, "tool_version": __version__}, EXIT_OK)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_simulate(args) -> int:
    cfg, manifest, code = _load(args.scenario)
    if code != EXIT_OK:
        return code
    violations = validate_scenario(cfg)
    for w in scenario_warnings(cfg):
        print(f"warning: {w}", file=sys.stderr)
    if violations:
        for v in violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_INVALID_SCENARIO

    try:
        trace = run(cfg, dt=args.dt, t_max=args.t_max)
    except HerdsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    outputs = {"trace_csv": "trace.csv", "summary_json": "summary.json"}
    (out / "trace.csv").write_text(trace.to_csv())
    if args.svg == "on":
        outputs["trajectories_svg"] = "trajectories.svg"
        outputs["ratios_svg"] = "ratios.svg"
        (out / "trajectories.svg").write_text(trajectory_svg(trace, cfg))
        (out / "ratios.svg").write_text(ratio_curves_svg(trace))
    manifest["outputs"] = outputs
    summary = trace.summary()
    summary["manifest"] = manifest
    (out / "summary.json").write_text(_json_dump(summary))

    worst = max(trace.maxima[k] for k in ("ratio_attacker_obstacle",
                                          "ratio_defender_obstacle",
                                          "ratio_defender_defender",
                                          "ratio_attacker_defender"))
    ok = trace.capture_held and trace.termination == "captured-stable" and worst < 1.0
    print(f"termination: {trace.termination} at t={trace.t_end:.2f} s")
    print(f"events: {trace.events}")
    print(f"worst safety ratio: {worst:.4f}")
    print(f"artifacts written to {out}")
    if not ok:
        print("outcome unacceptable: no stable capture or a safety ratio reached 1",
              file=sys.stderr)
        return EXIT_UNACCEPTABLE
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg, manifest, code = _load(args.scenario)
    if code != EXIT_OK:
        return code
    if not (0 <= args.obstacle < len(cfg.obstacles)):
        print(f"error: obstacle index {args.obstacle} out of range "
              f"(scenario has {len(cfg.obstacles)})", file=sys.stderr)
        return EXIT_BAD_SCENARIO
    if args.resolution < 64:
        print(f"error: sweep resolution must be at least 64, got {args.resolution}",
              file=sys.stderr)
        return EXIT_BAD_SCENARIO

    report = singularity_sweep(cfg.obstacles[args.obstacle],
                               resolution=args.resolution, margin=args.margin)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "sweep.csv").write_text(report.to_csv())
    summary = report.summary()
    summary["obstacle"] = args.obstacle
    summary["manifest"] = manifest
    (out / "sweep_summary.json").write_text(_json_dump(summary))
    if args.svg == "on":
        (out / "sweep.svg").write_text(sweep_heatmap_svg(report))
    verdict = "pass" if report.passed else "FAIL"
    print(f"obstacle {args.obstacle}: max |gap| = {report.max_abs:.4f} rad, "
          f"limit {math.pi - report.margin:.4f} rad -> {verdict}")
    return EXIT_OK if report.passed else EXIT_UNACCEPTABLE


def cmd_check(args) -> int:
    cfg, manifest, code = _load(args.scenario)
    if code != EXIT_OK:
        return code
    violations = validate_scenario(cfg)
    warnings = scenario_warnings(cfg)

    from .defender_control import convergence_bounds, solve_tracking_gains
    from .environment import arc_magnitude, min_spread

    print(f"scenario: {manifest['scenario']} (sha256 {manifest['scenario_sha256'][:12]})")
    print(f"defenders: {cfg.defenders.count}, obstacles: {len(cfg.obstacles)}")
    if cfg.defenders.count >= 2:
        needed = min_spread(cfg.defenders.count, cfg.attacker.standoff_band[0],
                            cfg.defenders.peer_band[0])
        mag = arc_magnitude(cfg.defenders.count, cfg.formation.spread)
        print(f"spread: {cfg.formation.spread:.6f} rad (minimum {needed:.6f})")
        print(f"arc repulsion magnitude: {mag:.6f}")
        try:
            gains = solve_tracking_gains(
                cfg.control.terminal_exponent, min(cfg.defenders.speed_max),
                cfg.attacker.speed_max, cfg.formation.arc_radius,
                cfg.control.heading_rate_max, tol=cfg.solver.tolerance)
            print(f"tracking gains: approach {gains.approach_speed:.6f} m/s, "
                  f"terminal gain {gains.terminal_gain:.6f}, "
                  f"handoff error {gains.handoff_error:.6f} m")
            _, arrival = convergence_bounds(1.0, gains, cfg.attacker.start,
                                            cfg.protected.center, cfg.attacker.speed_max)
            print(f"attacker straight-line arrival bound: {arrival:.3f} s")
        except (ConfigError, SolverError) as exc:
            print(f"tracking gains unsolvable: {exc}")
    print("obstacle shells (exponent, formation level lo/mid/hi, defender lo, circle radii):")
    for i, ob in enumerate(cfg.obstacles):
        fb, db, ab = ob.formation_band, ob.defender_band, ob.attacker_band
        print(f"  [{i}] {ob.width:g}x{ob.height:g} @ ({ob.center.x:g}, {ob.center.y:g}): "
              f"n={ob.exponent:.6f} levels=({fb.lo:.4f}, {fb.mid:.4f}, {fb.hi:.4f}) "
              f"defender_lo={db.lo:.4f} circle=({ab.lo:.3f}, {ab.mid:.3f}, {ab.hi:.3f})")

    for w in warnings:
        print(f"warning: {w}")
    if violations:
        print(f"{len(violations)} violation(s):")
        for v in violations:
            print(f"  violation: {v}")
        return EXIT_INVALID_SCENARIO
    print("scenario is clean")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="herdsim",
        description="Vector-field herding simulator: arc of defenders steering "
                    "an adversarial agent to a safe area among rectangular obstacles.")
    parser.add_argument("--version", action="version", version=f"herdsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", default=None,
                        help="scenario JSON path (default: bundled reference scenario)")

    sim = sub.add_parser("simulate", parents=[common],
                         help="run the closed loop and write trace/summary/plots")
    sim.add_argument("--out", default="out", help="output directory (default: ./out)")
    sim.add_argument("--dt", type=float, default=None, help="timestep override (s)")
    sim.add_argument("--t-max", type=float, default=None, help="time budget override (s)")
    sim.add_argument("--svg", choices=["on", "off"], default="on", help="emit SVG plots")
    sim.add_argument("--seed", type=int, default=None,
                     help="reserved; the dynamics are deterministic")
    sim.set_defaults(fn=cmd_simulate)

    sw = sub.add_parser("sweep", parents=[common],
                        help="non-singularity sweep of one obstacle's field")
    sw.add_argument("--obstacle", type=int, required=True, help="obstacle index")
    sw.add_argument("--resolution", type=int, default=128, help="cells per axis (>= 64)")
    sw.add_argument("--margin", type=float, default=0.1,
                    help="required clearance below a half turn (rad)")
    sw.add_argument("--out", default="out", help="output directory (default: ./out)")
    sw.add_argument("--svg", choices=["on", "off"], default="on", help="emit SVG heatmap")
    sw.set_defaults(fn=cmd_sweep)

    chk = sub.add_parser("check", parents=[common],
                         help="validate a scenario and print derived quantities")
    chk.set_defaults(fn=cmd_check)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SolverError as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except HerdsimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
