import json
import time

import pytest

from herdsim.cli import main as cli_main, reference_scenario_path
from herdsim.environment import ObstacleDerivation, load_scenario
from herdsim.sim import run

REFERENCE_OBSTACLES = [(10.0, 23.0, 2.0, 3.0), (-6.0, 18.0, 3.0, 4.0),
                       (11.0, 5.0, 2.0, 2.0), (15.0, 43.0, 3.0, 3.0),
                       (-2.0, 45.0, 3.0, 4.0), (12.0, 60.0, 4.0, 3.0)]

@pytest.fixture(scope="session")
def reference_cfg():
    cfg, _ = load_scenario(reference_scenario_path())
    return cfg

@pytest.fixture(scope="session")
def reference_run(reference_cfg):
    """The bundled scenario run once, shared by behavioral and acceptance tests."""
    t0 = time.perf_counter()
    trace = run(reference_cfg)
    wall = time.perf_counter() - t0
    return trace, wall

@pytest.fixture(scope="session")
def cli_artifacts(tmp_path_factory):
    """Two identical in-process `simulate` invocations into the same directory."""
    out = tmp_path_factory.mktemp("cli_run")
    t0 = time.perf_counter()
    exit1 = cli_main(["simulate", "--out", str(out)])
    wall = time.perf_counter() - t0
    first = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    exit2 = cli_main(["simulate", "--out", str(out)])
    second = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
    return {"exit1": exit1, "exit2": exit2, "first": first, "second": second,
            "wall": wall, "dir": out}

@pytest.fixture()
def derivation():
    """Shell derivation matching the bundled scenario's footprint numbers."""
    return ObstacleDerivation(formation_radius=0.65, clearance=0.2,
                              defender_clearance=0.1, defender_radius=0.1)

@pytest.fixture(scope="session")
def bundle_doc():
    return json.loads(reference_scenario_path().read_text())

def small_scenario_doc(**overrides):
    """A minimal open-field scenario the tests can bend per case."""
    doc = {
        "protected_area": {"center_m": [0.0, 0.0], "radius_m": 2.0},
        "safe_area": {"center_m": [0.0, 40.0], "radius_m": 5.0},
        "obstacles": [],
        "attacker": {
            "start_m": [0.0, 20.0],
            "body_radius_m": 0.1,
            "speed_max_mps": 1.0,
            "sensing_radius_m": 10.0,
            "deadlock_turn_rad": 0.05,
            "defender_standoff_band_m": [0.3, 0.8, 0.9],
        },
        "defenders": {
            "start_m": [[-4.0, 10.0], [0.0, 9.0], [4.0, 10.0]],
            "body_radius_m": 0.1,
            "speed_max_mps": 2.6,
            "sensing_zone_radius_m": 60.0,
            "peer_separation_band_m": [0.25, 0.32, 0.42],
        },
        "formation": {
            "arc_radius_m": 0.55,
            "spread_rad": 2.0,
            "clearance_m": 0.2,
            "defender_clearance_m": 0.1,
            "goal_tolerance_m": 0.05,
        },
        "obstacle_model": {"attacker_circle_factors": [1.1, 1.2]},
        "control": {"terminal_exponent": 0.5, "heading_rate_max_radps": 0.3},
        "capture": {"transition_time_s": 3.0, "tangent_margin_rad": 0.1,
                    "dwell_factor": 2.0},
        "integrator": {"dt_s": 0.01, "t_max_s": 60.0},
        "solver": {"tolerance": 1e-12, "max_iterations": 500},
    }
    for dotted, value in overrides.items():
        section, key = dotted.split(".")
        doc[section][key] = value
    return doc
