"""Experience-driven random tree motion planning toolkit.

Plans by generalizing a single prior path: micro segments of the prior are
extracted, morphed, and stitched into trees over a configuration-phase space.
Includes a baseline bidirectional RRT, planar benchmark worlds, an experience
library, a benchmark harness, and a CLI.
"""

from .core import (
    Config,
    MicroSegment,
    PathExperience,
    PhasedState,
    distance,
    load_path,
    path_from_json,
    path_to_json,
    phase_parametrize,
    save_path,
)
from .experience import (
    ExperienceLibrary,
    load_library,
    map_experience,
    save_library,
    select_experience,
)
from .planners import (
    PlannerParams,
    PlanResult,
    PlanStats,
    ert_plan,
    ertconnect_plan,
    rrtconnect_plan,
)
from .worlds import (
    Circle,
    QueryInstance,
    Rect,
    World,
    arm_fk,
    is_valid_segment,
    is_valid_state,
    load_scenarios,
    save_scenarios,
)

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "Config",
    "ExperienceLibrary",
    "MicroSegment",
    "PathExperience",
    "PhasedState",
    "PlanResult",
    "PlanStats",
    "PlannerParams",
    "QueryInstance",
    "Rect",
    "World",
    "arm_fk",
    "distance",
    "ert_plan",
    "ertconnect_plan",
    "is_valid_segment",
    "is_valid_state",
    "load_library",
    "load_path",
    "load_scenarios",
    "map_experience",
    "path_from_json",
    "path_to_json",
    "phase_parametrize",
    "rrtconnect_plan",
    "save_library",
    "save_path",
    "save_scenarios",
    "select_experience",
]
