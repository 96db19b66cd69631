"""Motion planners: the two experience-driven trees and the RRT baseline."""

from .ert import ert_plan
from .ertconnect import ertconnect_plan
from .params import PlannerParams
from .result import (
    INVALID_QUERY,
    PRIOR_VALID,
    SOLVED,
    TIMEOUT,
    TREE_SEARCH,
    PlanResult,
    PlanStats,
)
from .rrtconnect import rrtconnect_plan
from .segments import (
    generate_segment,
    map_path_onto_query,
    morph_segment,
    sample_segment_end,
)
from .tree import ExperienceTree, TreeNode, extend

EXPERIENCE_PLANNERS = ("ert", "ertconnect")
ALL_PLANNERS = ("ert", "ertconnect", "rrtconnect")

__all__ = [
    "ALL_PLANNERS",
    "EXPERIENCE_PLANNERS",
    "INVALID_QUERY",
    "PRIOR_VALID",
    "SOLVED",
    "TIMEOUT",
    "TREE_SEARCH",
    "ExperienceTree",
    "PlanResult",
    "PlanStats",
    "PlannerParams",
    "TreeNode",
    "ert_plan",
    "ertconnect_plan",
    "extend",
    "generate_segment",
    "map_path_onto_query",
    "morph_segment",
    "rrtconnect_plan",
    "sample_segment_end",
]
