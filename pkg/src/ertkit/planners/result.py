"""Planner outcome types."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import PathExperience, PhasedState, path_to_json

SOLVED = "solved"
TIMEOUT = "timeout"
INVALID_QUERY = "invalid_query"

PRIOR_VALID = "prior_valid"
TREE_SEARCH = "tree_search"


@dataclass
class PlanStats:
    """Run statistics. elapsed_seconds is modeled (validity_checks times the
    per-check cost) so identical seeds give identical stats; wall_seconds is
    the measured wall clock and carries no reproducibility promise."""

    iterations: int = 0
    validity_checks: int = 0
    tree_sizes: tuple[int, ...] = ()
    elapsed_seconds: float = 0.0
    wall_seconds: float = 0.0
    solved_by: str | None = None
    stopped_by: str | None = None

    def to_json(self) -> dict:
        return {
            "iterations": self.iterations,
            "validity_checks": self.validity_checks,
            "tree_sizes": list(self.tree_sizes),
            "elapsed_seconds": self.elapsed_seconds,
            "wall_seconds": self.wall_seconds,
            "solved_by": self.solved_by,
            "stopped_by": self.stopped_by,
        }


@dataclass
class PlanResult:
    """Outcome of one planning run.

    The extra fields after stats are in-memory instrumentation (the anchored
    prior, the trees, and the solution states in prior phases); they stay out
    of the serialized form.
    """

    status: str
    path: PathExperience | None
    stats: PlanStats
    mapped_prior: PathExperience | None = field(default=None, repr=False)
    trees: tuple = field(default=(), repr=False)
    trace: tuple[PhasedState, ...] | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "path": path_to_json(self.path) if self.path is not None else None,
            "stats": self.stats.to_json(),
        }
