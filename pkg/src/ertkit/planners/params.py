"""Planner parameters shared by all three planners."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, replace
from typing import Sequence

from ..ioutil import read_json


@dataclass(frozen=True)
class PlannerParams:
    """Knobs for the experience planners and the baseline.

    p            goal-connect attempt probability per iteration (ERT only)
    omega_min/max  phase-span sampling window for explore segments
    epsilon      per-dimension morph magnitude bound; a scalar broadcasts
    delta        validity sampling resolution; None means 1% of the world
                 bounds diameter, resolved at plan time
    timeout      modeled-seconds budget; elapsed time is modeled as
                 validity_checks * check_cost so runs are reproducible.
                 None disables the budget
    max_iterations  hard cap on planner iterations
    seed         RNG seed for the run
    check_cost   modeled seconds charged per validity check
    rrt_step     baseline extension step; None means 5% of the diameter
    """

    p: float = 0.05
    omega_min: float = 0.05
    omega_max: float = 0.1
    epsilon: float | tuple[float, ...] = 5.0
    delta: float | None = None
    timeout: float | None = 2.0
    max_iterations: int = 1_000_000
    seed: int = 0
    check_cost: float = 1e-5
    rrt_step: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if not 0.0 < self.omega_min <= self.omega_max <= 1.0:
            raise ValueError(
                f"need 0 < omega_min <= omega_max <= 1, got "
                f"({self.omega_min}, {self.omega_max})"
            )
        eps = self.epsilon
        if isinstance(eps, (list, tuple)):
            object.__setattr__(self, "epsilon", tuple(float(e) for e in eps))
            eps_values = self.epsilon
        else:
            eps_values = (float(eps),)
        for e in eps_values:
            if e < 0:
                raise ValueError("epsilon must be nonnegative")
        if self.delta is not None and self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.check_cost <= 0:
            raise ValueError("check_cost must be positive")
        if self.rrt_step is not None and self.rrt_step <= 0:
            raise ValueError("rrt_step must be positive")

    def epsilon_vector(self, dimension: int) -> tuple[float, ...]:
        """Per-dimension epsilon, broadcasting a scalar."""
        if isinstance(self.epsilon, tuple):
            if len(self.epsilon) != dimension:
                raise ValueError(
                    f"epsilon has {len(self.epsilon)} entries for "
                    f"dimension {dimension}"
                )
            return self.epsilon
        return (float(self.epsilon),) * dimension

    def check_budget(self) -> int | None:
        """Validity-check budget implied by the modeled timeout."""
        if self.timeout is None:
            return None
        # round, not truncate: 2.0 / 1e-5 lands a hair under 200000 in floats
        return max(1, round(self.timeout / self.check_cost))

    def with_updates(self, **kwargs) -> "PlannerParams":
        return replace(self, **kwargs)

    def to_json(self) -> dict:
        obj = asdict(self)
        if isinstance(obj["epsilon"], tuple):
            obj["epsilon"] = list(obj["epsilon"])
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "PlannerParams":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown params fields: {sorted(unknown)}")
        return cls(**obj)

    @classmethod
    def load(cls, file) -> "PlannerParams":
        return cls.from_json(read_json(file))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def epsilon_from_arg(value: str) -> float | tuple[float, ...]:
    """Parse an epsilon CLI value: a scalar or comma-separated per-dim list."""
    parts = [p for p in value.split(",") if p.strip()]
    if len(parts) == 1:
        return float(parts[0])
    return tuple(float(p) for p in parts)
