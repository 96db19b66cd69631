"""Shared run scaffolding for the planners."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..core import PathExperience
from ..errors import DimensionMismatch
from ..worlds import CLEARANCE_FACTOR, QueryInstance, ValidityChecker
from .params import PlannerParams
from .result import (
    INVALID_QUERY,
    PRIOR_VALID,
    SOLVED,
    PlanResult,
    PlanStats,
)
from .segments import map_path_onto_query


@dataclass
class RunContext:
    query: QueryInstance
    params: PlannerParams
    checker: ValidityChecker
    rng: np.random.Generator
    budget: int | None
    wall_start: float

    def out_of_budget(self) -> bool:
        return self.budget is not None and self.checker.checks >= self.budget

    def stats(self, iterations: int, tree_sizes: tuple[int, ...],
              solved_by: str | None, stopped_by: str | None) -> PlanStats:
        checks = self.checker.checks
        return PlanStats(
            iterations=iterations,
            validity_checks=checks,
            tree_sizes=tree_sizes,
            elapsed_seconds=checks * self.params.check_cost,
            wall_seconds=time.perf_counter() - self.wall_start,
            solved_by=solved_by,
            stopped_by=stopped_by,
        )


def start_run(query: QueryInstance, params: PlannerParams,
              prior: PathExperience | None) -> RunContext:
    world = query.world
    if prior is not None and prior.dimension != world.dimension:
        raise DimensionMismatch("prior dimension does not match the world")
    delta = params.delta if params.delta is not None else world.default_delta
    return RunContext(
        query=query,
        params=params,
        checker=ValidityChecker(world, delta, margin=CLEARANCE_FACTOR * delta),
        rng=np.random.default_rng(params.seed),
        budget=params.check_budget(),
        wall_start=time.perf_counter(),
    )


def invalid_query_result(ctx: RunContext) -> PlanResult:
    return PlanResult(
        status=INVALID_QUERY,
        path=None,
        stats=ctx.stats(0, (), None, None),
    )


def query_ok(ctx: RunContext) -> bool:
    return ctx.checker.state_ok(ctx.query.q_start) and ctx.checker.state_ok(
        ctx.query.q_goal
    )


def prior_shortcut(ctx: RunContext, prior: PathExperience):
    """Anchor the prior onto the query; return (mapped, result-or-None).

    When the anchored prior is already collision free the planner returns it
    directly with zero tree nodes.
    """
    mapped = map_path_onto_query(prior, ctx.query.q_start, ctx.query.q_goal)
    if ctx.checker.path_ok(mapped):
        result = PlanResult(
            status=SOLVED,
            path=mapped,
            stats=ctx.stats(0, (), PRIOR_VALID, None),
            mapped_prior=mapped,
            trace=mapped.states,
        )
        return mapped, result
    return mapped, None
