"""Bidirectional RRT baseline with greedy connection.

Alternates the two trees every iteration: extend one tree a single step
toward a uniform sample, then let the other tree walk greedily toward the
freshly added configuration until it reaches it or collides.
"""

from __future__ import annotations

import numpy as np

from ..core import Config, distance, phase_parametrize
from ..worlds import QueryInstance
from .common import invalid_query_result, query_ok, start_run
from .params import PlannerParams
from .result import SOLVED, TIMEOUT, TREE_SEARCH, PlanResult

_TRAPPED = "trapped"
_ADVANCED = "advanced"
_REACHED = "reached"


class _Tree:
    def __init__(self, root: Config):
        self.configs: list[Config] = [root]
        self.parents: list[int | None] = [None]
        self._arr = np.empty((64, len(root)))
        self._arr[0] = root

    def __len__(self) -> int:
        return len(self.configs)

    def add(self, q: Config, parent: int) -> int:
        idx = len(self.configs)
        self.configs.append(q)
        self.parents.append(parent)
        if idx >= len(self._arr):
            self._arr = np.concatenate([self._arr, np.empty_like(self._arr)])
        self._arr[idx] = q
        return idx

    def nearest(self, q: Config) -> int:
        diffs = self._arr[: len(self.configs)] - np.asarray(q)
        return int(np.argmin((diffs * diffs).sum(axis=1)))

    def chain(self, idx: int) -> list[Config]:
        out = []
        i: int | None = idx
        while i is not None:
            out.append(self.configs[i])
            i = self.parents[i]
        out.reverse()
        return out


def _extend(tree: _Tree, q_target: Config, step: float, checker):
    near = tree.nearest(q_target)
    q_near = tree.configs[near]
    d = distance(q_near, q_target)
    if d == 0.0:
        return _REACHED, near
    reached = d <= step
    if reached:
        q_new = q_target
    else:
        t = step / d
        q_new = tuple(a + t * (b - a) for a, b in zip(q_near, q_target))
    if not checker.motion_ok(q_near, q_new):
        return _TRAPPED, None
    idx = tree.add(q_new, near)
    return (_REACHED if reached else _ADVANCED), idx


def _connect(tree: _Tree, q_target: Config, step: float, checker):
    while True:
        status, idx = _extend(tree, q_target, step, checker)
        if status != _ADVANCED:
            return status, idx


def rrtconnect_plan(
    query: QueryInstance, params: PlannerParams | None = None
) -> PlanResult:
    params = params or PlannerParams()
    ctx = start_run(query, params, None)
    if not query_ok(ctx):
        return invalid_query_result(ctx)
    world = query.world
    step = params.rrt_step if params.rrt_step is not None else 0.05 * world.diameter

    t_a, t_b = _Tree(query.q_start), _Tree(query.q_goal)
    a_is_start = True
    iterations = 0
    stopped_by = None
    while True:
        if iterations >= params.max_iterations:
            stopped_by = "max_iterations"
            break
        if ctx.out_of_budget():
            stopped_by = "timeout"
            break
        iterations += 1
        q_rand = tuple(ctx.rng.uniform(lo, hi) for lo, hi in world.bounds)
        status, new_idx = _extend(t_a, q_rand, step, ctx.checker)
        if status != _TRAPPED:
            q_new = t_a.configs[new_idx]
            status_b, reach_idx = _connect(t_b, q_new, step, ctx.checker)
            if status_b == _REACHED:
                chain_a = t_a.chain(new_idx)
                chain_b = t_b.chain(reach_idx)
                if a_is_start:
                    configs = chain_a + list(reversed(chain_b))[1:]
                else:
                    configs = chain_b + list(reversed(chain_a))[1:]
                sizes = (len(t_a), len(t_b)) if a_is_start else (len(t_b), len(t_a))
                return PlanResult(
                    status=SOLVED,
                    path=phase_parametrize(configs),
                    stats=ctx.stats(iterations, sizes, TREE_SEARCH, None),
                )
        t_a, t_b = t_b, t_a
        a_is_start = not a_is_start

    sizes = (len(t_a), len(t_b)) if a_is_start else (len(t_b), len(t_a))
    return PlanResult(
        status=TIMEOUT,
        path=None,
        stats=ctx.stats(iterations, sizes, None, stopped_by),
    )
