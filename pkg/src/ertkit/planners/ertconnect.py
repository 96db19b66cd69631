"""Bidirectional experience-driven random tree planner.

Two trees grow toward each other: one from the start at phase 0 exploring
forward, one from the goal at phase 1 exploring backward. After every
successful explore extension the other tree tries a connect-mode bridge to
the new state from its config-space nearest node; trees swap roles each
iteration. A successful bridge joins the trees at the new state.
"""

from __future__ import annotations

from ..core import BACKWARD, FORWARD, PhasedState, distance, phase_parametrize
from ..errors import DegenerateSpan
from ..worlds import QueryInstance
from .common import invalid_query_result, prior_shortcut, query_ok, start_run
from .params import PlannerParams
from .result import SOLVED, TIMEOUT, TREE_SEARCH, PlanResult
from .segments import generate_segment
from .tree import ExperienceTree, extend

EXTREME_TOLERANCE = 1e-9


def ertconnect_plan(
    query: QueryInstance, prior, params: PlannerParams | None = None
) -> PlanResult:
    params = params or PlannerParams()
    ctx = start_run(query, params, prior)
    if not query_ok(ctx):
        return invalid_query_result(ctx)
    mapped, shortcut = prior_shortcut(ctx, prior)
    if shortcut is not None:
        return shortcut

    t_start = ExperienceTree(PhasedState(query.q_start, 0.0), FORWARD)
    t_goal = ExperienceTree(PhasedState(query.q_goal, 1.0), BACKWARD)
    active, other = t_start, t_goal
    iterations = 0
    stopped_by = None

    def solved(states) -> PlanResult:
        return PlanResult(
            status=SOLVED,
            path=phase_parametrize([s.q for s in states]),
            stats=ctx.stats(
                iterations, (len(t_start), len(t_goal)), TREE_SEARCH, None
            ),
            mapped_prior=mapped,
            trees=(t_start, t_goal),
            trace=tuple(states),
        )

    while True:
        if iterations >= params.max_iterations:
            stopped_by = "max_iterations"
            break
        if ctx.out_of_budget():
            stopped_by = "timeout"
            break
        iterations += 1
        idx = active.select_node(ctx.rng)
        s_init = active.nodes[idx].state
        try:
            psi, s_end = generate_segment(
                s_init, None, mapped, active.direction, params, ctx.rng
            )
        except DegenerateSpan:
            continue  # node already at its extreme; same tree retries
        if extend(active, psi, idx, s_end, ctx.checker):
            leaf = len(active) - 1
            other_root = other.root
            if s_end.alpha == other_root.alpha and (
                distance(s_end.q, other_root.q) <= EXTREME_TOLERANCE
            ):
                # Ran into the far extreme outright; snap to the exact root.
                states = active.chain_states(leaf)
                states[-1] = PhasedState(other_root.q, s_end.alpha)
                if active is t_goal:
                    states.reverse()
                return solved(states)
            near = other.nearest_index(s_end.q)
            s_near = other.nodes[near].state
            if s_near.alpha != s_end.alpha:
                bridge, bridge_end = generate_segment(
                    s_near, s_end, mapped, other.direction, params, ctx.rng
                )
                if extend(other, bridge, near, bridge_end, ctx.checker):
                    if active is t_start:
                        states = active.chain_states(leaf)
                        states += list(reversed(bridge.states))[1:]
                        states += list(reversed(other.chain_states(near)))[1:]
                    else:
                        states = other.chain_states(near)
                        states += list(bridge.states)[1:]
                        states += list(reversed(active.chain_states(leaf)))[1:]
                    return solved(states)
        active, other = other, active

    return PlanResult(
        status=TIMEOUT,
        path=None,
        stats=ctx.stats(iterations, (len(t_start), len(t_goal)), None, stopped_by),
        mapped_prior=mapped,
        trees=(t_start, t_goal),
    )
