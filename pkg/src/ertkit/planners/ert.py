"""Single-tree experience-driven random tree planner.

Grows one tree rooted at the start state, phase 0. Each iteration picks a
node by the weighted selection law, then either tries to connect it straight
to the goal state at phase 1 (probability p) or extends it with an explore
segment morphed off the anchored prior. The anchored prior itself is tried
first and returned outright when collision free.
"""

from __future__ import annotations

from ..core import FORWARD, PhasedState, phase_parametrize
from ..errors import DegenerateSpan
from ..worlds import QueryInstance
from .common import invalid_query_result, prior_shortcut, query_ok, start_run
from .params import PlannerParams
from .result import SOLVED, TIMEOUT, TREE_SEARCH, PlanResult
from .segments import generate_segment
from .tree import ExperienceTree, extend


def ert_plan(
    query: QueryInstance, prior, params: PlannerParams | None = None
) -> PlanResult:
    params = params or PlannerParams()
    ctx = start_run(query, params, prior)
    if not query_ok(ctx):
        return invalid_query_result(ctx)
    mapped, shortcut = prior_shortcut(ctx, prior)
    if shortcut is not None:
        return shortcut

    tree = ExperienceTree(PhasedState(query.q_start, 0.0), FORWARD)
    goal = PhasedState(query.q_goal, 1.0)
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
        idx = tree.select_node(ctx.rng)
        s_init = tree.nodes[idx].state
        if ctx.rng.random() < params.p:
            if s_init.alpha >= 1.0:
                continue  # nothing left to connect across; weight already charged
            psi, s_end = generate_segment(s_init, goal, mapped, FORWARD, params, ctx.rng)
            if extend(tree, psi, idx, s_end, ctx.checker):
                leaf = len(tree) - 1
                states = tree.chain_states(leaf)
                return PlanResult(
                    status=SOLVED,
                    path=phase_parametrize([s.q for s in states]),
                    stats=ctx.stats(iterations, (len(tree),), TREE_SEARCH, None),
                    mapped_prior=mapped,
                    trees=(tree,),
                    trace=tuple(states),
                )
        else:
            try:
                psi, s_end = generate_segment(
                    s_init, None, mapped, FORWARD, params, ctx.rng
                )
            except DegenerateSpan:
                continue  # node sits at phase 1; reselect next iteration
            extend(tree, psi, idx, s_end, ctx.checker)

    return PlanResult(
        status=TIMEOUT,
        path=None,
        stats=ctx.stats(iterations, (len(tree),), None, stopped_by),
        mapped_prior=mapped,
        trees=(tree,),
    )
