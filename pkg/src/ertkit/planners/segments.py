"""Segment extraction, morphing, and generation.

A micro segment extracted from the prior is deformed by an affine morph
q(alpha) = q_D(alpha) + rho * lam + b, where rho runs linearly 0 to 1 from
the anchor end to the far end of the segment. Connect mode picks b and lam so
the morphed ends hit given states exactly; explore mode draws lam uniformly
inside the per-dimension tube bound epsilon * span. Phases never change.
"""

from __future__ import annotations

import numpy as np

from ..core import (
    BACKWARD,
    FORWARD,
    Config,
    MicroSegment,
    PathExperience,
    PhasedState,
)
from ..errors import DegenerateSpan, DimensionMismatch
from .params import PlannerParams


def morph_segment(psi_d: MicroSegment, lam: Config, b: Config) -> MicroSegment:
    """Apply the affine morph, leaving phases untouched.

    The offset of the result from its source at local parameter rho is
    b + rho * lam; rho is measured from the anchor end.
    """
    n = psi_d.dimension
    if len(lam) != n or len(b) != n:
        raise DimensionMismatch("lam and b must match the segment dimension")
    anchor, span = psi_d.anchor_alpha, psi_d.span
    morphed = []
    for s in psi_d.states:
        rho = abs(s.alpha - anchor) / span
        q = tuple(x + (rho * dl + db) for x, dl, db in zip(s.q, lam, b))
        morphed.append(PhasedState(q, s.alpha))
    return MicroSegment(tuple(morphed), anchor, span, psi_d.direction)


def sample_segment_end(
    alpha_init: float, direction: str, params: PlannerParams, rng: np.random.Generator
) -> float:
    """Draw the far phase of an explore segment, clamped to the unit range."""
    width = rng.uniform(params.omega_min, params.omega_max)
    if direction == FORWARD:
        if alpha_init >= 1.0:
            raise DegenerateSpan("already at phase 1, cannot sample forward")
        return min(alpha_init + width, 1.0)
    if alpha_init <= 0.0:
        raise DegenerateSpan("already at phase 0, cannot sample backward")
    return max(alpha_init - width, 0.0)


def _replace_config(state: PhasedState, q: Config) -> PhasedState:
    return PhasedState(q, state.alpha)


def _connect(s_init: PhasedState, s_targ: PhasedState, prior: PathExperience) -> MicroSegment:
    psi_d = prior.extract(s_init.alpha, s_targ.alpha)
    src0, src1 = psi_d.states[0].q, psi_d.states[-1].q
    b = tuple(qi - x for qi, x in zip(s_init.q, src0))
    lam = tuple(qt - (x + db) for qt, x, db in zip(s_targ.q, src1, b))
    psi = morph_segment(psi_d, lam, b)
    # Snap both ends so the contract "morphed ends equal the given states"
    # holds under ==, not merely to float rounding.
    states = (
        _replace_config(psi.states[0], s_init.q),
        *psi.states[1:-1],
        _replace_config(psi.states[-1], s_targ.q),
    )
    return MicroSegment(states, psi.anchor_alpha, psi.span, psi.direction)


def generate_segment(
    s_init: PhasedState,
    s_targ: PhasedState | None,
    prior: PathExperience,
    direction: str,
    params: PlannerParams,
    rng: np.random.Generator | None,
) -> tuple[MicroSegment, PhasedState]:
    """Produce a morphed segment leaving s_init, plus its far state.

    Connect mode (s_targ given) lands on s_targ exactly. Explore mode samples
    the far phase and then one lam offset per dimension, in that order, each
    |lam_i| <= epsilon_i * span.
    """
    if prior.dimension != s_init.dimension:
        raise DimensionMismatch("prior dimension does not match the query")
    if s_targ is not None:
        psi = _connect(s_init, s_targ, prior)
        return psi, psi.states[-1]
    alpha_targ = sample_segment_end(s_init.alpha, direction, params, rng)
    psi_d = prior.extract(s_init.alpha, alpha_targ)
    b = tuple(qi - x for qi, x in zip(s_init.q, psi_d.states[0].q))
    eps = params.epsilon_vector(s_init.dimension)
    span = psi_d.span
    lam = tuple(rng.uniform(-e * span, e * span) for e in eps)
    psi = morph_segment(psi_d, lam, b)
    states = (_replace_config(psi.states[0], s_init.q), *psi.states[1:])
    psi = MicroSegment(states, psi.anchor_alpha, psi.span, psi.direction)
    return psi, psi.states[-1]


def map_path_onto_query(
    prior: PathExperience, q_start: Config, q_goal: Config
) -> PathExperience:
    """Anchor a full prior onto a query via one connect-mode morph.

    The result keeps the prior's phases and satisfies result(0) == q_start and
    result(1) == q_goal. Mapping an already-anchored path changes nothing.
    """
    if prior.dimension != len(q_start) or prior.dimension != len(q_goal):
        raise DimensionMismatch("query dimension does not match the prior")
    psi = _connect(PhasedState(q_start, 0.0), PhasedState(q_goal, 1.0), prior)
    return PathExperience(psi.states)
