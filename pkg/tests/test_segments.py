import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ertkit.core import BACKWARD, FORWARD, PhasedState, phase_parametrize
from ertkit.errors import DegenerateSpan, DimensionMismatch
from ertkit.planners.params import PlannerParams
from ertkit.planners.segments import (
    generate_segment,
    map_path_onto_query,
    morph_segment,
    sample_segment_end,
)


def wavy_prior():
    return phase_parametrize(
        [(0.0, 0.0), (1.0, 0.8), (2.5, 0.3), (4.0, 1.1), (5.0, 0.0), (7.0, 0.4)]
    )


def test_morph_offset_law():
    prior = wavy_prior()
    seg = prior.extract(0.1, 0.8)
    lam, b = (0.3, -0.2), (1.0, 0.5)
    out = morph_segment(seg, lam, b)
    for src, dst in zip(seg.states, out.states):
        rho = abs(src.alpha - seg.anchor_alpha) / seg.span
        for k in range(2):
            expected = src.q[k] + rho * lam[k] + b[k]
            assert abs(dst.q[k] - expected) <= 1e-12
        assert dst.alpha == src.alpha  # phases never move


def test_morph_identity_is_exact():
    seg = wavy_prior().extract(0.2, 0.9)
    out = morph_segment(seg, (0.0, 0.0), (0.0, 0.0))
    assert [s.q for s in out.states] == [s.q for s in seg.states]


def test_morph_dimension_check():
    seg = wavy_prior().extract(0.0, 1.0)
    with pytest.raises(DimensionMismatch):
        morph_segment(seg, (1.0,), (0.0, 0.0))


@settings(max_examples=80, deadline=None)
@given(
    a=st.floats(0.0, 0.98),
    width=st.floats(0.02, 1.0),
    lam0=st.floats(-3.0, 3.0),
    lam1=st.floats(-3.0, 3.0),
    b0=st.floats(-3.0, 3.0),
    b1=st.floats(-3.0, 3.0),
)
def test_morph_offset_law_property(a, width, lam0, lam1, b0, b1):
    prior = wavy_prior()
    seg = prior.extract(a, min(a + width, 1.0))
    out = morph_segment(seg, (lam0, lam1), (b0, b1))
    for src, dst in zip(seg.states, out.states):
        rho = abs(src.alpha - seg.anchor_alpha) / seg.span
        assert dst.q[0] == pytest.approx(src.q[0] + rho * lam0 + b0, abs=1e-12)
        assert dst.q[1] == pytest.approx(src.q[1] + rho * lam1 + b1, abs=1e-12)


def test_sample_window_forward():
    params = PlannerParams(omega_min=0.05, omega_max=0.1)
    rng = np.random.default_rng(0)
    draws = [sample_segment_end(0.5, FORWARD, params, rng) for _ in range(2000)]
    assert all(0.55 <= d <= 0.60 for d in draws)
    assert min(draws) < 0.555 and max(draws) > 0.595  # actually spreads


def test_sample_window_backward():
    params = PlannerParams(omega_min=0.05, omega_max=0.1)
    rng = np.random.default_rng(1)
    draws = [sample_segment_end(0.5, BACKWARD, params, rng) for _ in range(2000)]
    assert all(0.40 <= d <= 0.45 for d in draws)


def test_sample_clamps_to_unit_range():
    params = PlannerParams(omega_min=0.05, omega_max=0.1)
    rng = np.random.default_rng(2)
    assert all(
        sample_segment_end(0.97, FORWARD, params, rng) == 1.0 for _ in range(200)
    )
    assert all(
        sample_segment_end(0.02, BACKWARD, params, rng) == 0.0 for _ in range(200)
    )


def test_sample_at_extremes_degenerate():
    params = PlannerParams()
    rng = np.random.default_rng(3)
    with pytest.raises(DegenerateSpan):
        sample_segment_end(1.0, FORWARD, params, rng)
    with pytest.raises(DegenerateSpan):
        sample_segment_end(0.0, BACKWARD, params, rng)


def test_connect_hits_both_states_exactly():
    prior = wavy_prior()
    rng = np.random.default_rng(4)
    for _ in range(200):
        a0, a1 = sorted(rng.uniform(0.0, 1.0, 2))
        if a1 - a0 < 1e-3:
            continue
        s_init = PhasedState(tuple(rng.uniform(-5, 5, 2)), a0)
        s_targ = PhasedState(tuple(rng.uniform(-5, 5, 2)), a1)
        seg, end = generate_segment(s_init, s_targ, prior, FORWARD, PlannerParams(), None)
        assert seg.states[0].q == s_init.q
        assert seg.states[-1].q == s_targ.q
        assert end.q == s_targ.q and end.alpha == a1


def test_connect_backward_phases_descend():
    prior = wavy_prior()
    s_init = PhasedState((1.0, 1.0), 0.9)
    s_targ = PhasedState((0.5, 0.5), 0.3)
    seg, end = generate_segment(s_init, s_targ, prior, BACKWARD, PlannerParams(), None)
    alphas = [s.alpha for s in seg.states]
    assert alphas[0] == 0.9 and alphas[-1] == 0.3
    assert all(x > y for x, y in zip(alphas, alphas[1:]))
    assert end.alpha == 0.3


def test_explore_tube_bound():
    prior = wavy_prior()
    params = PlannerParams(epsilon=2.0)
    rng = np.random.default_rng(5)
    for _ in range(300):
        a0 = rng.uniform(0.0, 0.95)
        s_init = PhasedState(prior.state_at(a0), a0)
        seg, end = generate_segment(s_init, None, prior, FORWARD, params, rng)
        assert seg.states[0].q == s_init.q
        # far end offset from the prior stays within epsilon * span per axis
        src = prior.state_at(end.alpha)
        for k in range(2):
            assert abs(end.q[k] - src[k]) <= 2.0 * seg.span + 1e-12


def test_explore_vector_epsilon():
    prior = wavy_prior()
    params = PlannerParams(epsilon=(0.0, 3.0))
    rng = np.random.default_rng(6)
    for _ in range(100):
        s_init = PhasedState(prior.state_at(0.2), 0.2)
        seg, end = generate_segment(s_init, None, prior, FORWARD, params, rng)
        src = prior.state_at(end.alpha)
        assert end.q[0] == pytest.approx(src[0], abs=1e-12)  # frozen axis


def test_explore_deterministic_under_seed():
    prior = wavy_prior()
    params = PlannerParams(epsilon=1.5)
    s_init = PhasedState(prior.state_at(0.3), 0.3)
    a = generate_segment(s_init, None, prior, FORWARD, params, np.random.default_rng(7))
    b = generate_segment(s_init, None, prior, FORWARD, params, np.random.default_rng(7))
    assert [s.q for s in a[0].states] == [s.q for s in b[0].states]


def test_generate_dimension_check():
    prior = wavy_prior()
    with pytest.raises(DimensionMismatch):
        generate_segment(
            PhasedState((0.0,), 0.0), None, prior, FORWARD, PlannerParams(),
            np.random.default_rng(0),
        )


def test_map_path_onto_query_contract():
    prior = wavy_prior()
    mapped = map_path_onto_query(prior, (10.0, 10.0), (12.0, 9.0))
    assert mapped.states[0].q == (10.0, 10.0)
    assert mapped.states[-1].q == (12.0, 9.0)
    assert len(mapped) == len(prior)
    # anchoring an anchored path is the identity
    again = map_path_onto_query(mapped, (10.0, 10.0), (12.0, 9.0))
    assert again.waypoints() == mapped.waypoints()
