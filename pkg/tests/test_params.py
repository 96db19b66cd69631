import json

import pytest

from ertkit.planners.params import PlannerParams, epsilon_from_arg


def test_defaults():
    p = PlannerParams()
    assert p.p == 0.05
    assert (p.omega_min, p.omega_max) == (0.05, 0.1)
    assert p.epsilon == 5.0
    assert p.timeout == 2.0
    assert p.check_cost == 1e-5
    assert p.delta is None and p.rrt_step is None


@pytest.mark.parametrize(
    "kwargs",
    [
        {"p": 1.5},
        {"p": -0.1},
        {"omega_min": 0.0},
        {"omega_min": 0.3, "omega_max": 0.2},
        {"omega_max": 1.2},
        {"epsilon": -1.0},
        {"epsilon": (1.0, -2.0)},
        {"delta": 0.0},
        {"timeout": -1.0},
        {"max_iterations": 0},
        {"check_cost": 0.0},
        {"rrt_step": -0.5},
    ],
)
def test_validation(kwargs):
    with pytest.raises(ValueError):
        PlannerParams(**kwargs)


def test_epsilon_vector_broadcast():
    assert PlannerParams(epsilon=2.0).epsilon_vector(3) == (2.0, 2.0, 2.0)
    assert PlannerParams(epsilon=(1.0, 2.0)).epsilon_vector(2) == (1.0, 2.0)
    with pytest.raises(ValueError):
        PlannerParams(epsilon=(1.0, 2.0)).epsilon_vector(3)


def test_epsilon_list_normalized_to_tuple():
    p = PlannerParams(epsilon=[1.0, 2.0])
    assert p.epsilon == (1.0, 2.0)


def test_check_budget():
    assert PlannerParams(timeout=2.0, check_cost=1e-5).check_budget() == 200_000
    assert PlannerParams(timeout=None).check_budget() is None
    assert PlannerParams(timeout=1e-9, check_cost=1.0).check_budget() == 1


def test_with_updates_keeps_original():
    base = PlannerParams(seed=1)
    bumped = base.with_updates(seed=2, timeout=5.0)
    assert base.seed == 1 and base.timeout == 2.0
    assert bumped.seed == 2 and bumped.timeout == 5.0


def test_json_roundtrip(tmp_path):
    p = PlannerParams(epsilon=(1.0, 2.5), seed=42, delta=0.05)
    again = PlannerParams.from_json(json.loads(p.dumps()))
    assert again == p
    file = tmp_path / "params.json"
    file.write_text(p.dumps())
    assert PlannerParams.load(file) == p


def test_unknown_field_rejected():
    with pytest.raises(ValueError, match="unknown"):
        PlannerParams.from_json({"seed": 1, "bogus": 2})


def test_epsilon_from_arg():
    assert epsilon_from_arg("1.5") == 1.5
    assert epsilon_from_arg("1.5,2.0,0.5") == (1.5, 2.0, 0.5)
