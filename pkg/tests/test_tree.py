import numpy as np
import pytest

from ertkit.core import FORWARD, PhasedState, phase_parametrize
from ertkit.errors import AnchorMismatch
from ertkit.planners.segments import generate_segment
from ertkit.planners.params import PlannerParams
from ertkit.planners.tree import ExperienceTree, extend
from ertkit.worlds import ValidityChecker, World


def straight_prior():
    return phase_parametrize([(0.0, 0.0), (5.0, 0.0), (10.0, 0.0)])


def connect(prior, s0, s1):
    seg, end = generate_segment(s0, s1, prior, FORWARD, PlannerParams(), None)
    return seg, end


def grown_tree(n_children=3):
    prior = straight_prior()
    tree = ExperienceTree(PhasedState((0.0, 0.0), 0.0), FORWARD)
    for i in range(n_children):
        s0 = tree.nodes[0].state
        s1 = PhasedState((1.0 + i, 0.5), 0.2 + 0.1 * i)
        seg, end = connect(prior, s0, s1)
        tree.add_child(0, seg, end)
    return prior, tree


def test_selection_probabilities_follow_inverse_weights():
    _, tree = grown_tree(3)
    tree.reweight(0, 3)
    tree.reweight(2, 1)
    p = tree.selection_probabilities()
    inv = np.array([1 / 4, 1.0, 1 / 2, 1.0])
    assert np.allclose(p, inv / inv.sum())
    assert p.sum() == pytest.approx(1.0)


def test_select_node_charges_weight():
    _, tree = grown_tree(1)
    rng = np.random.default_rng(0)
    counts = [0, 0]
    for _ in range(50):
        counts[tree.select_node(rng)] += 1
    assert sum(n.weight for n in tree.nodes) == 50
    assert counts[0] == tree.nodes[0].weight


def test_selection_decays_hot_nodes():
    _, tree = grown_tree(1)
    tree.reweight(0, 200)
    rng = np.random.default_rng(1)
    picks = [tree.draw_index(rng) for _ in range(300)]
    assert picks.count(1) > 250  # the fresh node dominates


def test_draw_index_does_not_mutate():
    _, tree = grown_tree(2)
    rng = np.random.default_rng(2)
    before = [n.weight for n in tree.nodes]
    for _ in range(20):
        tree.draw_index(rng)
    assert [n.weight for n in tree.nodes] == before


def test_add_child_rejects_unanchored_segment():
    prior, tree = grown_tree(0)
    s1 = PhasedState((2.0, 2.0), 0.4)
    seg, end = connect(prior, PhasedState((9.0, 9.0), 0.1), s1)
    with pytest.raises(AnchorMismatch):
        tree.add_child(0, seg, end)


def test_add_child_rejects_wrong_end_state():
    prior, tree = grown_tree(0)
    seg, end = connect(prior, tree.nodes[0].state, PhasedState((2.0, 2.0), 0.4))
    with pytest.raises(AnchorMismatch):
        tree.add_child(0, seg, PhasedState((2.0, 2.1), 0.4))


def test_nearest_index_ties_to_lowest():
    _, tree = grown_tree(0)
    prior = straight_prior()
    # two children at mirrored offsets, equidistant from the probe
    for dy in (1.0, -1.0):
        seg, end = connect(prior, tree.nodes[0].state, PhasedState((2.0, dy), 0.3))
        tree.add_child(0, seg, end)
    assert tree.nearest_index((2.0, 0.0)) == 1
    assert tree.nearest_index((2.0, -0.9)) == 2
    assert tree.nearest_index((0.1, 0.0)) == 0


def test_capacity_growth_keeps_answers():
    prior, tree = grown_tree(0)
    for i in range(150):  # crosses the initial 64-slot capacity
        seg, end = connect(
            prior, tree.nodes[0].state, PhasedState((1.0 + i, 1.0), 0.5)
        )
        tree.add_child(0, seg, end)
    assert len(tree) == 151
    assert tree.nearest_index((150.9, 1.0)) == 150
    p = tree.selection_probabilities()
    assert len(p) == 151 and p.sum() == pytest.approx(1.0)


def test_chain_states_dedups_junctions():
    prior = straight_prior()
    tree = ExperienceTree(PhasedState((0.0, 0.0), 0.0), FORWARD)
    seg1, end1 = connect(prior, tree.nodes[0].state, PhasedState((3.0, 1.0), 0.3))
    i1 = tree.add_child(0, seg1, end1)
    seg2, end2 = connect(prior, end1, PhasedState((6.0, 0.5), 0.6))
    i2 = tree.add_child(i1, seg2, end2)
    states = tree.chain_states(i2)
    assert states[0].q == (0.0, 0.0)
    assert states[-1].q == (6.0, 0.5)
    qs = [s.q for s in states]
    assert len(qs) == len(seg1.states) + len(seg2.states) - 1
    assert all(a != b for a, b in zip(qs, qs[1:]))


def test_extend_validates_before_adding():
    prior = straight_prior()
    world = World(kind="point2d", bounds=((-20.0, 20.0), (-20.0, 20.0)))
    checker = ValidityChecker(world, 0.5)
    tree = ExperienceTree(PhasedState((0.0, 0.0), 0.0), FORWARD)
    seg, end = connect(prior, tree.nodes[0].state, PhasedState((3.0, 0.0), 0.3))
    assert extend(tree, seg, 0, end, checker)
    assert len(tree) == 2
    # out of bounds far end: rejected, tree unchanged
    seg2, end2 = connect(prior, end, PhasedState((25.0, 0.0), 0.6))
    assert not extend(tree, seg2, 1, end2, checker)
    assert len(tree) == 2
    # anchored at the wrong node
    with pytest.raises(AnchorMismatch):
        extend(tree, seg2, 0, end2, checker)


def test_reweight_rejects_negative():
    _, tree = grown_tree(0)
    with pytest.raises(ValueError):
        tree.reweight(0, -1)
