"""Trees of phased states connected by validated micro segments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import MicroSegment, PhasedState
from ..errors import AnchorMismatch
from ..worlds import ValidityChecker


@dataclass
class TreeNode:
    state: PhasedState
    parent: int | None
    inbound: MicroSegment | None
    weight: int = 0


class ExperienceTree:
    """Rooted tree whose node selection favors rarely-picked nodes.

    Selection draws node i with probability proportional to 1/(weight_i + 1)
    and increments the drawn node's weight, so repeatedly picked nodes decay.
    """

    def __init__(self, root: PhasedState, direction: str):
        self.direction = direction
        self.nodes: list[TreeNode] = [TreeNode(root, None, None)]
        self._inv = np.ones(64)
        self._configs = np.empty((64, root.dimension))
        self._configs[0] = root.q

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def root(self) -> PhasedState:
        return self.nodes[0].state

    def _grow(self, n: int) -> None:
        if n > len(self._inv):
            self._inv = np.concatenate([self._inv, np.ones(len(self._inv))])
        if n > len(self._configs):
            self._configs = np.concatenate(
                [self._configs, np.empty_like(self._configs)]
            )

    def selection_probabilities(self) -> np.ndarray:
        inv = self._inv[: len(self.nodes)]
        return inv / inv.sum()

    def draw_index(self, rng: np.random.Generator) -> int:
        """Sample a node index from the selection law without mutating."""
        return int(rng.choice(len(self.nodes), p=self.selection_probabilities()))

    def reweight(self, idx: int, weight: int) -> None:
        """Set a node's weight, keeping the cached inverse weights in step."""
        if weight < 0:
            raise ValueError("weights are non-negative")
        self.nodes[idx].weight = weight
        self._inv[idx] = 1.0 / (weight + 1)

    def select_node(self, rng: np.random.Generator) -> int:
        """Draw a node and charge it: its weight always increments."""
        idx = self.draw_index(rng)
        self.reweight(idx, self.nodes[idx].weight + 1)
        return idx

    def add_child(self, parent: int, segment: MicroSegment, state: PhasedState) -> int:
        """Append a node reached from `parent` through `segment`."""
        if segment.states[0].q != self.nodes[parent].state.q:
            raise AnchorMismatch("segment start does not equal the parent config")
        if segment.states[-1].q != state.q:
            raise AnchorMismatch("segment end does not equal the new node config")
        idx = len(self.nodes)
        self._grow(idx + 1)
        self.nodes.append(TreeNode(state, parent, segment))
        self._inv[idx] = 1.0
        self._configs[idx] = state.q
        return idx

    def nearest_index(self, q) -> int:
        """Index of the config-space nearest node; ties go to the lowest index."""
        diffs = self._configs[: len(self.nodes)] - np.asarray(q)
        return int(np.argmin((diffs * diffs).sum(axis=1)))

    def chain_states(self, idx: int) -> list[PhasedState]:
        """States from the root to node `idx`, junction duplicates removed."""
        indices = []
        i: int | None = idx
        while i is not None:
            indices.append(i)
            i = self.nodes[i].parent
        indices.reverse()
        states = [self.nodes[indices[0]].state]
        for i in indices[1:]:
            states.extend(self.nodes[i].inbound.states[1:])
        return states


def extend(
    tree: ExperienceTree,
    psi: MicroSegment,
    from_index: int,
    s_end: PhasedState,
    checker: ValidityChecker,
) -> bool:
    """Validate psi and, when collision free, add its far state to the tree.

    Returns True when the tree advanced, False when validation failed.
    """
    anchor = tree.nodes[from_index].state
    if psi.states[0].q != anchor.q or psi.states[0].alpha != anchor.alpha:
        raise AnchorMismatch("segment is not anchored at the given tree node")
    if not checker.segment_ok(psi):
        return False
    tree.add_child(from_index, psi, s_end)
    return True
