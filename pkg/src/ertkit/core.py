"""Core types for phase-parametrized paths.

A path experience is a polyline in configuration space whose waypoints carry a
phase alpha in [0, 1] describing task progress. Micro segments are contiguous
phase slices of such a path; planners deform them without touching phases.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DegeneratePath,
    DegenerateSegment,
    DimensionMismatch,
    PhaseOutOfRange,
)
from .ioutil import read_json, write_json_atomic

Config = tuple[float, ...]

FORWARD = "forward"
BACKWARD = "backward"


def as_config(values: Iterable[float]) -> Config:
    """Coerce to a tuple of finite floats."""
    q = tuple(float(v) for v in values)
    if not q:
        raise DimensionMismatch("configuration must have at least one coordinate")
    for v in q:
        if not math.isfinite(v):
            raise ValueError(f"non-finite coordinate {v!r}")
    return q


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Euclidean distance between two configurations."""
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension {len(a)} vs {len(b)}")
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


@dataclass(frozen=True)
class PhasedState:
    """A configuration paired with its phase."""

    q: Config
    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise PhaseOutOfRange(f"phase {self.alpha} outside [0, 1]")

    @property
    def dimension(self) -> int:
        return len(self.q)


@dataclass(frozen=True)
class PathExperience:
    """Phase-parametrized polyline with strictly increasing phases 0 to 1."""

    states: tuple[PhasedState, ...]
    _alphas: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.states) < 2:
            raise DegeneratePath("a path needs at least two waypoints")
        n = self.states[0].dimension
        alphas = []
        prev = -1.0
        for s in self.states:
            if s.dimension != n:
                raise DimensionMismatch("mixed waypoint dimensions")
            if s.alpha <= prev:
                raise DegeneratePath("phases must be strictly increasing")
            prev = s.alpha
            alphas.append(s.alpha)
        if alphas[0] != 0.0 or alphas[-1] != 1.0:
            raise DegeneratePath("phases must start at 0 and end at 1")
        object.__setattr__(self, "_alphas", tuple(alphas))

    @property
    def dimension(self) -> int:
        return self.states[0].dimension

    def __len__(self) -> int:
        return len(self.states)

    def waypoints(self) -> list[Config]:
        return [s.q for s in self.states]

    def state_at(self, alpha: float) -> Config:
        """Configuration at a phase, piecewise-linear between waypoints.

        Stored waypoints are returned exactly (no arithmetic on them).
        """
        if not 0.0 <= alpha <= 1.0:
            raise PhaseOutOfRange(f"phase {alpha} outside [0, 1]")
        alphas = self._alphas
        i = bisect_left(alphas, alpha)
        if i < len(alphas) and alphas[i] == alpha:
            return self.states[i].q
        a0, a1 = alphas[i - 1], alphas[i]
        t = (alpha - a0) / (a1 - a0)
        q0, q1 = self.states[i - 1].q, self.states[i].q
        return tuple(x0 + t * (x1 - x0) for x0, x1 in zip(q0, q1))

    def extract(self, alpha_a: float, alpha_b: float) -> "MicroSegment":
        """Contiguous slice between two phases, anchored at alpha_a.

        Interior stored waypoints are kept so the slice is the exact same
        polyline over its span. States run anchor-first, so a backward slice
        (alpha_b < alpha_a) has decreasing phases.
        """
        for a in (alpha_a, alpha_b):
            if not 0.0 <= a <= 1.0:
                raise PhaseOutOfRange(f"phase {a} outside [0, 1]")
        if alpha_a == alpha_b:
            raise DegenerateSegment("zero phase span")
        lo, hi = min(alpha_a, alpha_b), max(alpha_a, alpha_b)
        first = bisect_right(self._alphas, lo)
        last = bisect_left(self._alphas, hi)  # interior: lo < alpha < hi
        interior = list(self.states[first:last])
        ends = [
            PhasedState(self.state_at(alpha_a), alpha_a),
            PhasedState(self.state_at(alpha_b), alpha_b),
        ]
        if alpha_b < alpha_a:
            interior.reverse()
        states = (ends[0], *interior, ends[1])
        return MicroSegment(
            states=states,
            anchor_alpha=alpha_a,
            span=abs(alpha_b - alpha_a),
            direction=FORWARD if alpha_b > alpha_a else BACKWARD,
        )


@dataclass(frozen=True)
class MicroSegment:
    """Phase slice of a path experience, anchored at its first state."""

    states: tuple[PhasedState, ...]
    anchor_alpha: float
    span: float
    direction: str

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"bad direction {self.direction!r}")
        if not 0.0 < self.span <= 1.0:
            raise DegenerateSegment(f"span {self.span} outside (0, 1]")
        if len(self.states) < 2:
            raise DegenerateSegment("a segment needs at least two states")
        n = self.states[0].dimension
        sign = 1.0 if self.direction == FORWARD else -1.0
        prev = None
        for s in self.states:
            if s.dimension != n:
                raise DimensionMismatch("mixed state dimensions")
            if prev is not None and sign * (s.alpha - prev) <= 0.0:
                raise DegenerateSegment("phases must be monotone along the segment")
            prev = s.alpha
        if self.states[0].alpha != self.anchor_alpha:
            raise DegenerateSegment("anchor phase must be the first state's phase")
        if abs(self.states[-1].alpha - self.anchor_alpha) != self.span:
            raise DegenerateSegment("span must match the end state's phase offset")

    @property
    def dimension(self) -> int:
        return self.states[0].dimension

    @property
    def start_state(self) -> PhasedState:
        return self.states[0]

    @property
    def end_state(self) -> PhasedState:
        return self.states[-1]


def phase_parametrize(waypoints: Sequence[Sequence[float]]) -> PathExperience:
    """Build a path experience, assigning phases by normalized arc length.

    Consecutive duplicate waypoints are dropped. Raises DegeneratePath when
    fewer than two distinct waypoints remain.
    """
    configs: list[Config] = []
    for w in waypoints:
        q = as_config(w)
        if configs and len(q) != len(configs[0]):
            raise DimensionMismatch("mixed waypoint dimensions")
        if not configs or q != configs[-1]:
            configs.append(q)
    if len(configs) < 2:
        raise DegeneratePath("fewer than two distinct waypoints")
    cumulative = [0.0]
    for a, b in zip(configs, configs[1:]):
        cumulative.append(cumulative[-1] + distance(a, b))
    total = cumulative[-1]
    alphas = [c / total for c in cumulative]
    alphas[0], alphas[-1] = 0.0, 1.0  # exact endpoints regardless of rounding
    states = tuple(PhasedState(q, a) for q, a in zip(configs, alphas))
    return PathExperience(states)


def path_to_json(path: PathExperience) -> dict:
    return {
        "dimension": path.dimension,
        "waypoints": [list(q) for q in path.waypoints()],
    }


def path_from_json(obj: dict) -> PathExperience:
    """Parse a path file object. Phases are recomputed from the waypoints."""
    if not isinstance(obj, dict):
        raise ValueError("path file must be a JSON object")
    try:
        dim = int(obj["dimension"])
        waypoints = obj["waypoints"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed path file: {exc}") from exc
    if not isinstance(waypoints, list):
        raise ValueError("waypoints must be a list")
    for w in waypoints:
        if not isinstance(w, list) or len(w) != dim:
            raise DimensionMismatch(
                f"waypoint {w!r} does not match dimension {dim}"
            )
    return phase_parametrize(waypoints)


def save_path(path: PathExperience, file) -> None:
    write_json_atomic(file, path_to_json(path))


def load_path(file) -> PathExperience:
    return path_from_json(read_json(file))


def dumps_path(path: PathExperience) -> str:
    return json.dumps(path_to_json(path), indent=2, sort_keys=True)
