"""Planar worlds and collision checking.

Two world kinds: a point robot in the plane (configuration = position) and a
planar revolute arm (configuration = joint angles, collision on every link).
Obstacles are closed sets; touching a boundary counts as collision. Motions
are validated by sampling states along the straight configuration-space edge
at power-of-two bisection spacing, so refining the resolution only adds
sample points and a collision found at some resolution is found at every
finer one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .core import Config, MicroSegment, PathExperience, as_config, distance
from .errors import DimensionMismatch, InvalidScenario
from .ioutil import read_json, write_json_atomic

POINT2D = "point2d"
PLANAR_ARM = "planar_arm"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by center and half extents."""

    center: tuple[float, float]
    half_extents: tuple[float, float]
    xmin: float = field(init=False, repr=False, compare=False)
    xmax: float = field(init=False, repr=False, compare=False)
    ymin: float = field(init=False, repr=False, compare=False)
    ymax: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cx, cy = self.center
        hx, hy = self.half_extents
        if hx <= 0 or hy <= 0:
            raise ValueError("rect half extents must be positive")
        object.__setattr__(self, "xmin", cx - hx)
        object.__setattr__(self, "xmax", cx + hx)
        object.__setattr__(self, "ymin", cy - hy)
        object.__setattr__(self, "ymax", cy + hy)

    def hits_point(self, x: float, y: float, margin: float = 0.0) -> bool:
        return (
            self.xmin - margin <= x <= self.xmax + margin
            and self.ymin - margin <= y <= self.ymax + margin
        )

    def hits_segment(self, p0, p1, margin: float = 0.0) -> bool:
        # Liang-Barsky clip of the parametric segment against the slab pairs.
        x0, y0 = p0
        dx, dy = p1[0] - x0, p1[1] - y0
        t0, t1 = 0.0, 1.0
        for p, q in (
            (-dx, x0 - (self.xmin - margin)),
            (dx, (self.xmax + margin) - x0),
            (-dy, y0 - (self.ymin - margin)),
            (dy, (self.ymax + margin) - y0),
        ):
            if p == 0.0:
                if q < 0.0:
                    return False
            else:
                r = q / p
                if p < 0.0:
                    if r > t0:
                        t0 = r
                else:
                    if r < t1:
                        t1 = r
                if t0 > t1:
                    return False
        return True


@dataclass(frozen=True)
class Circle:
    """Disc obstacle."""

    center: tuple[float, float]
    radius: float

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("circle radius must be positive")

    def hits_point(self, x: float, y: float, margin: float = 0.0) -> bool:
        cx, cy = self.center
        r = self.radius + margin
        return (x - cx) ** 2 + (y - cy) ** 2 <= r * r

    def hits_segment(self, p0, p1, margin: float = 0.0) -> bool:
        cx, cy = self.center
        vx, vy = p1[0] - p0[0], p1[1] - p0[1]
        wx, wy = cx - p0[0], cy - p0[1]
        vv = vx * vx + vy * vy
        if vv == 0.0:
            t = 0.0
        else:
            t = (wx * vx + wy * vy) / vv
            t = 0.0 if t < 0.0 else (1.0 if t > 1.0 else t)
        dx, dy = wx - t * vx, wy - t * vy
        r = self.radius + margin
        return dx * dx + dy * dy <= r * r


Obstacle = Rect | Circle


@dataclass(frozen=True)
class World:
    """Planar world: bounds per configuration dimension plus obstacles.

    For the planar arm, bounds are joint bounds and must sit within [-pi, pi];
    link_lengths gives one length per joint and base the shoulder position.
    """

    kind: str
    bounds: tuple[tuple[float, float], ...]
    obstacles: tuple[Obstacle, ...] = ()
    link_lengths: tuple[float, ...] | None = None
    base: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        if self.kind not in (POINT2D, PLANAR_ARM):
            raise ValueError(f"unknown world kind {self.kind!r}")
        for lo, hi in self.bounds:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError(f"bad bound ({lo}, {hi})")
        if self.kind == POINT2D:
            if len(self.bounds) != 2:
                raise DimensionMismatch("point2d worlds are two-dimensional")
        else:
            if self.link_lengths is None:
                raise ValueError("planar_arm worlds need link_lengths")
            if len(self.link_lengths) != len(self.bounds):
                raise DimensionMismatch("one link length per joint required")
            for length in self.link_lengths:
                if length <= 0:
                    raise ValueError("link lengths must be positive")
            for lo, hi in self.bounds:
                if lo < -math.pi or hi > math.pi:
                    raise ValueError("joint bounds must sit within [-pi, pi]")

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @property
    def diameter(self) -> float:
        """Euclidean diagonal of the bounds box."""
        return math.sqrt(sum((hi - lo) ** 2 for lo, hi in self.bounds))

    @property
    def default_delta(self) -> float:
        return 0.01 * self.diameter


def arm_fk(world: World, q: Sequence[float]) -> list[tuple[float, float]]:
    """Joint positions (base included) under cumulative link angles."""
    if world.kind != PLANAR_ARM:
        raise ValueError("arm_fk needs a planar_arm world")
    if len(q) != world.dimension:
        raise DimensionMismatch(f"expected {world.dimension} joints, got {len(q)}")
    points = [world.base]
    angle = 0.0
    x, y = world.base
    for theta, length in zip(q, world.link_lengths):
        angle += theta
        x += length * math.cos(angle)
        y += length * math.sin(angle)
        points.append((x, y))
    return points


def is_valid_state(world: World, q: Sequence[float], margin: float = 0.0) -> bool:
    """Bounds check plus collision check against obstacles grown by margin."""
    if len(q) != world.dimension:
        raise DimensionMismatch(f"expected dimension {world.dimension}, got {len(q)}")
    for v, (lo, hi) in zip(q, world.bounds):
        if v < lo or v > hi:
            return False
    if world.kind == POINT2D:
        x, y = q
        for obs in world.obstacles:
            if obs.hits_point(x, y, margin):
                return False
        return True
    points = arm_fk(world, q)
    for p0, p1 in zip(points, points[1:]):
        for obs in world.obstacles:
            if obs.hits_segment(p0, p1, margin):
                return False
    return True


def _subdivisions(length: float, delta: float) -> int:
    """Smallest power of two m with length/m <= delta."""
    m = 1
    while length / m > delta:
        m *= 2
    return m


# Planner-side clearance as a fraction of delta. A motion whose samples all
# clear obstacles grown by 0.6 * delta keeps true clearance of at least
# 0.1 * delta everywhere between samples (samples sit at most delta apart),
# so re-checking an accepted motion at any finer resolution cannot flip it.
CLEARANCE_FACTOR = 0.6


class ValidityChecker:
    """Collision checking with a shared state-evaluation counter.

    Planners route every check through one instance so stats.validity_checks
    counts actual state evaluations, early exits included. A nonzero margin
    grows every obstacle, trading a little free space for resolution-proof
    acceptances; see CLEARANCE_FACTOR.
    """

    def __init__(self, world: World, delta: float, margin: float = 0.0):
        if delta <= 0:
            raise ValueError("delta must be positive")
        if margin < 0:
            raise ValueError("margin must be nonnegative")
        self.world = world
        self.delta = float(delta)
        self.margin = float(margin)
        self.checks = 0

    def state_ok(self, q: Sequence[float]) -> bool:
        self.checks += 1
        return is_valid_state(self.world, q, self.margin)

    def motion_ok(self, q0: Config, q1: Config) -> bool:
        """Straight-edge validity: endpoints plus bisection interior samples."""
        if not self.state_ok(q0):
            return False
        return self._tail_ok(q0, q1)

    def _tail_ok(self, q0: Config, q1: Config) -> bool:
        """Edge validity assuming q0 was already checked."""
        if not self.state_ok(q1):
            return False
        length = distance(q0, q1)
        if length == 0.0:
            return True
        m = _subdivisions(length, self.delta)
        step = m // 2
        while step >= 1:
            for k in range(step, m, 2 * step):
                t = k / m
                q = tuple(a + t * (b - a) for a, b in zip(q0, q1))
                if not self.state_ok(q):
                    return False
            step //= 2
        return True

    def _chain_ok(self, configs) -> bool:
        # Shared junctions are checked once, not once per adjacent edge.
        if not self.state_ok(configs[0]):
            return False
        for q0, q1 in zip(configs, configs[1:]):
            if not self._tail_ok(q0, q1):
                return False
        return True

    def segment_ok(self, segment: MicroSegment) -> bool:
        return self._chain_ok([s.q for s in segment.states])

    def path_ok(self, path: PathExperience) -> bool:
        return self._chain_ok([s.q for s in path.states])


def is_valid_segment(world: World, segment: MicroSegment, delta: float) -> bool:
    """Edge-by-edge motion validity at resolution delta, endpoints included."""
    return ValidityChecker(world, delta).segment_ok(segment)


def is_valid_motion(world: World, q0, q1, delta: float) -> bool:
    return ValidityChecker(world, delta).motion_ok(as_config(q0), as_config(q1))


@dataclass(frozen=True)
class QueryInstance:
    """A world plus start and goal configurations."""

    world: World
    q_start: Config
    q_goal: Config
    label: str = ""

    def __post_init__(self):
        if len(self.q_start) != self.world.dimension:
            raise DimensionMismatch("q_start dimension does not match world")
        if len(self.q_goal) != self.world.dimension:
            raise DimensionMismatch("q_goal dimension does not match world")


def _obstacle_to_json(obs: Obstacle) -> dict:
    if isinstance(obs, Rect):
        return {
            "type": "rect",
            "center": list(obs.center),
            "half_extents": list(obs.half_extents),
        }
    return {"type": "circle", "center": list(obs.center), "radius": obs.radius}


def _obstacle_from_json(obj: dict) -> Obstacle:
    kind = obj.get("type")
    if kind == "rect":
        return Rect(
            center=tuple(float(v) for v in obj["center"]),
            half_extents=tuple(float(v) for v in obj["half_extents"]),
        )
    if kind == "circle":
        return Circle(
            center=tuple(float(v) for v in obj["center"]),
            radius=float(obj["radius"]),
        )
    raise ValueError(f"unknown obstacle type {kind!r}")


def scenario_to_json(instance: QueryInstance) -> dict:
    world = instance.world
    obj = {
        "kind": world.kind,
        "bounds": [list(b) for b in world.bounds],
        "obstacles": [_obstacle_to_json(o) for o in world.obstacles],
        "q_start": list(instance.q_start),
        "q_goal": list(instance.q_goal),
        "label": instance.label,
    }
    if world.kind == PLANAR_ARM:
        obj["link_lengths"] = list(world.link_lengths)
        obj["base"] = list(world.base)
    return obj


def scenario_from_json(obj: dict, validate: bool = True) -> QueryInstance:
    """Parse one scenario object; start and goal validity is checked here."""
    try:
        world = World(
            kind=obj["kind"],
            bounds=tuple(tuple(float(v) for v in b) for b in obj["bounds"]),
            obstacles=tuple(_obstacle_from_json(o) for o in obj.get("obstacles", [])),
            link_lengths=(
                tuple(float(v) for v in obj["link_lengths"])
                if "link_lengths" in obj
                else None
            ),
            base=tuple(float(v) for v in obj.get("base", (0.0, 0.0))),
        )
        instance = QueryInstance(
            world=world,
            q_start=as_config(obj["q_start"]),
            q_goal=as_config(obj["q_goal"]),
            label=str(obj.get("label", "")),
        )
    except KeyError as exc:
        raise ValueError(f"scenario file missing key {exc}") from exc
    if validate:
        if not is_valid_state(world, instance.q_start):
            raise InvalidScenario(f"invalid start in scenario {instance.label!r}")
        if not is_valid_state(world, instance.q_goal):
            raise InvalidScenario(f"invalid goal in scenario {instance.label!r}")
    return instance


def save_scenarios(instances: Sequence[QueryInstance], file) -> None:
    write_json_atomic(file, [scenario_to_json(inst) for inst in instances])


def load_scenarios(file, validate: bool = True) -> list[QueryInstance]:
    """Load a suite (array) or a single scenario (object) file."""
    obj = read_json(file)
    if isinstance(obj, dict):
        return [scenario_from_json(obj, validate=validate)]
    return [scenario_from_json(item, validate=validate) for item in obj]
