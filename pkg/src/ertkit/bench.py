"""Benchmark harness: scenario generation, experience building, run matrix.

Scenarios are desk-scale side views of a storage unit standing in the right
half of a 10 x 10 workspace: back panel, top and bottom caps, tier slabs, and
a front panel with one opening per tier. The query starts in the open area on
the left and ends inside a target tier. Four sets of increasing difficulty:

  set 1  no obstacles at all, target band of the middle tier
  set 2  the unit plus clutter discs, middle tier targets
  set 3  the unit plus clutter, targets across all tiers
  set 4  a narrower unit (more tiers, tighter openings), clutter, and a
         jittered unit pose

Every generated instance is checked for connectivity on a fine occupancy
grid, so reported failure rates measure planner behavior, not impossible
queries.
"""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import PathExperience
from .errors import EmptyLibrary, EmptyRecords, GenerationFailed, TemplateInfeasible
from .experience import ExperienceLibrary, select_experience
from .ioutil import write_json_atomic, write_text_atomic
from .planners import (
    PlannerParams,
    PlanResult,
    ert_plan,
    ertconnect_plan,
    rrtconnect_plan,
)
from .worlds import (
    CLEARANCE_FACTOR,
    Circle,
    Obstacle,
    QueryInstance,
    Rect,
    World,
    is_valid_state,
)

BOUNDS = ((0.0, 10.0), (0.0, 10.0))
UNIT_X = (6.0, 9.4)
UNIT_Y = (1.2, 8.8)
PANEL = 0.2
START_X = (1.0, 2.6)
START_Y = (3.0, 7.0)
GOAL_MARGIN = 0.3
GRID_RES = 0.08

CSV_HEADER = "scenario,planner,lib_size,rep,seed,status,elapsed_s,iterations,validity_checks"

_PLANNER_CODES = {"rrtconnect": 0, "ert": 1, "ertconnect": 2}


@dataclass(frozen=True)
class ShelfTemplate:
    """Geometry knobs for one scenario set."""

    tiers: int = 3
    gap_width: tuple[float, float] = (1.1, 1.5)
    gap_position: tuple[float, float] = (0.0, 1.0)  # fraction of the tier slack
    front_depth: float = PANEL  # thickness of the front face, openings included
    clutter_count: tuple[int, int] = (2, 4)
    clutter_radius: tuple[float, float] = (0.2, 0.32)
    room_clutter_count: tuple[int, int] = (3, 5)  # discs in the corner bands
    target_tiers: tuple[int, int] = (1, 1)
    unit_jitter: float = 0.0  # +- half-range for the unit pose offset
    shelf: bool = True

    def tier_height(self) -> float:
        cavity = (UNIT_Y[1] - UNIT_Y[0]) - 2 * PANEL
        return (cavity - (self.tiers - 1) * PANEL) / self.tiers


@dataclass(frozen=True)
class ScenarioSpec:
    set_id: int
    count: int
    seed: int
    template: ShelfTemplate

    def __post_init__(self):
        if self.set_id not in (1, 2, 3, 4):
            raise ValueError(f"set_id must be 1..4, got {self.set_id}")
        if self.count < 1:
            raise ValueError("count must be at least 1")


def template_for_set(set_id: int) -> ShelfTemplate:
    if set_id == 1:
        return ShelfTemplate(
            shelf=False,
            clutter_count=(0, 0),
            room_clutter_count=(0, 0),
            target_tiers=(1, 1),
        )
    if set_id == 2:
        return ShelfTemplate()
    if set_id == 3:
        return ShelfTemplate(target_tiers=(0, 2))
    if set_id == 4:
        return ShelfTemplate(
            tiers=4,
            gap_width=(0.62, 0.9),
            clutter_count=(2, 4),
            clutter_radius=(0.16, 0.26),
            room_clutter_count=(4, 6),
            target_tiers=(0, 3),
            unit_jitter=0.35,
        )
    raise ValueError(f"set_id must be 1..4, got {set_id}")


def spec_for_set(set_id: int, count: int, seed: int) -> ScenarioSpec:
    return ScenarioSpec(set_id, count, seed, template_for_set(set_id))


def _check_template(t: ShelfTemplate) -> None:
    h = t.tier_height()
    if h <= 0:
        raise TemplateInfeasible("tier slabs leave no cavity height")
    if t.shelf:
        diam = math.sqrt(sum((hi - lo) ** 2 for lo, hi in BOUNDS))
        if t.gap_width[0] < 3 * 0.01 * diam:
            raise TemplateInfeasible("openings narrower than the check resolution")
        if t.gap_width[1] > h:
            raise TemplateInfeasible("openings taller than a tier")
        if t.front_depth >= (UNIT_X[1] - UNIT_X[0]) - PANEL - 1.0:
            raise TemplateInfeasible("front face leaves no cavity depth")
    if not 0 <= t.target_tiers[0] <= t.target_tiers[1] < t.tiers:
        raise TemplateInfeasible("target tier range outside the unit")
    if t.clutter_count[1] > 0 and 2 * t.clutter_radius[1] >= h - 2 * GOAL_MARGIN:
        raise TemplateInfeasible("clutter too large for a tier")


def _unit_rects(t: ShelfTemplate, dx: float, dy: float, gaps) -> list[Rect]:
    """Panels of the unit at pose offset (dx, dy); gaps is one (lo, hi)
    opening interval per tier on the front face."""
    x0, x1 = UNIT_X[0] + dx, UNIT_X[1] + dx
    y0, y1 = UNIT_Y[0] + dy, UNIT_Y[1] + dy

    def rect(xa, xb, ya, yb):
        return Rect(
            center=((xa + xb) / 2, (ya + yb) / 2),
            half_extents=((xb - xa) / 2, (yb - ya) / 2),
        )

    rects = [
        rect(x1 - PANEL, x1, y0, y1),  # back
        rect(x0, x1, y0, y0 + PANEL),  # bottom cap
        rect(x0, x1, y1 - PANEL, y1),  # top cap
    ]
    h = t.tier_height()
    for k in range(t.tiers):
        tier_lo = y0 + PANEL + k * (h + PANEL)
        tier_hi = tier_lo + h
        if k < t.tiers - 1:
            rects.append(rect(x0, x1, tier_hi, tier_hi + PANEL))  # slab above tier k
        gap_lo, gap_hi = gaps[k]
        if gap_lo > tier_lo + 1e-9:
            rects.append(rect(x0, x0 + t.front_depth, tier_lo, gap_lo))
        if gap_hi < tier_hi - 1e-9:
            rects.append(rect(x0, x0 + t.front_depth, gap_hi, tier_hi))
    return rects


def _tier_band(t: ShelfTemplate, tier: int, dy: float) -> tuple[float, float]:
    h = t.tier_height()
    lo = UNIT_Y[0] + dy + PANEL + tier * (h + PANEL)
    return lo, lo + h


def _grid_solvable(world: World, q_start, q_goal, margin: float = 0.0) -> bool:
    """Connectivity of start and goal on an occupancy grid of the world.

    Occupancy uses the same obstacle margin the planners plan with, so a
    certificate here means the margined free space is connected too.
    """
    (xlo, xhi), (ylo, yhi) = world.bounds
    xs = np.arange(xlo + GRID_RES / 2, xhi, GRID_RES)
    ys = np.arange(ylo + GRID_RES / 2, yhi, GRID_RES)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    blocked = np.zeros(gx.shape, dtype=bool)
    for obs in world.obstacles:
        if isinstance(obs, Rect):
            blocked |= (
                (gx >= obs.xmin - margin)
                & (gx <= obs.xmax + margin)
                & (gy >= obs.ymin - margin)
                & (gy <= obs.ymax + margin)
            )
        else:
            cx, cy = obs.center
            r = obs.radius + margin
            blocked |= (gx - cx) ** 2 + (gy - cy) ** 2 <= r * r
    free = ~blocked

    def cell(q):
        i = int(np.clip((q[0] - xlo) / GRID_RES, 0, len(xs) - 1))
        j = int(np.clip((q[1] - ylo) / GRID_RES, 0, len(ys) - 1))
        return i, j

    start, goal = cell(q_start), cell(q_goal)
    if not (free[start] and free[goal]):
        return False
    seen = np.zeros_like(free)
    seen[start] = True
    queue = deque([start])
    nx, ny = free.shape
    while queue:
        i, j = queue.popleft()
        if (i, j) == goal:
            return True
        for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            a, b = i + di, j + dj
            if 0 <= a < nx and 0 <= b < ny and free[a, b] and not seen[a, b]:
                seen[a, b] = True
                queue.append((a, b))
    return False


def _draw_instance(spec: ScenarioSpec, rng: np.random.Generator, label: str):
    """One candidate instance; draw order is fixed for reproducibility."""
    t = spec.template
    dx = rng.uniform(-t.unit_jitter, t.unit_jitter) if t.unit_jitter > 0 else 0.0
    dy = rng.uniform(-t.unit_jitter, t.unit_jitter) if t.unit_jitter > 0 else 0.0

    obstacles: list[Obstacle] = []
    if t.shelf:
        gaps = []
        h = t.tier_height()
        for k in range(t.tiers):
            width = rng.uniform(*t.gap_width)
            pos = rng.uniform(*t.gap_position)
            tier_lo, _ = _tier_band(t, k, dy)
            gap_lo = tier_lo + pos * (h - width)
            gaps.append((gap_lo, gap_lo + width))
        obstacles.extend(_unit_rects(t, dx, dy, gaps))

    tier = int(rng.integers(t.target_tiers[0], t.target_tiers[1] + 1))
    band_lo, band_hi = _tier_band(t, tier, dy)
    x0, x1 = UNIT_X[0] + dx, UNIT_X[1] + dx
    front = x0 + (t.front_depth if t.shelf else PANEL)
    q_goal = (
        rng.uniform(front + 0.4, x1 - PANEL - 0.4),
        rng.uniform(band_lo + GOAL_MARGIN, band_hi - GOAL_MARGIN),
    )

    n_clutter = int(rng.integers(t.clutter_count[0], t.clutter_count[1] + 1))
    for _ in range(n_clutter):
        for _attempt in range(50):
            radius = rng.uniform(*t.clutter_radius)
            ctier = int(rng.integers(0, t.tiers))
            clo, chi = _tier_band(t, ctier, dy)
            cx = rng.uniform(front + radius + 0.2, x1 - PANEL - radius - 0.05)
            cy = rng.uniform(clo + radius + 0.05, chi - radius - 0.05)
            if (cx - q_goal[0]) ** 2 + (cy - q_goal[1]) ** 2 > (radius + GOAL_MARGIN) ** 2:
                obstacles.append(Circle(center=(cx, cy), radius=radius))
                break

    # Scene dressing away from the task route: discs in the corner bands of
    # the open area, clear of the start box and the unit.
    n_room = int(rng.integers(t.room_clutter_count[0], t.room_clutter_count[1] + 1))
    for _ in range(n_room):
        radius = rng.uniform(*t.clutter_radius)
        band = int(rng.integers(0, 2))
        cx = rng.uniform(0.6 + radius, 4.8 - radius)
        cy = rng.uniform(0.3 + radius, 1.8 - radius) if band == 0 else (
            rng.uniform(8.2 + radius, 9.7 - radius)
        )
        obstacles.append(Circle(center=(cx, cy), radius=radius))

    q_start = (rng.uniform(*START_X), rng.uniform(*START_Y))
    world = World(kind="point2d", bounds=BOUNDS, obstacles=tuple(obstacles))
    return QueryInstance(world=world, q_start=q_start, q_goal=q_goal, label=label)


def generate_scenarios(spec: ScenarioSpec) -> list[QueryInstance]:
    """Deterministic instance list for one set; every instance is solvable."""
    _check_template(spec.template)
    rng = np.random.default_rng(np.random.SeedSequence((spec.seed, spec.set_id)))
    instances = []
    for i in range(spec.count):
        label = f"set{spec.set_id}-{i:04d}"
        for _attempt in range(50):
            inst = _draw_instance(spec, rng, label)
            # screen with the planners' margin so accepted queries stay
            # plannable, not merely valid
            margin = CLEARANCE_FACTOR * inst.world.default_delta
            if not is_valid_state(inst.world, inst.q_start, margin):
                continue
            if not is_valid_state(inst.world, inst.q_goal, margin):
                continue
            if inst.world.obstacles and not _grid_solvable(
                inst.world, inst.q_start, inst.q_goal, margin
            ):
                continue
            instances.append(inst)
            break
        else:
            raise TemplateInfeasible(
                f"no solvable instance for {label} after 50 attempts"
            )
    return instances


def derive_seed(*parts: int) -> int:
    """Stable 64-bit seed from integer coordinates of a run."""
    ss = np.random.SeedSequence(tuple(int(p) for p in parts))
    return int(ss.generate_state(1, np.uint64)[0])


def build_experience_library(
    count: int, seed: int, params: PlannerParams | None = None
) -> ExperienceLibrary:
    """Solve obstacle-free middle-tier instances with the baseline planner
    and keep only the paths; the generator instances are discarded."""
    spec = ScenarioSpec(1, count, seed, template_for_set(1))
    instances = generate_scenarios(spec)
    gen_params = (params or PlannerParams()).with_updates(timeout=30.0)
    library = ExperienceLibrary()
    for i, inst in enumerate(instances):
        result = rrtconnect_plan(
            inst, gen_params.with_updates(seed=derive_seed(seed, 9000 + i))
        )
        if result.status != "solved":
            raise GenerationFailed(i)
        library.append(result.path)
    return library


@dataclass
class BenchmarkRecord:
    scenario: str
    planner: str
    lib_size: int
    rep: int
    seed: int
    status: str
    elapsed_s: float
    iterations: int
    validity_checks: int
    wall_s: float = 0.0
    result: PlanResult | None = field(default=None, repr=False, compare=False)

    def csv_row(self) -> str:
        return (
            f"{self.scenario},{self.planner},{self.lib_size},{self.rep},"
            f"{self.seed},{self.status},{self.elapsed_s!r},{self.iterations},"
            f"{self.validity_checks}"
        )


def _run_one(task, library: ExperienceLibrary, params: PlannerParams) -> BenchmarkRecord:
    inst, inst_idx, planner, lib_size, rep = task
    seed = derive_seed(params.seed, inst_idx, _PLANNER_CODES[planner], lib_size, rep)
    run_params = params.with_updates(seed=seed)
    if planner == "rrtconnect":
        result = rrtconnect_plan(inst, run_params)
    else:
        prior = select_experience(library.prefix(lib_size), inst.q_start, inst.q_goal)
        plan = ert_plan if planner == "ert" else ertconnect_plan
        result = plan(inst, prior, run_params)
    return BenchmarkRecord(
        scenario=inst.label,
        planner=planner,
        lib_size=lib_size,
        rep=rep,
        seed=seed,
        status=result.status,
        elapsed_s=result.stats.elapsed_seconds,
        iterations=result.stats.iterations,
        validity_checks=result.stats.validity_checks,
        wall_s=result.stats.wall_seconds,
        result=result,
    )


def run_benchmark(
    instances: Sequence[QueryInstance],
    library: ExperienceLibrary,
    planners: Sequence[str] = ("ert", "ertconnect"),
    lib_sizes: Sequence[int] = (1,),
    reps: int = 5,
    params: PlannerParams | None = None,
    max_workers: int | None = None,
) -> list[BenchmarkRecord]:
    """Run every (instance, planner, library size, rep) cell plus the
    baseline once per (instance, rep). Record order and content depend only
    on the inputs, never on scheduling."""
    params = params or PlannerParams()
    experience_planners = [p for p in planners if p != "rrtconnect"]
    for p in experience_planners:
        if p not in _PLANNER_CODES:
            raise ValueError(f"unknown planner {p!r}")
    sizes = sorted(set(int(s) for s in lib_sizes))
    if experience_planners:
        if len(library) == 0:
            raise EmptyLibrary("benchmark needs a non-empty library")
        for s in sizes:
            if not 1 <= s <= len(library):
                raise ValueError(f"lib size {s} outside 1..{len(library)}")

    tasks = []
    for inst_idx, inst in enumerate(instances):
        for rep in range(reps):
            tasks.append((inst, inst_idx, "rrtconnect", 0, rep))
            for planner in experience_planners:
                for size in sizes:
                    tasks.append((inst, inst_idx, planner, size, rep))

    if max_workers is None:
        max_workers = max(1, int(os.environ.get("ERTKIT_THREADS", "1")))
    if max_workers == 1:
        records = [_run_one(t, library, params) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(lambda t: _run_one(t, library, params), tasks))
    records.sort(key=lambda r: (r.scenario, r.planner, r.lib_size, r.rep))
    return records


def records_to_csv(records: Sequence[BenchmarkRecord]) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.csv_row() for r in records)
    return "\n".join(lines) + "\n"


def write_records_csv(records: Sequence[BenchmarkRecord], file) -> None:
    write_text_atomic(file, records_to_csv(records))


def _set_label(scenario: str) -> str:
    return scenario.split("-")[0] if "-" in scenario else scenario


def summarize(records: Sequence[BenchmarkRecord]) -> dict:
    """Success rates and solve-time stats per (planner, set, library size).

    Time stats are over solved runs and use modeled elapsed seconds; the wall
    median is informational.
    """
    if not records:
        raise EmptyRecords("no records to summarize")
    groups: dict[tuple, list[BenchmarkRecord]] = {}
    for r in records:
        groups.setdefault((r.planner, _set_label(r.scenario), r.lib_size), []).append(r)
    out = []
    for (planner, set_label, lib_size), rs in sorted(groups.items()):
        solved = [r for r in rs if r.status == "solved"]
        times = [r.elapsed_s for r in solved]
        entry = {
            "planner": planner,
            "set": set_label,
            "lib_size": lib_size,
            "n": len(rs),
            "solved": len(solved),
            "success_rate": len(solved) / len(rs),
            "median_s": float(np.median(times)) if times else None,
            "mean_s": float(np.mean(times)) if times else None,
            "p95_s": float(np.percentile(times, 95)) if times else None,
            "wall_median_s": (
                float(np.median([r.wall_s for r in solved])) if solved else None
            ),
        }
        out.append(entry)
    return {"groups": out}


def write_summary_json(summary: dict, file) -> None:
    write_json_atomic(file, summary)
