"""Layered SVG rendering of worlds, trees, priors, and solutions."""

from __future__ import annotations

from .core import PathExperience
from .worlds import PLANAR_ARM, Circle, Rect, World, arm_fk

SCALE = 60.0
MARGIN = 24.0


class _Canvas:
    """Maps world coordinates (y up) onto SVG coordinates (y down)."""

    def __init__(self, xlo, xhi, ylo, yhi):
        self.xlo, self.ylo, self.yhi = xlo, ylo, yhi
        self.width = (xhi - xlo) * SCALE + 2 * MARGIN
        self.height = (yhi - ylo) * SCALE + 2 * MARGIN

    def pt(self, x: float, y: float) -> tuple[float, float]:
        return (
            MARGIN + (x - self.xlo) * SCALE,
            MARGIN + (self.yhi - y) * SCALE,
        )

    def fmt(self, x: float, y: float) -> str:
        px, py = self.pt(x, y)
        return f"{px:.2f},{py:.2f}"


def _workspace_box(world: World) -> tuple[float, float, float, float]:
    if world.kind != PLANAR_ARM:
        (xlo, xhi), (ylo, yhi) = world.bounds
        return xlo, xhi, ylo, yhi
    reach = sum(world.link_lengths)
    bx, by = world.base
    xs = [bx - reach, bx + reach]
    ys = [by - reach, by + reach]
    for obs in world.obstacles:
        if isinstance(obs, Rect):
            xs += [obs.xmin, obs.xmax]
            ys += [obs.ymin, obs.ymax]
        else:
            xs += [obs.center[0] - obs.radius, obs.center[0] + obs.radius]
            ys += [obs.center[1] - obs.radius, obs.center[1] + obs.radius]
    return min(xs), max(xs), min(ys), max(ys)


def _obstacle_elements(canvas: _Canvas, world: World) -> list[str]:
    parts = []
    for obs in world.obstacles:
        if isinstance(obs, Rect):
            px, py = canvas.pt(obs.xmin, obs.ymax)
            w = (obs.xmax - obs.xmin) * SCALE
            h = (obs.ymax - obs.ymin) * SCALE
            parts.append(
                f'<rect x="{px:.2f}" y="{py:.2f}" width="{w:.2f}" height="{h:.2f}"/>'
            )
        else:
            px, py = canvas.pt(*obs.center)
            parts.append(
                f'<circle cx="{px:.2f}" cy="{py:.2f}" r="{obs.radius * SCALE:.2f}"/>'
            )
    return parts


def _polyline(canvas: _Canvas, points) -> str:
    coords = " ".join(canvas.fmt(x, y) for x, y in points)
    return f'<polyline points="{coords}"/>'


def _config_points(world: World, configs) -> list[tuple[float, float]]:
    """Workspace trace of a configuration sequence."""
    if world.kind != PLANAR_ARM:
        return [(q[0], q[1]) for q in configs]
    return [arm_fk(world, q)[-1] for q in configs]


def _arm_postures(canvas: _Canvas, world: World, path: PathExperience, n: int) -> list[str]:
    parts = []
    for k in range(n + 1):
        q = path.state_at(k / n)
        parts.append(_polyline(canvas, arm_fk(world, q)))
    return parts


def render_svg(
    world: World,
    prior: PathExperience | None = None,
    trees=(),
    solution: PathExperience | None = None,
    q_start=None,
    q_goal=None,
) -> str:
    """Compose the scene as one SVG with one group per layer."""
    xlo, xhi, ylo, yhi = _workspace_box(world)
    canvas = _Canvas(xlo, xhi, ylo, yhi)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{canvas.width:.0f}" '
        f'height="{canvas.height:.0f}" '
        f'viewBox="0 0 {canvas.width:.2f} {canvas.height:.2f}">',
        f'<rect x="0" y="0" width="{canvas.width:.2f}" height="{canvas.height:.2f}" '
        f'fill="#fafbfc"/>',
    ]

    out.append('<g id="obstacles" fill="#5b6b7d" stroke="none">')
    out.extend(_obstacle_elements(canvas, world))
    out.append("</g>")

    out.append('<g id="tree" stroke="#c3cdd8" stroke-width="1" fill="none">')
    for tree in trees:
        for node in tree.nodes:
            if node.inbound is not None:
                points = _config_points(world, [s.q for s in node.inbound.states])
                out.append(_polyline(canvas, points))
    out.append("</g>")

    out.append(
        '<g id="prior" stroke="#e3a93c" stroke-width="2.5" fill="none" '
        'stroke-dasharray="7 5">'
    )
    if prior is not None:
        out.append(_polyline(canvas, _config_points(world, prior.waypoints())))
    out.append("</g>")

    out.append('<g id="solution" stroke="#1f6fd6" stroke-width="3" fill="none">')
    if solution is not None:
        if world.kind == PLANAR_ARM:
            out.extend(_arm_postures(canvas, world, solution, 14))
        out.append(_polyline(canvas, _config_points(world, solution.waypoints())))
    out.append("</g>")

    out.append('<g id="markers" stroke="none">')
    for q, color in ((q_start, "#1a9850"), (q_goal, "#d73027")):
        if q is not None:
            if world.kind == PLANAR_ARM:
                x, y = arm_fk(world, q)[-1]
            else:
                x, y = q[0], q[1]
            px, py = canvas.pt(x, y)
            out.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="6" fill="{color}"/>')
    out.append("</g>")

    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_result(query, result, prior=None) -> str:
    """Convenience wrapper drawing everything a planner result carries."""
    return render_svg(
        query.world,
        prior=result.mapped_prior if result.mapped_prior is not None else prior,
        trees=result.trees,
        solution=result.path,
        q_start=query.q_start,
        q_goal=query.q_goal,
    )
