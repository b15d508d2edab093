"""Static SVG renderings of 2D chamber tilings.

Hyperbolic groups are drawn in the Poincare disk (hyperboloid point
(x, y, t) maps to (x, y)/(1 + t)), Euclidean groups in the plane.  Geodesic
edges are sampled polylines.  Coordinates are rounded to 1e-4 user units so
a fixed input yields byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .diagrams import CoxeterMatrix
from .engine import SubgroupSpec, _ctx, chamber_bfs, subgroup_chamber
from .geometry import HYPERBOLIC, GeometryError

POINCARE_DISK = "poincare_disk"
EUCLIDEAN_PLANE = "euclidean_plane"

EDGE_SAMPLES = 12


@dataclass(frozen=True)
class RenderSpec:
    model: str = "auto"
    depth: int = 4
    stroke: float = 0.004
    mirror_stroke: float = 0.01
    highlight: SubgroupSpec | None = None


def _disk_point(model_pt: np.ndarray) -> np.ndarray:
    return model_pt[:2] / (1.0 + model_pt[2])


def _fmt(x: float) -> str:
    v = round(float(x), 4) + 0.0
    return f"{v:.4f}"


def _tile_outline(ctx, ch, samples: int):
    """Closed chart-coordinate outline of one tile, geodesics sampled."""
    from .engine import _tile_polytope
    from .geometry import _klein_lift

    tile = _tile_polytope(ctx, ch)
    inter = np.asarray(tile.interior)
    segs = []
    for f in tile.facets:
        lo = f.lo if math.isfinite(f.lo) else -2.0
        hi = f.hi if math.isfinite(f.hi) else 2.0
        pts = [f.chart_at(lo + (hi - lo) * k / samples) for k in range(samples + 1)]
        segs.append(pts)

    # order segments around the interior point and orient head-to-tail
    def ang(pt):
        d = pt - inter
        return math.atan2(d[1], d[0])

    segs.sort(key=lambda s: ang((np.asarray(s[0]) + np.asarray(s[-1])) / 2))
    ordered = []
    for s in segs:
        if ordered and np.linalg.norm(ordered[-1] - np.asarray(s[0])) > np.linalg.norm(
            ordered[-1] - np.asarray(s[-1])
        ):
            s = s[::-1]
        ordered.extend(np.asarray(p) for p in s)

    if ctx.space.kind == HYPERBOLIC:
        out = []
        for p in ordered:
            r2 = float(p @ p)
            if r2 >= 1:
                p = p / math.sqrt(r2) * (1 - 1e-9)
            out.append(_disk_point(_klein_lift(p)))
        return out
    return ordered


def render_svg(
    m: CoxeterMatrix, spec: RenderSpec = RenderSpec()
) -> tuple[str, int]:
    """SVG text and the number of chambers drawn."""
    ctx = _ctx(m)
    try:
        ctx.realize()
    except GeometryError as exc:
        raise GeometryError(f"group has no 2D realization: {exc}") from exc
    hyper = ctx.space.kind == HYPERBOLIC
    model = spec.model
    if model == "auto":
        model = POINCARE_DISK if hyper else EUCLIDEAN_PLANE
    if (model == POINCARE_DISK) != hyper:
        raise GeometryError(f"model {model!r} does not fit this group")

    tiling = chamber_bfs(m, spec.depth, realized=True)
    highlight_keys = set()
    if spec.highlight is not None:
        sc = subgroup_chamber(m, spec.highlight)
        highlight_keys = set(sc.chambers.chambers)

    outlines = []
    for key in sorted(tiling.chambers):
        ch = tiling.chambers[key]
        pts = _tile_outline(ctx, ch, EDGE_SAMPLES if hyper else 1)
        outlines.append((key, pts))

    if hyper:
        lo, hi = -1.05, 1.05
        box = (lo, lo, hi - lo, hi - lo)
    else:
        allp = np.vstack([np.asarray(p) for _, pts in outlines for p in pts])
        mn, mx = allp.min(axis=0) - 0.3, allp.max(axis=0) + 0.3
        box = (mn[0], mn[1], mx[0] - mn[0], mx[1] - mn[1])

    parts = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(box[0])} {_fmt(box[1])} {_fmt(box[2])} {_fmt(box[3])}">'
    )
    if hyper:
        parts.append(
            f'<circle cx="0" cy="0" r="1" fill="none" stroke="#888" '
            f'stroke-width="{_fmt(spec.stroke)}"/>'
        )
    for key, pts in outlines:
        d = "M " + " L ".join(f"{_fmt(p[0])} {_fmt(p[1])}" for p in pts) + " Z"
        fill = "#ffd27f" if key in highlight_keys else "none"
        parts.append(
            f'<path class="chamber" d="{d}" fill="{fill}" stroke="#333" '
            f'stroke-width="{_fmt(spec.stroke)}"/>'
        )
    if spec.highlight is not None:
        for hp in _highlight_mirrors(ctx, m, spec.highlight):
            parts.append(_mirror_path(ctx, hp, spec))
    parts.append("</svg>")
    return "\n".join(p for p in parts if p), len(outlines)


def _highlight_mirrors(ctx, m, h):
    sc = subgroup_chamber(m, h)
    return [ctx.root_hyperplane(np.asarray(r)) for r in sc.system.roots]


def _mirror_path(ctx, hp, spec: RenderSpec) -> str:
    from .geometry import _klein_lift, _line_param

    p0, d = _line_param(hp)
    if ctx.space.kind == HYPERBOLIC:
        # clip the chart chord to the open Klein disk
        a = float(d @ d)
        b = 2 * float(p0 @ d)
        c = float(p0 @ p0) - 1
        disc = b * b - 4 * a * c
        if disc <= 0:
            return ""
        t1 = (-b - math.sqrt(disc)) / (2 * a)
        t2 = (-b + math.sqrt(disc)) / (2 * a)
        ts = [t1 + (t2 - t1) * k / EDGE_SAMPLES for k in range(EDGE_SAMPLES + 1)]
        pts = []
        for t in ts:
            p = p0 + t * d
            r2 = float(p @ p)
            if r2 >= 1:
                p = p / math.sqrt(r2) * (1 - 1e-9)
            pts.append(_disk_point(_klein_lift(p)))
    else:
        pts = [p0 - 10 * d, p0 + 10 * d]
    path = "M " + " L ".join(f"{_fmt(p[0])} {_fmt(p[1])}" for p in pts)
    return (
        f'<path class="mirror" d="{path}" fill="none" stroke="#c0392b" '
        f'stroke-width="{_fmt(spec.mirror_stroke)}"/>'
    )
