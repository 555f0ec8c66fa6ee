"""Planar development of cut surfaces, overlap reporting, and SVG output."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import TopologyError
from .geom import PlanarPolygon, Rigid2, is_simple, v_dist, v_dot, v_sub
from .surface import Surface


@dataclass
class Development:
    placed: dict                 # face_id -> Rigid2 (face frame -> plane)
    outline: PlanarPolygon
    creases: list = field(default_factory=list)   # (p, q, tag)
    markers: dict = field(default_factory=dict)   # name -> (x, y)
    surface: Surface | None = None


def develop(surface: Surface, root: int | None = None) -> Development:
    """Flatten a cut surface into the plane by breadth-first face placement.

    The glued complex must be developable (simply connected with all cone
    points on the boundary); any non-tree gluing that fails to line up
    raises TopologyError.  Deterministic: root face is the lowest id and
    neighbors expand in (face id, edge index) order.
    """
    if not surface.boundary_edges():
        raise TopologyError("closed surface has no development; cut it first")
    if root is None:
        root = min(surface.faces)
    placed = {root: Rigid2.identity()}
    queue = [root]
    tree_edges = set()
    while queue:
        f = queue.pop(0)
        face = surface.faces[f]
        for e in range(face.n):
            part = surface.partner((f, e))
            if part is None:
                continue
            g = part[0]
            if g in placed:
                continue
            # transform mapping g's frame onto f's frame, then into the plane
            M = surface.edge_transform((f, e))
            placed[g] = placed[f].compose(M)
            tree_edges.add(frozenset(((f, e), tuple(part))))
            queue.append(g)
    if len(placed) != len(surface.faces):
        raise TopologyError("cut surface is disconnected")
    # verify non-tree gluings close up flat
    snap = 1e-6 * max(1.0, surface.scale)
    for a, b in surface.gluings.items():
        if a > b or frozenset((a, b)) in tree_edges:
            continue
        fa, ea = a
        pa0, pa1 = surface.faces[fa].edge(ea)
        fb, eb = b
        pb0, pb1 = surface.faces[fb].edge(eb)
        qa0 = placed[fa].apply(pa0)
        qa1 = placed[fa].apply(pa1)
        qb0 = placed[fb].apply(pb0)
        qb1 = placed[fb].apply(pb1)
        if v_dist(qa0, qb1) > snap or v_dist(qa1, qb0) > snap:
            raise TopologyError(
                "cut set leaves a cone point interior to the development")

    # outline from the boundary walks (a developable surface has exactly one)
    walks = surface.boundary_walks()
    if len(walks) != 1:
        raise TopologyError(f"development needs one boundary walk, found {len(walks)}")
    outline_pts = []
    for (f, e) in walks[0]:
        a, _ = surface.faces[f].edge(e)
        outline_pts.append(placed[f].apply(a))
    outline = PlanarPolygon(_drop_duplicates(outline_pts, snap))

    creases = []
    for a, b in surface.gluings.items():
        if a > b:
            continue
        f, e = a
        p0, p1 = surface.faces[f].edge(e)
        creases.append((placed[f].apply(p0), placed[f].apply(p1), "internal"))

    markers = {}
    for name, (f, c) in surface.labels.items():
        markers[name] = placed[f].apply(surface.faces[f].pts[c])
    return Development(placed, outline, creases, markers, surface)


def _drop_duplicates(pts, snap):
    out = []
    for p in pts:
        if not out or v_dist(out[-1], p) > snap:
            out.append(p)
    if len(out) > 1 and v_dist(out[0], out[-1]) <= snap:
        out.pop()
    return out


# ---------------------------------------------------------------------------
# overlap reporting


def _convex_overlap(ptsa, ptsb, eps):
    """Interiors of two convex CCW polygons intersect (separating axis)."""
    for pts in (ptsa, ptsb):
        n = len(pts)
        for i in range(n):
            a = pts[i]
            b = pts[(i + 1) % n]
            axis = (a[1] - b[1], b[0] - a[0])  # inward normal for CCW
            la = max(v_dot(axis, p) for p in ptsa)
            sa = min(v_dot(axis, p) for p in ptsa)
            lb = max(v_dot(axis, p) for p in ptsb)
            sb = min(v_dot(axis, p) for p in ptsb)
            scale = math.hypot(*axis) or 1.0
            if min(la, lb) - max(sa, sb) <= eps * scale:
                return False
    return True


def overlap_report(dev: Development):
    """Simplicity of the outline plus pairwise placed-face interior overlap.

    Shared boundary segments do not count as overlap.
    """
    simple = is_simple(dev.outline)
    witnesses = []
    faces = []
    if dev.surface is not None:
        for f, M in dev.placed.items():
            faces.append((f, [M.apply(p) for p in dev.surface.faces[f].pts]))
        eps = 1e-9 * max(1.0, dev.surface.scale)
        for i in range(len(faces)):
            for j in range(i + 1, len(faces)):
                if _convex_overlap(faces[i][1], faces[j][1], eps):
                    witnesses.append((faces[i][0], faces[j][0]))
    return {"simple": simple and not witnesses, "outline_simple": simple,
            "witnesses": witnesses}


# ---------------------------------------------------------------------------
# SVG


def emit_svg(dev: Development, options=None) -> str:
    """Deterministic SVG: outline as a closed path, source creases solid,
    target creases dashed, labeled markers, 5% padded viewBox."""
    opts = {"stroke": 0.01, "label_markers": True}
    opts.update(options or {})
    pts = list(dev.outline.vertices)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    for p, q, _ in dev.creases:
        xs += [p[0], q[0]]
        ys += [p[1], q[1]]
    minx, maxx = min(xs), max(xs)
    miny, maxy = min(ys), max(ys)
    w = maxx - minx or 1.0
    h = maxy - miny or 1.0
    pad = 0.05 * max(w, h)
    vb = (_r(minx - pad), _r(miny - pad), _r(w + 2 * pad), _r(h + 2 * pad))
    sw = _r(opts["stroke"] * max(w, h))

    lines = []
    lines.append('<?xml version="1.0" encoding="UTF-8"?>')
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vb[0]} {vb[1]} {vb[2]} {vb[3]}">')
    lines.append(f'<g transform="translate(0,{_r(2 * miny + h)}) scale(1,-1)">')
    path = "M " + " L ".join(f"{_r(x)},{_r(y)}" for x, y in pts) + " Z"
    lines.append(f'<path d="{path}" fill="#f5f2e8" stroke="#222222" stroke-width="{sw}"/>')
    styles = {
        "source": f'stroke="#b03030" stroke-width="{sw}"',
        "target": f'stroke="#3050b0" stroke-width="{sw}" stroke-dasharray="{_r(4 * float(sw))},{_r(2 * float(sw))}"',
        "internal": f'stroke="#bbbbbb" stroke-width="{_r(0.5 * float(sw))}"',
    }
    for p, q, tag in sorted(dev.creases, key=lambda c: (c[2], c[0], c[1])):
        style = styles.get(tag, styles["internal"])
        lines.append(f'<line x1="{_r(p[0])}" y1="{_r(p[1])}" x2="{_r(q[0])}" '
                     f'y2="{_r(q[1])}" {style}/>')
    if opts["label_markers"]:
        r = _r(1.5 * float(sw))
        for name in sorted(dev.markers):
            x, y = dev.markers[name]
            lines.append(f'<circle cx="{_r(x)}" cy="{_r(y)}" r="{r}" fill="#208040"/>')
            lines.append(f'<text x="{_r(x)}" y="{_r(y)}" font-size="{_r(6 * float(sw))}" '
                         f'fill="#104020" transform="scale(1,-1) translate(0,{_r(-2 * y)})">'
                         f'{name}</text>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _r(x) -> str:
    """Round to 9 decimals with a stable textual form."""
    v = round(float(x), 9)
    if v == 0.0:
        v = 0.0
    s = f"{v:.9f}".rstrip("0").rstrip(".")
    return s if s not in ("-0", "") else "0"
