"""Builders for the stock surfaces used throughout: Platonic solids,
doubly covered polygons, prismatoids.  3-space shows up only here, to derive
the intrinsic face shapes; the returned surfaces are purely 2D complexes."""

from __future__ import annotations

import math

from .errors import DegenerateInput, InvalidInput
from .geom import PlanarPolygon
from .surface import Face, Surface, build_surface

PHI = (1.0 + math.sqrt(5.0)) / 2.0


def _sub3(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _norm3(a):
    return math.sqrt(_dot3(a, a))


def _scale3(a, s):
    return (a[0] * s, a[1] * s, a[2] * s)


def surface_from_polyhedron(verts, faces, label_prefix="v") -> Surface:
    """Intrinsic surface of a convex polyhedron given by 3D vertices and faces.

    Faces are index loops in arbitrary rotational order; each is reoriented
    counterclockwise as seen from outside and laid out isometrically in its
    own planar frame.  Vertices get labels ``v0``, ``v1``, ...
    """
    centroid = _scale3([sum(v[i] for v in verts) for i in range(3)], 1.0 / len(verts))
    planar_faces = []
    corner_of_vertex = {}
    loops = []
    for fid, loop in enumerate(faces):
        pts3 = [verts[i] for i in loop]
        n = _cross3(_sub3(pts3[1], pts3[0]), _sub3(pts3[2], pts3[0]))
        fc = _scale3([sum(p[i] for p in pts3) for i in range(3)], 1.0 / len(pts3))
        if _dot3(n, _sub3(fc, centroid)) < 0.0:
            loop = list(reversed(loop))
            pts3 = [verts[i] for i in loop]
            n = _cross3(_sub3(pts3[1], pts3[0]), _sub3(pts3[2], pts3[0]))
        e1 = _scale3(_sub3(pts3[1], pts3[0]), 1.0 / _norm3(_sub3(pts3[1], pts3[0])))
        nn = _scale3(n, 1.0 / _norm3(n))
        e2 = _cross3(nn, e1)
        origin = pts3[0]
        pts2 = tuple((_dot3(_sub3(p, origin), e1), _dot3(_sub3(p, origin), e2))
                     for p in pts3)
        planar_faces.append(Face(fid, pts2))
        loops.append(loop)
        for k, vi in enumerate(loop):
            corner_of_vertex.setdefault(vi, (fid, k))
    # match edges via shared 3D vertex pairs
    edge_map = {}
    gluings = {}
    for fid, loop in enumerate(loops):
        m = len(loop)
        for k in range(m):
            key = (loop[k], loop[(k + 1) % m])
            rkey = (key[1], key[0])
            if rkey in edge_map:
                gluings[(fid, k)] = edge_map.pop(rkey)
            else:
                edge_map[key] = (fid, k)
    if edge_map:
        raise DegenerateInput(f"unmatched polyhedron edges: {sorted(edge_map)}")
    labels = {f"{label_prefix}{vi}": ref for vi, ref in corner_of_vertex.items()}
    return build_surface(planar_faces, gluings, labels=labels)


def tetrahedron_surface(pts4) -> Surface:
    """Intrinsic surface of the tetrahedron on four 3D points."""
    return surface_from_polyhedron(list(pts4), [(0, 1, 2), (0, 3, 1), (0, 2, 3), (1, 3, 2)])


def regular_tetrahedron(side: float = 1.0) -> Surface:
    s = side / (2.0 * math.sqrt(2.0))
    pts = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    return tetrahedron_surface([_scale3(p, s) for p in pts])


def cube_surface(side: float = 1.0) -> Surface:
    s = side / 2.0
    verts = [(_x * s, _y * s, _z * s)
             for _x in (-1, 1) for _y in (-1, 1) for _z in (-1, 1)]
    faces = [
        (0, 1, 3, 2), (4, 6, 7, 5),  # x = -s, x = +s
        (0, 4, 5, 1), (2, 3, 7, 6),  # y
        (0, 2, 6, 4), (1, 5, 7, 3),  # z
    ]
    return surface_from_polyhedron(verts, faces)


def regular_octahedron(side: float = 1.0) -> Surface:
    s = side / math.sqrt(2.0)
    verts = [(s, 0, 0), (-s, 0, 0), (0, s, 0), (0, -s, 0), (0, 0, s), (0, 0, -s)]
    faces = [(0, 2, 4), (2, 1, 4), (1, 3, 4), (3, 0, 4),
             (2, 0, 5), (1, 2, 5), (3, 1, 5), (0, 3, 5)]
    return surface_from_polyhedron(verts, faces)


def regular_icosahedron(side: float = 1.0) -> Surface:
    s = side / 2.0
    raw = []
    for a in (-1.0, 1.0):
        for b in (-PHI, PHI):
            raw.append((0.0, a, b))
            raw.append((a, b, 0.0))
            raw.append((b, 0.0, a))
    verts = [_scale3(p, s) for p in raw]
    # faces: triples at mutual distance = side
    n = len(verts)
    faces = []
    lim = (side * 1.0001) ** 2
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                dij = sum((verts[i][t] - verts[j][t]) ** 2 for t in range(3))
                dik = sum((verts[i][t] - verts[k][t]) ** 2 for t in range(3))
                djk = sum((verts[j][t] - verts[k][t]) ** 2 for t in range(3))
                if dij < lim and dik < lim and djk < lim:
                    faces.append((i, j, k))
    if len(faces) != 20:
        raise DegenerateInput(f"icosahedron face search found {len(faces)} faces")
    return surface_from_polyhedron(verts, faces)


def regular_dodecahedron(side: float = 1.0) -> Surface:
    k = side / (2.0 / PHI)  # raw edge length is 2/phi
    raw = []
    for a in (-1.0, 1.0):
        for b in (-1.0, 1.0):
            for c in (-1.0, 1.0):
                raw.append((a, b, c))
    inv = 1.0 / PHI
    for a in (-inv, inv):
        for b in (-PHI, PHI):
            raw.append((0.0, a, b))
            raw.append((a, b, 0.0))
            raw.append((b, 0.0, a))
    verts = [_scale3(p, k) for p in raw]
    # face normals point at icosahedron vertex directions (opposite chirality
    # to the vertex coordinate family above)
    normals = []
    for a in (-1.0, 1.0):
        for b in (-PHI, PHI):
            normals.append((a, 0.0, b))
            normals.append((b, a, 0.0))
            normals.append((0.0, b, a))
    faces = []
    for nrm in normals:
        scored = sorted(range(len(verts)), key=lambda i: -_dot3(verts[i], nrm))
        ring = scored[:5]
        # order the five CCW around the normal
        c = _scale3([sum(verts[i][t] for i in ring) for t in range(3)], 0.2)
        nn = _scale3(nrm, 1.0 / _norm3(nrm))
        ref = _sub3(verts[ring[0]], c)
        e1 = _scale3(ref, 1.0 / _norm3(ref))
        e2 = _cross3(nn, e1)
        ring.sort(key=lambda i: math.atan2(_dot3(_sub3(verts[i], c), e2),
                                           _dot3(_sub3(verts[i], c), e1)))
        faces.append(tuple(ring))
    return surface_from_polyhedron(verts, faces)


def doubly_covered_polygon(poly: PlanarPolygon, label_prefix="v") -> Surface:
    """Zero-volume surface: a polygon glued to its mirror image edgewise."""
    pts = list(poly.vertices)
    n = len(pts)
    front = Face(0, tuple(pts))
    back_pts = tuple((x, -y) for x, y in reversed(pts))
    back = Face(1, back_pts)
    gluings = {}
    for i in range(n):
        gluings[(0, i)] = (1, (n - 2 - i) % n)
    labels = {f"{label_prefix}{i}": (0, i) for i in range(n)}
    return build_surface([front, back], gluings, labels=labels)


def regular_ngon(n: int, side: float = 1.0) -> PlanarPolygon:
    if n < 3:
        raise InvalidInput("regular polygon needs n > 2")
    r = side / (2.0 * math.sin(math.pi / n))
    pts = [(r * math.cos(2.0 * math.pi * k / n), r * math.sin(2.0 * math.pi * k / n))
           for k in range(n)]
    return PlanarPolygon(pts)


def doubly_covered_regular_ngon_surface(n: int, side: float = 1.0) -> Surface:
    return doubly_covered_polygon(regular_ngon(n, side))


def doubly_covered_triangle_surface(tri_pts) -> Surface:
    return doubly_covered_polygon(PlanarPolygon(tri_pts))


def prismatoid_surface(n: int, side: float, height: float, twist: float = 0.0,
                       apex_heights=None) -> Surface:
    """Regular prismatoid (optionally augmented) as an intrinsic surface.

    Two congruent regular n-gon roofs on a common axis, bottom at 0, top at
    ``height``, top rotated by ``twist``.  With ``apex_heights=(h1, h2)``
    the roofs are replaced by regular pyramids of those heights.
    """
    if n < 3:
        raise InvalidInput("prismatoid roofs need n >= 3")
    if height <= 0.0 and twist == 0.0 and apex_heights is None:
        raise DegenerateInput("height-zero prism collapses; use the doubly covered route")
    R = side / (2.0 * math.sin(math.pi / n))
    step = 2.0 * math.pi / n
    verts = []
    bottom = []
    top = []
    for i in range(n):
        verts.append((R * math.cos(step * i), R * math.sin(step * i), 0.0))
        bottom.append(i)
    for i in range(n):
        verts.append((R * math.cos(step * i + twist), R * math.sin(step * i + twist), height))
        top.append(n + i)
    faces = []
    # lateral band: triangles (u_i, u_{i+1}, w_i) and (w_i, w_{i+1}, u_{i+1})
    for i in range(n):
        faces.append((bottom[i], bottom[(i + 1) % n], top[i]))
        faces.append((top[i], top[(i + 1) % n], bottom[(i + 1) % n]))
    if apex_heights is None:
        faces.append(tuple(reversed(bottom)))
        faces.append(tuple(top))
    else:
        h1, h2 = apex_heights
        if h1 <= 0.0 or h2 <= 0.0:
            raise DegenerateInput("pyramid apex heights must be positive")
        a1 = len(verts)
        verts.append((0.0, 0.0, -h1))
        a2 = len(verts)
        verts.append((0.0, 0.0, height + h2))
        for i in range(n):
            faces.append((bottom[(i + 1) % n], bottom[i], a1))
            faces.append((top[i], top[(i + 1) % n], a2))
    return surface_from_polyhedron(verts, faces)
