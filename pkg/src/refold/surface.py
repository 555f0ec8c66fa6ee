"""Intrinsic polyhedral surfaces: planar faces glued edge-to-edge.

A surface is a set of counterclockwise planar faces, each living in its own
coordinate frame, plus orientation-reversing edge identifications.  All
curvature bookkeeping (cocurvature, smooth vertices, Gauss-Bonnet) happens
on vertex orbits of this complex.  Nothing is ever embedded in 3-space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (ConvexityError, DegenerateInput, GluingLengthError,
                     TopologyError, VertexCollision)
from .geom import (DEFAULT_TOL, Rigid2, Tolerance, TWO_PI, interior_angle,
                   segment_intersection_param, v_add, v_cross, v_dist, v_dot,
                   v_lerp, v_norm, v_rot, v_scale, v_sub, v_unit)

EdgeRef = tuple  # (face_id, edge_index)
CornerRef = tuple  # (face_id, corner_index)


@dataclass(frozen=True)
class Face:
    """One planar face in its own frame; vertices counterclockwise."""

    id: int
    pts: tuple

    def __post_init__(self):
        if len(self.pts) < 3:
            raise DegenerateInput("face needs at least 3 vertices")

    @property
    def n(self) -> int:
        return len(self.pts)

    def edge(self, k: int):
        return self.pts[k], self.pts[(k + 1) % self.n]

    def edge_length(self, k: int) -> float:
        a, b = self.edge(k)
        return v_dist(a, b)

    def corner_angle(self, k: int) -> float:
        n = self.n
        return interior_angle(self.pts[(k - 1) % n], self.pts[k], self.pts[(k + 1) % n])

    def area(self) -> float:
        acc = 0.0
        for k in range(self.n):
            a, b = self.edge(k)
            acc += a[0] * b[1] - b[0] * a[1]
        return 0.5 * acc

    def contains(self, p, eps: float) -> bool:
        """Point-in-face for convex faces (all our faces are convex)."""
        for k in range(self.n):
            a, b = self.edge(k)
            if (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) < -eps:
                return False
        return True


@dataclass(frozen=True)
class SurfacePoint:
    """A point on the surface: a face and planar coordinates in its frame."""

    face: int
    xy: tuple


@dataclass
class GeodesicSegment:
    """A straight path on the surface.

    ``chords`` lists, per visited face, the straight sub-segment in that
    face's frame.  Unrolling the chain of faces develops the chords onto a
    single straight planar segment.
    """

    chords: list  # [(face_id, p, q), ...]
    length: float
    start: SurfacePoint
    end: SurfacePoint
    start_vertex: Optional[CornerRef] = None  # corner ref when endpoint is a vertex
    end_vertex: Optional[CornerRef] = None
    crossings: list = field(default_factory=list)  # [(edge_ref, u), ...] per chord joint


class Surface:
    """Face-gluing complex; closed when every face edge is glued."""

    def __init__(self, faces: Iterable[Face], gluings, labels=None,
                 tol: Tolerance = DEFAULT_TOL, check: bool = True):
        self.faces = {f.id: f for f in faces}
        if len(self.faces) == 0:
            raise DegenerateInput("surface needs at least one face")
        glu = {}
        for a, b in dict(gluings).items():
            a, b = tuple(a), tuple(b)
            glu[a] = b
            glu[b] = a
        self.gluings = glu
        self.labels = dict(labels or {})  # name -> CornerRef
        self.tol = tol
        self._trace_snap = None
        self._validate_refs()
        if check:
            self._check_gluing_lengths()
        self._build_orbits()
        self._boundary_walks = None

    # -- structural helpers ------------------------------------------------

    def _validate_refs(self):
        for (f, e), (g, j) in self.gluings.items():
            if f not in self.faces or g not in self.faces:
                raise DegenerateInput(f"gluing references missing face {(f, g)}")
            if not (0 <= e < self.faces[f].n) or not (0 <= j < self.faces[g].n):
                raise DegenerateInput("gluing references missing edge")
        for name, (f, c) in self.labels.items():
            if f not in self.faces or not (0 <= c < self.faces[f].n):
                raise DegenerateInput(f"label {name!r} references missing corner")

    def _check_gluing_lengths(self):
        for a, b in self.gluings.items():
            if a > b:
                continue
            la = self.faces[a[0]].edge_length(a[1])
            lb = self.faces[b[0]].edge_length(b[1])
            if not self.tol.len_eq(la, lb):
                raise GluingLengthError(f"edges {a} and {b} have lengths {la} != {lb}")

    def partner(self, edge: EdgeRef):
        return self.gluings.get(tuple(edge))

    def is_boundary_edge(self, edge: EdgeRef) -> bool:
        return tuple(edge) not in self.gluings

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges()

    def boundary_edges(self):
        out = []
        for f in self.faces.values():
            for e in range(f.n):
                if (f.id, e) not in self.gluings:
                    out.append((f.id, e))
        return out

    def total_area(self) -> float:
        return sum(f.area() for f in self.faces.values())

    @property
    def scale(self) -> float:
        return math.sqrt(max(self.total_area(), 1e-300))

    @property
    def snap(self) -> float:
        if self._trace_snap is None:
            self._trace_snap = 1e-9 * max(1.0, self.scale)
        return self._trace_snap

    # -- vertex orbits -----------------------------------------------------

    def _next_corner(self, corner: CornerRef):
        """Rotate one step around the vertex (crossing the outgoing edge)."""
        f, i = corner
        p = self.gluings.get((f, i))
        if p is None:
            return None
        g, j = p
        return (g, (j + 1) % self.faces[g].n)

    def _prev_corner(self, corner: CornerRef):
        """Rotate the other way (crossing the incoming edge)."""
        f, i = corner
        n = self.faces[f].n
        p = self.gluings.get((f, (i - 1) % n))
        if p is None:
            return None
        return p  # (g, j): its start corner sits at the same vertex

    def _build_orbits(self):
        seen = {}
        orbits = []
        for f in self.faces.values():
            for i in range(f.n):
                c = (f.id, i)
                if c in seen:
                    continue
                orbit = [c]
                seen[c] = len(orbits)
                closed = False
                cur = c
                while True:
                    nxt = self._next_corner(cur)
                    if nxt is None:
                        break
                    if nxt == c:
                        closed = True
                        break
                    orbit.append(nxt)
                    seen[nxt] = len(orbits)
                    cur = nxt
                if not closed:
                    cur = c
                    while True:
                        prv = self._prev_corner(cur)
                        if prv is None or prv == c:
                            break
                        orbit.insert(0, prv)
                        seen[prv] = len(orbits)
                        cur = prv
                orbits.append((tuple(orbit), closed))
        self.orbits = [o for o, _ in orbits]
        self.orbit_closed = [c for _, c in orbits]
        self.orbit_of = seen
        self._cocurv = [
            sum(self.faces[f].corner_angle(i) for f, i in orbit)
            for orbit in self.orbits
        ]

    def cocurvature(self, v: int) -> float:
        """Sum of face corner angles incident to vertex orbit v."""
        return self._cocurv[v]

    def curvature(self, v: int) -> float:
        return TWO_PI - self._cocurv[v]

    @property
    def vertex_count(self) -> int:
        return len(self.orbits)

    def vertex_position(self, v: int) -> SurfacePoint:
        f, i = self.orbits[v][0]
        return SurfacePoint(f, self.faces[f].pts[i])

    def orbit_index(self, corner: CornerRef) -> int:
        return self.orbit_of[tuple(corner)]

    def label_vertex(self, name: str) -> int:
        """Orbit index of a labeled vertex."""
        return self.orbit_of[tuple(self.labels[name])]

    def vertex_labels(self, v: int):
        mine = set(self.orbits[v])
        return sorted(name for name, ref in self.labels.items() if tuple(ref) in mine)

    def euler_characteristic(self) -> int:
        V = len(self.orbits)
        n_glued = len(self.gluings) // 2
        n_bound = sum(1 for _ in self.boundary_edges())
        E = n_glued + n_bound
        F = len(self.faces)
        return V - E + F

    def smooth_vertices(self):
        return [v for v in range(len(self.orbits))
                if abs(self._cocurv[v] - math.pi) <= self.tol.eps_ang]

    def real_vertices(self):
        """Orbits that are actual cone points (cocurvature below a full angle)."""
        return [v for v in range(len(self.orbits))
                if self._cocurv[v] < TWO_PI - self.tol.eps_ang]

    def curvature_multiset(self):
        return sorted(self.curvature(v) for v in self.real_vertices())

    # -- boundary walks ------------------------------------------------------

    def boundary_walks(self):
        """Boundary cycles as lists of directed edges (surface on the left)."""
        if self._boundary_walks is None:
            bset = set(self.boundary_edges())
            walks = []
            remaining = set(bset)
            while remaining:
                start = min(remaining)
                walk = []
                cur = start
                while True:
                    walk.append(cur)
                    remaining.discard(cur)
                    f, e = cur
                    c = (f, (e + 1) % self.faces[f].n)
                    while True:
                        if (c[0], c[1]) not in self.gluings:
                            cur = c
                            break
                        g, j = self.gluings[(c[0], c[1])]
                        c = (g, (j + 1) % self.faces[g].n)
                    if cur == start:
                        break
                walks.append(walk)
            self._boundary_walks = walks
        return self._boundary_walks

    # -- transforms and tracing ----------------------------------------------

    def edge_transform(self, edge: EdgeRef) -> Rigid2:
        """Rigid motion carrying the partner face's frame onto this edge's frame."""
        f, e = edge
        g, j = self.gluings[(f, e)]
        a, b = self.faces[f].edge(e)
        c, d = self.faces[g].edge(j)
        # orientation-reversing identification: start<->end
        return Rigid2.from_segment_map(c, d, b, a)

    def corner_dirs(self, corner: CornerRef):
        """(toward next vertex, toward previous vertex) unit directions."""
        f, i = corner
        face = self.faces[f]
        n = face.n
        at = face.pts[i]
        return (v_unit(v_sub(face.pts[(i + 1) % n], at)),
                v_unit(v_sub(face.pts[(i - 1) % n], at)))

    def direction_at_corner(self, corner: CornerRef, angle: float):
        """Unit direction inside the corner at CCW angle from its first edge."""
        f, i = corner
        d0, _ = self.corner_dirs(corner)
        return v_rot(d0, math.cos(angle), math.sin(angle))

    def fan_direction(self, v: int, angle: float):
        """Resolve a fan coordinate around vertex orbit v to (corner, direction).

        The fan starts at the first corner of the orbit, measured CCW from its
        outgoing edge; total fan width is the cocurvature.
        """
        angle = angle % self._cocurv[v] if self.orbit_closed[v] else angle
        acc = 0.0
        for corner in self.orbits[v]:
            f, i = corner
            a = self.faces[f].corner_angle(i)
            if angle <= acc + a or corner == self.orbits[v][-1]:
                return corner, self.direction_at_corner(corner, angle - acc)
            acc += a
        raise AssertionError("fan angle out of range")

    def fan_angle_of_direction(self, v: int, corner: CornerRef, d) -> float:
        """Inverse of fan_direction: fan coordinate of direction d at corner."""
        acc = 0.0
        for c in self.orbits[v]:
            if c == tuple(corner):
                d0, _ = self.corner_dirs(c)
                local = math.atan2(v_cross(d0, d), v_dot(d0, d))
                if local < -1e-12:
                    local += TWO_PI
                return acc + local
            f, i = c
            acc += self.faces[f].corner_angle(i)
        raise ValueError("corner not in orbit")

    # .. straight-line tracing ...........................................

    def _exit_through_edge(self, face: Face, p, d, skip_edge=None):
        """First edge crossed by ray p + t*d leaving the face interior."""
        best = None
        for k in range(face.n):
            if k == skip_edge:
                continue
            a, b = face.edge(k)
            r = d
            s = v_sub(b, a)
            hit = segment_intersection_param(p, r, a, s)
            if hit is None:
                continue
            t, u = hit
            if t <= self.snap:
                continue
            if -1e-12 <= u <= 1.0 + 1e-12:
                if best is None or t < best[0]:
                    best = (t, k, u)
        return best

    def trace(self, start: SurfacePoint, direction, length: float,
              max_crossings: int = 100000) -> GeodesicSegment:
        """Trace a geodesic of the given length from a surface point.

        The ray continues straight across glued edges and through flat
        vertices; running into a genuine cone vertex mid-path raises
        VertexCollision.  An endpoint landing on a vertex (within snap
        tolerance) is snapped onto it.
        """
        f = start.face
        p = tuple(start.xy)
        d = v_unit(direction)
        remaining = float(length)
        if remaining <= 0.0:
            raise DegenerateInput("trace length must be positive")
        chords = []
        crossings = []
        snap = self.snap
        start_vertex = self._corner_at(f, p)
        guard = 0
        while True:
            guard += 1
            if guard > max_crossings:
                raise VertexCollision("trace exceeded crossing budget")
            face = self.faces[f]
            hit = self._exit_through_edge(face, p, d)
            if hit is None:
                raise VertexCollision("ray found no exit (degenerate face?)")
            t, k, u = hit
            if t >= remaining - snap:
                q = v_add(p, v_scale(d, remaining))
                chords.append((f, p, q))
                end = SurfacePoint(f, q)
                return GeodesicSegment(chords, length, start, end,
                                       start_vertex=start_vertex,
                                       end_vertex=self._corner_at(f, q),
                                       crossings=crossings)
            a, b = face.edge(k)
            q = v_add(p, v_scale(d, t))
            # vertex hit?
            corner_hit = None
            if v_dist(q, a) <= snap:
                corner_hit = (f, k)
            elif v_dist(q, b) <= snap:
                corner_hit = (f, (k + 1) % face.n)
            if corner_hit is not None:
                v = self.orbit_of[corner_hit]
                q = self.faces[corner_hit[0]].pts[corner_hit[1]]
                chords.append((f, p, q))
                remaining -= v_dist(p, q)
                if remaining <= snap:
                    return GeodesicSegment(chords, length, start, SurfacePoint(f, q),
                                           start_vertex=start_vertex,
                                           end_vertex=corner_hit,
                                           crossings=crossings)
                if abs(self._cocurv[v] - TWO_PI) > 1e-7:
                    raise VertexCollision(
                        f"geodesic hits cone vertex orbit {v} mid-path")
                f, p, d = self._continue_through_flat(corner_hit, d)
                crossings.append((("vertex", corner_hit), 0.0))
                continue
            chords.append((f, p, q))
            remaining -= t
            part = self.gluings.get((f, k))
            if part is None:
                raise VertexCollision("geodesic ran off the boundary")
            crossings.append(((f, k), u))
            g, j = part
            # edge_transform((g, j)) maps its partner's frame (ours) onto g's
            M = self.edge_transform((g, j))
            p = M.apply(q)
            d = M.apply_vec(d)
            f = g

    def _corner_at(self, f: int, p):
        face = self.faces[f]
        for i in range(face.n):
            if v_dist(face.pts[i], p) <= self.snap:
                return (f, i)
        return None

    def _continue_through_flat(self, corner: CornerRef, d):
        """Continue a straight ray through a flat vertex.

        Arrives at the corner with direction d (pointing at the vertex);
        returns (face, point, direction) on the far side so that the turn
        on each side is exactly pi.
        """
        rev = (-d[0], -d[1])
        f, i = corner
        d_next, d_prev = self.corner_dirs(corner)
        a0 = _ccw_angle(d_next, rev)
        face_angle = self.faces[f].corner_angle(i)
        remaining = math.pi - (face_angle - a0)
        if remaining <= 1e-12:
            # the straight continuation stays inside this very face
            return f, self.faces[f].pts[i], d
        cur = corner
        while remaining > 1e-12:
            nxt = self._prev_corner(cur)
            if nxt is None:
                raise VertexCollision("flat continuation ran into boundary")
            cur = nxt
            ang = self.faces[cur[0]].corner_angle(cur[1])
            if ang >= remaining - 1e-12:
                break
            remaining -= ang
        if remaining <= 1e-12:
            # continuation leaves along the sector start of cur's successor;
            # treat as within cur at angle ~ 0
            remaining = max(remaining, 0.0)
        g, j = cur
        d0, _ = self.corner_dirs(cur)
        out = v_rot(d0, math.cos(remaining), math.sin(remaining))
        return g, self.faces[g].pts[j], out

    def shoot_from_vertex(self, v: int, fan_angle: float, length: float) -> GeodesicSegment:
        corner, d = self.fan_direction(v, fan_angle)
        f, i = corner
        return self.trace(SurfacePoint(f, self.faces[f].pts[i]), d, length)

    # -- serialization primitives -------------------------------------------

    def as_dict(self):
        return {
            "faces": [{"id": f.id, "vertices": [list(p) for p in f.pts]}
                      for f in sorted(self.faces.values(), key=lambda f: f.id)],
            "gluings": sorted([list(a) + list(b) for a, b in self.gluings.items() if a < b]),
            "labels": {name: list(ref) for name, ref in sorted(self.labels.items())},
        }


def _ccw_angle(frm, to) -> float:
    a = math.atan2(v_cross(frm, to), v_dot(frm, to))
    if a < -1e-12:
        a += TWO_PI
    return max(a, 0.0)


# ---------------------------------------------------------------------------
# public constructors and queries


def build_surface(faces, gluings, labels=None, tol: Tolerance = DEFAULT_TOL) -> Surface:
    """Build a closed surface and verify all its invariants.

    Raises GluingLengthError, TopologyError or ConvexityError as appropriate.
    """
    s = Surface(faces, gluings, labels=labels, tol=tol)
    problems = closed_surface_violations(s)
    if problems:
        raise problems[0]
    return s


def closed_surface_violations(s: Surface):
    """All invariant violations of a would-be closed convex surface."""
    out = []
    missing = s.boundary_edges()
    if missing:
        out.append(TopologyError(f"{len(missing)} unglued edges, e.g. {missing[0]}"))
        return out
    chi = s.euler_characteristic()
    if chi != 2:
        out.append(TopologyError(f"Euler characteristic {chi} != 2"))
    for v in range(s.vertex_count):
        if s.cocurvature(v) > TWO_PI + s.tol.eps_ang:
            out.append(ConvexityError(
                f"vertex orbit {v} has cocurvature {s.cocurvature(v):.12f} > 2*pi"))
    total = sum(s.curvature(v) for v in range(s.vertex_count))
    if abs(total - 4.0 * math.pi) > 20.0 * s.tol.eps_ang * max(1, s.vertex_count):
        out.append(TopologyError(f"total curvature {total} != 4*pi"))
    return out


def cocurvature(s: Surface, v: int) -> float:
    return s.cocurvature(v)


def curvature(s: Surface, v: int) -> float:
    return s.curvature(v)


def classify_pi(s: Surface, tol: Tolerance | None = None):
    """(number of smooth vertices, number of vertices) of a closed surface.

    Flat orbits (full angle) are bookkeeping artifacts, not vertices, and
    are excluded from both counts.
    """
    eps = (tol or s.tol).eps_ang
    real = [v for v in range(s.vertex_count)
            if s.cocurvature(v) < TWO_PI - eps]
    k = sum(1 for v in real if abs(s.cocurvature(v) - math.pi) <= max(eps, 1e-9))
    return (k, len(real))
