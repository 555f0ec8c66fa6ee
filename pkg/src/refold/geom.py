"""Planar primitives, tolerance policy, and polygon predicates.

Points are plain ``(x, y)`` tuples in the hot paths; :class:`Point2` is a
named view of the same shape.  Lengths compare with a relative tolerance
scaled by the larger operand, angles with an absolute tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateInput, InvalidTriangle

TWO_PI = 2.0 * math.pi


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerance:
    """Comparison policy: relative for lengths, absolute (radians) for angles."""

    eps_len: float = 1e-9
    eps_ang: float = 1e-9

    def len_eq(self, a: float, b: float) -> bool:
        scale = max(1.0, abs(a), abs(b))
        return abs(a - b) <= self.eps_len * scale

    def len_zero(self, a: float, scale: float = 1.0) -> bool:
        return abs(a) <= self.eps_len * max(1.0, scale)

    def ang_eq(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.eps_ang


DEFAULT_TOL = Tolerance()


def canonical_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:
        t = 0.0
    return t


# ---------------------------------------------------------------------------
# vector helpers (tuples in, tuples out)

def v_add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def v_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def v_scale(a, s):
    return (a[0] * s, a[1] * s)


def v_dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


def v_cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def v_norm(a):
    return math.hypot(a[0], a[1])


def v_dist(a, b):
    return math.hypot(a[0] - b[0], a[1] - b[1])


def v_unit(a):
    n = math.hypot(a[0], a[1])
    if n == 0.0:
        raise DegenerateInput("zero-length vector has no direction")
    return (a[0] / n, a[1] / n)


def v_lerp(a, b, t):
    return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)


def v_rot(a, cos_t, sin_t):
    return (cos_t * a[0] - sin_t * a[1], sin_t * a[0] + cos_t * a[1])


def interior_angle(prev, at, nxt) -> float:
    """Interior angle of a CCW polygon corner, in (0, 2*pi)."""
    u = v_sub(prev, at)
    w = v_sub(nxt, at)
    a = math.atan2(v_cross(w, u), v_dot(w, u))
    return canonical_angle(a)


class Rigid2(NamedTuple):
    """Proper rigid motion x -> R x + t with R = [[c,-s],[s,c]]."""

    c: float
    s: float
    tx: float
    ty: float

    def apply(self, p):
        return (self.c * p[0] - self.s * p[1] + self.tx,
                self.s * p[0] + self.c * p[1] + self.ty)

    def apply_vec(self, d):
        return (self.c * d[0] - self.s * d[1], self.s * d[0] + self.c * d[1])

    def compose(self, other: "Rigid2") -> "Rigid2":
        """self after other: (self*other)(x) = self(other(x))."""
        c = self.c * other.c - self.s * other.s
        s = self.s * other.c + self.c * other.s
        tx, ty = self.apply((other.tx, other.ty))
        return Rigid2(c, s, tx, ty)

    def invert(self) -> "Rigid2":
        c, s = self.c, -self.s
        tx = -(c * self.tx - s * self.ty)
        ty = -(s * self.tx + c * self.ty)
        return Rigid2(c, s, tx, ty)

    @staticmethod
    def identity() -> "Rigid2":
        return Rigid2(1.0, 0.0, 0.0, 0.0)

    @staticmethod
    def from_segment_map(p0, p1, q0, q1) -> "Rigid2":
        """The proper rigid motion taking segment p0->p1 onto q0->q1.

        Segment lengths must agree; only direction and position are used.
        """
        dp = v_sub(p1, p0)
        dq = v_sub(q1, q0)
        np_, nq = v_norm(dp), v_norm(dq)
        if np_ == 0.0 or nq == 0.0:
            raise DegenerateInput("cannot map a zero-length segment")
        c = (dp[0] * dq[0] + dp[1] * dq[1]) / (np_ * nq)
        s = (dp[0] * dq[1] - dp[1] * dq[0]) / (np_ * nq)
        tx = q0[0] - (c * p0[0] - s * p0[1])
        ty = q0[1] - (s * p0[0] + c * p0[1])
        return Rigid2(c, s, tx, ty)


# ---------------------------------------------------------------------------
# segment predicates

def _orient(a, b, c) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def on_segment(p, a, b, eps: float) -> bool:
    """True when p lies on segment ab within absolute tolerance eps."""
    if abs(_orient(a, b, p)) > eps * max(1.0, v_dist(a, b)):
        return False
    lo_x, hi_x = min(a[0], b[0]) - eps, max(a[0], b[0]) + eps
    lo_y, hi_y = min(a[1], b[1]) - eps, max(a[1], b[1]) + eps
    return lo_x <= p[0] <= hi_x and lo_y <= p[1] <= hi_y


def segments_intersect(a, b, c, d, eps: float = 1e-12) -> bool:
    """True when closed segments ab and cd share at least one point."""
    o1 = _orient(a, b, c)
    o2 = _orient(a, b, d)
    o3 = _orient(c, d, a)
    o4 = _orient(c, d, b)
    scale = max(v_dist(a, b), v_dist(c, d), 1.0)
    tol = eps * scale
    if ((o1 > tol) != (o2 > tol)) and ((o3 > tol) != (o4 > tol)) \
            and ((o1 < -tol) != (o2 < -tol)) and ((o3 < -tol) != (o4 < -tol)):
        return True
    if abs(o1) <= tol and on_segment(c, a, b, tol):
        return True
    if abs(o2) <= tol and on_segment(d, a, b, tol):
        return True
    if abs(o3) <= tol and on_segment(a, c, d, tol):
        return True
    if abs(o4) <= tol and on_segment(b, c, d, tol):
        return True
    return False


def segment_intersection_param(p, r, q, s):
    """Intersection of p+t*r and q+u*s; returns (t, u) or None if parallel."""
    denom = v_cross(r, s)
    if denom == 0.0:
        return None
    qp = v_sub(q, p)
    t = v_cross(qp, s) / denom
    u = v_cross(qp, r) / denom
    return (t, u)


# ---------------------------------------------------------------------------
# polygons

class PlanarPolygon:
    """Ordered planar vertex loop, stored counterclockwise.

    Clockwise input is reversed on construction and ``reoriented`` records
    that this happened.  Markers are named boundary points addressed by
    arclength along the (CCW) boundary.
    """

    __slots__ = ("vertices", "markers", "reoriented", "_cumlen")

    def __init__(self, vertices: Sequence, markers: dict | None = None,
                 tol: Tolerance = DEFAULT_TOL):
        pts = [tuple(map(float, p)) for p in vertices]
        if len(pts) < 3:
            raise DegenerateInput("polygon needs at least 3 vertices")
        scale = max(max(abs(x), abs(y)) for x, y in pts) or 1.0
        for i in range(len(pts)):
            if v_dist(pts[i - 1], pts[i]) <= tol.eps_len * max(1.0, scale):
                raise DegenerateInput(f"consecutive vertices {i-1},{i} coincide")
        area2 = _signed_area2(pts)
        self.reoriented = False
        if area2 < 0.0:
            pts.reverse()
            area2 = -area2
            self.reoriented = True
        if area2 <= 2.0 * tol.eps_len * scale * scale:
            raise DegenerateInput("polygon area vanishes")
        self.vertices = tuple(pts)
        self.markers = dict(markers or {})
        self._cumlen = None

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edge(self, i: int):
        v = self.vertices
        return v[i], v[(i + 1) % len(v)]

    def edge_length(self, i: int) -> float:
        a, b = self.edge(i)
        return v_dist(a, b)

    @property
    def cumulative_lengths(self):
        if self._cumlen is None:
            acc = [0.0]
            for i in range(len(self.vertices)):
                acc.append(acc[-1] + self.edge_length(i))
            self._cumlen = tuple(acc)
        return self._cumlen

    @property
    def perimeter(self) -> float:
        return self.cumulative_lengths[-1]

    def vertex_arclength(self, i: int) -> float:
        return self.cumulative_lengths[i % len(self.vertices)]

    def point_at(self, s: float):
        """Boundary point at arclength s (wrapping)."""
        per = self.perimeter
        s = math.fmod(s, per)
        if s < 0.0:
            s += per
        cums = self.cumulative_lengths
        # linear scan; polygons here are small
        for i in range(len(self.vertices)):
            if s <= cums[i + 1] or i == len(self.vertices) - 1:
                seg = cums[i + 1] - cums[i]
                t = 0.0 if seg == 0.0 else (s - cums[i]) / seg
                a, b = self.edge(i)
                return v_lerp(a, b, t)
        raise AssertionError("unreachable")

    def interior_angle(self, i: int) -> float:
        v = self.vertices
        n = len(v)
        return interior_angle(v[(i - 1) % n], v[i], v[(i + 1) % n])

    def area(self) -> float:
        return 0.5 * _signed_area2(self.vertices)

    def with_markers(self, markers: dict) -> "PlanarPolygon":
        p = PlanarPolygon.__new__(PlanarPolygon)
        p.vertices = self.vertices
        p.markers = dict(markers)
        p.reoriented = self.reoriented
        p._cumlen = self._cumlen
        return p

    def translated(self, dx: float, dy: float) -> "PlanarPolygon":
        return PlanarPolygon([(x + dx, y + dy) for x, y in self.vertices],
                             markers=self.markers)

    def __repr__(self):
        return f"PlanarPolygon({len(self.vertices)} vertices, area={self.area():.6g})"


def _signed_area2(pts) -> float:
    acc = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return acc


def polygon_area(poly: PlanarPolygon, tol: Tolerance = DEFAULT_TOL) -> float:
    """Positive area by the shoelace rule; degenerate input already rejected."""
    a = poly.area()
    if a <= 0.0:
        raise DegenerateInput("polygon area not positive")
    return a


def is_simple(poly: PlanarPolygon, eps: float = 1e-12) -> bool:
    """Pairwise O(n^2) segment test: no two non-adjacent edges intersect,
    adjacent edges meet only at their shared endpoint."""
    v = poly.vertices
    n = len(v)
    edges = [(v[i], v[(i + 1) % n]) for i in range(n)]
    scale = max(poly.perimeter / max(n, 1), 1e-300)
    for i in range(n):
        a, b = edges[i]
        for j in range(i + 1, n):
            c, d = edges[j]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            if adjacent:
                # shared endpoint allowed; any further contact is a fault
                shared = b if j == i + 1 else a
                other_i = a if j == i + 1 else b
                other_j = d if j == i + 1 else c
                far_j = c if j == i + 1 else d
                if on_segment(other_i, c, d, eps * scale) and not _close(other_i, shared, eps * scale):
                    return False
                if on_segment(other_j, a, b, eps * scale) and not _close(other_j, shared, eps * scale):
                    return False
                if on_segment(far_j, a, b, eps * scale) and not _close(far_j, shared, eps * scale):
                    return False
            else:
                if segments_intersect(a, b, c, d, eps):
                    return False
    return True


def _close(p, q, eps):
    return v_dist(p, q) <= eps


def triangle_classify(sides: Iterable[float], tol: Tolerance = DEFAULT_TOL) -> str:
    """Classify a triangle by its side lengths: 'acute', 'right' or 'obtuse'.

    Raises InvalidTriangle when the triangle inequality fails (within
    tolerance); symmetric in the order of the sides.
    """
    p, q, r = sorted(float(s) for s in sides)
    if p <= 0.0:
        raise InvalidTriangle("sides must be positive")
    scale = r * r
    if p + q <= r + tol.eps_len * r:
        raise InvalidTriangle(f"triangle inequality fails for ({p}, {q}, {r})")
    gap = p * p + q * q - r * r
    if abs(gap) <= tol.eps_len * scale:
        return "right"
    return "acute" if gap > 0.0 else "obtuse"


def triangle_area(p: float, q: float, r: float) -> float:
    """Area from side lengths (Heron, numerically stable form)."""
    a, b, c = sorted((p, q, r), reverse=True)
    s = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    if s <= 0.0:
        raise InvalidTriangle(f"degenerate side lengths ({p}, {q}, {r})")
    return 0.25 * math.sqrt(s)


def triangle_apex(base: float, left: float, right: float):
    """Apex (x, y) of a triangle with base (0,0)-(base,0), |apex|=left,
    |apex-(base,0)|=right, laid out above the base."""
    x = (base * base + left * left - right * right) / (2.0 * base)
    y2 = left * left - x * x
    if y2 <= 0.0:
        raise InvalidTriangle("apex collapses onto the base line")
    return (x, math.sqrt(y2))
