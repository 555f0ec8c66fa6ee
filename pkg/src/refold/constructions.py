"""Explicit common-unfolding constructions: tetramonohedron pairs, doubly
covered triangles, (augmented) regular prismatoids, doubly covered regular
polygons, and the short chains between the non-dodecahedral regular solids."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .alexandrov import (Arc, ArcPair, BoundaryCoords, GluingScheme,
                         SpinePolygon, TetramonohedronParams, check_alexandrov,
                         fold_arc, fold_spine, identity_scheme,
                         is_tetramonohedron, six_part_scheme, validate_spine)
from .cutting import cut_along
from .errors import (AreaMismatch, ConstructionError, DegenerateInput,
                     InvalidInput, InvalidTriangle)
from .geom import (DEFAULT_TOL, PlanarPolygon, Tolerance, is_simple,
                   triangle_apex, triangle_area, v_dist)
from .render import develop
from .solids import doubly_covered_regular_ngon_surface, regular_ngon
from .surface import GeodesicSegment, SurfacePoint, classify_pi


@dataclass
class CommonUnfolding:
    """One polygon with two verified foldings."""

    polygon: PlanarPolygon
    source_scheme: GluingScheme
    target_scheme: GluingScheme
    source_label: str
    target_label: str
    provenance: str
    creases: list = field(default_factory=list)  # (p, q, "source"|"target")
    simple: bool | None = None
    source_report: object = None
    target_report: object = None

    def verify(self, tol: Tolerance = DEFAULT_TOL):
        """Run both gluings through the three folding conditions and the
        area bookkeeping; returns self with reports attached."""
        self.source_report = check_alexandrov(self.polygon, self.source_scheme, tol)
        self.target_report = check_alexandrov(self.polygon, self.target_scheme, tol)
        if not self.source_report.passed:
            raise ConstructionError(
                f"{self.provenance}: source gluing fails "
                f"({self.source_report.condition2.detail})")
        if not self.target_report.passed:
            raise ConstructionError(
                f"{self.provenance}: target gluing fails "
                f"({self.target_report.condition2.detail})")
        area = self.polygon.area()
        for rep in (self.source_report, self.target_report):
            got = rep.surface.total_area()
            if abs(got - area) > 1e-9 * max(1.0, area):
                raise ConstructionError(f"{self.provenance}: area drifted in folding")
        self.simple = is_simple(self.polygon)
        return self

    @property
    def source_surface(self):
        if self.source_report is None:
            self.verify()
        return self.source_report.surface

    @property
    def target_surface(self):
        if self.target_report is None:
            self.verify()
        return self.target_report.surface

    def reversed(self) -> "CommonUnfolding":
        cu = CommonUnfolding(self.polygon, self.target_scheme, self.source_scheme,
                             self.target_label, self.source_label,
                             self.provenance + " (reversed)",
                             [(p, q, {"source": "target", "target": "source"}.get(t, t))
                              for p, q, t in self.creases],
                             self.simple,
                             self.target_report, self.source_report)
        return cu

    def as_dict(self):
        return {
            "polygon": [list(p) for p in self.polygon.vertices],
            "markers": dict(self.polygon.markers),
            "source_label": self.source_label,
            "target_label": self.target_label,
            "provenance": self.provenance,
            "source_scheme": self.source_scheme.as_dict(),
            "target_scheme": self.target_scheme.as_dict(),
            "simple": self.simple,
            "creases": [[list(p), list(q), t] for p, q, t in self.creases],
        }


def _circle_fold_pairs(walk, lo, length, f1, eps=1e-12):
    """Fold a boundary segment that closes into a circle of the given length
    about the antipodal fold points f1 and f1 + length/2 (circle coords)."""
    half = 0.5 * length
    f1 = math.fmod(f1, half)
    if f1 < 0.0:
        f1 += half
    pairs = []
    if f1 > eps * length:
        pairs.append(fold_arc(walk, lo + f1, f1))
    if half - f1 > eps * length:
        pairs.append(fold_arc(walk, lo + f1 + half, half - f1))
    return pairs


# ---------------------------------------------------------------------------
# tetramonohedron <-> tetramonohedron


def refold_tetramonohedra(t1: TetramonohedronParams, t2: TetramonohedronParams,
                          tol: Tolerance = DEFAULT_TOL) -> CommonUnfolding:
    """Common unfolding of two equal-area tetramonohedra: a parallelogram
    with side pairs 2a and 2a', sliced from the first one's cylinder and
    reglued into the second one's."""
    if abs(t1.surface_area - t2.surface_area) > 1e-9 * max(1.0, t1.surface_area):
        raise AreaMismatch(
            f"surface areas differ: {t1.surface_area} vs {t2.surface_area}")
    swapped = t1.a < t2.a
    ta, tb = (t2, t1) if swapped else (t1, t2)
    a, b = ta.a, ta.b
    a2, b2 = tb.a, tb.b
    # 2a' > b is forced by the area chain; assert it
    if 2.0 * a2 <= b:
        raise ConstructionError("cylinder slice longer than the belt allows")
    d = math.sqrt(4.0 * a2 * a2 - b * b)
    poly = PlanarPolygon([(0.0, 0.0), (2.0 * a, 0.0), (2.0 * a + d, b), (d, b)])
    s_right = 2.0 * a            # arclength at (2a, 0)
    s_top = s_right + 2.0 * a2   # at (2a+d, b)
    s_left = s_top + 2.0 * a     # at (d, b)
    per = s_left + 2.0 * a2

    # source: seam right<->left, circles of length 2a fold at {0, a} (bottom)
    # and {apex_x, apex_x + a} (top)
    xa = (a * a + ta.q ** 2 - ta.p ** 2) / (2.0 * a)
    seam = ArcPair(Arc(0, s_right, s_top), Arc(0, s_left, per))
    source_pairs = [seam]
    source_pairs += _circle_fold_pairs(0, 0.0, 2.0 * a, 0.0)
    # top side runs right-to-left: circle coord u = (2a + d) - x, fold xs at
    # xa and xa + a
    f_top = math.fmod(2.0 * a + d - xa, a)
    source_pairs += _circle_fold_pairs(0, s_right + 2.0 * a2, 2.0 * a, f_top)

    # target: translate bottom onto top, circles of length 2a' fold at {0, a'}
    # (right side) and at the second shape's apex offsets (left side)
    xa2 = (a2 * a2 + tb.q ** 2 - tb.p ** 2) / (2.0 * a2)
    b_new = tb.b
    translate = ArcPair(Arc(0, 0.0, 2.0 * a), Arc(0, s_top, s_left))
    target_pairs = [translate]
    target_pairs += _circle_fold_pairs(0, s_right, 2.0 * a2, 0.0)
    # left-circle position of the second shape's apex
    apex = (2.0 * a + (xa2 * d - b_new * b) / (2.0 * a2),
            (xa2 * b + b_new * d) / (2.0 * a2))
    t_par = apex[1] / b  # parameter along the left-side line (d,b)*t
    v0 = math.fmod(2.0 * a2 * (1.0 - t_par), 2.0 * a2)
    if v0 < 0.0:
        v0 += 2.0 * a2
    target_pairs += _circle_fold_pairs(0, s_left, 2.0 * a2, math.fmod(v0, a2))

    creases = _tetramono_creases(a, b, d, xa, a2, xa2, b_new)
    cu = CommonUnfolding(poly, GluingScheme(source_pairs),
                         GluingScheme(target_pairs),
                         source_label=f"tetramonohedron({ta.p:.6g},{ta.q:.6g},{ta.r:.6g})",
                         target_label=f"tetramonohedron({tb.p:.6g},{tb.q:.6g},{tb.r:.6g})",
                         provenance="tetramonohedron-pair",
                         creases=creases).verify(tol)
    got = is_tetramonohedron(cu.target_surface, tol)
    want = tb
    scale = max(want.r, 1.0)
    if got is None or any(abs(x - y) > 1e-7 * scale for x, y in
                          ((got.p, want.p), (got.q, want.q), (got.r, want.r))):
        raise ConstructionError("target folding does not reproduce the "
                                "requested tetramonohedron")
    got_src = is_tetramonohedron(cu.source_surface, tol)
    if got_src is None:
        raise ConstructionError("source folding lost the tetramonohedron")
    if swapped:
        cu = cu.reversed()
    return cu


def _wrap_x(x, lo, width):
    while x < lo:
        x += width
    while x > lo + width:
        x -= width
    return x


def _tetramono_creases(a, b, d, xa, a2, xa2, b_new):
    creases = []
    # source edges: zigzag between bottom vertices (0,0),(a,0),(2a,0) and top
    # apexes at x = xa, xa+a (shifted into the top side span [d, 2a+d])
    bot = [(0.0, 0.0), (a, 0.0), (2.0 * a, 0.0)]
    top = [(_wrap_x(xa, d, 2.0 * a), b), (_wrap_x(xa + a, d, 2.0 * a), b)]
    for t in top:
        for p in bot:
            if abs(t[0] - p[0]) <= 2.0 * a:
                creases.append((p, t, "source"))
    # target edges: from right-circle folds to left-circle folds
    r0 = (2.0 * a, 0.0)
    r1 = (2.0 * a + d / 2.0, b / 2.0)
    creases.append((r0, r1, "target"))
    return creases


# ---------------------------------------------------------------------------
# doubly covered triangle -> doubly covered rectangle


def dc_triangle_to_rectangle(tri_sides, base_index: int = 0,
                             tol: Tolerance = DEFAULT_TOL) -> CommonUnfolding:
    """Unfold a doubly covered triangle about one edge and rewrap it onto
    the half-base-by-height rectangle.

    ``tri_sides`` are the three side lengths; the kept (uncut) edge is
    ``tri_sides[base_index]``.
    """
    sides = [float(s) for s in tri_sides]
    if len(sides) != 3:
        raise InvalidInput("a triangle has three sides")
    triangle_area(*sides)  # raises on degenerate input
    bl = sides[base_index]
    e1 = sides[(base_index + 1) % 3]   # B2 -> apex
    e2 = sides[(base_index + 2) % 3]   # apex -> B1
    apex = triangle_apex(bl, e2, e1)
    xa, h = apex
    # quadrilateral: apex, B1, mirrored apex, B2 (counterclockwise)
    poly = PlanarPolygon([(xa, h), (0.0, 0.0), (xa, -h), (bl, 0.0)])
    per = poly.perimeter
    sA = 0.0
    sB1 = e2
    sA2 = 2.0 * e2
    sB2 = 2.0 * e2 + e1
    source = GluingScheme([fold_arc(0, sB1, e2), fold_arc(0, sB2, e1)])
    target = GluingScheme([
        fold_arc(0, 0.5 * e2, 0.5 * e2),
        fold_arc(0, sB1 + 0.5 * e2, 0.5 * e2),
        fold_arc(0, sA2 + 0.5 * e1, 0.5 * e1),
        fold_arc(0, sB2 + 0.5 * e1, 0.5 * e1),
    ])
    p = (xa / 2.0, h / 2.0)
    q = ((bl + xa) / 2.0, h / 2.0)
    pm = (xa / 2.0, -h / 2.0)
    qm = ((bl + xa) / 2.0, -h / 2.0)
    creases = [((0.0, 0.0), (bl, 0.0), "source"),
               (p, q, "target"), (q, qm, "target"),
               (qm, pm, "target"), (pm, p, "target")]
    cu = CommonUnfolding(poly, source, target,
                         source_label=f"dc-triangle({sides[0]:.6g},{sides[1]:.6g},{sides[2]:.6g})",
                         target_label=f"dc-rectangle({bl / 2.0:.6g}x{2.0 * triangle_area(*sides) / bl:.6g})",
                         provenance="dc-triangle",
                         creases=creases).verify(tol)
    params = is_tetramonohedron(cu.target_surface, tol)
    if params is None:
        raise ConstructionError("triangle rewrap is not a doubly covered rectangle")
    return cu


def rectangle_params(tri_sides, base_index=0):
    """(half-base, height) of the rectangle produced by dc_triangle_to_rectangle."""
    bl = float(tri_sides[base_index])
    h = 2.0 * triangle_area(*tri_sides) / bl
    return (bl / 2.0, h)


def refold_sequence_dc_triangles(tri_a, tri_b, tol: Tolerance = DEFAULT_TOL):
    """Refolding chain between two equal-area doubly covered triangles:
    length 2 when they share an edge length, 3 otherwise."""
    area_a = triangle_area(*tri_a)
    area_b = triangle_area(*tri_b)
    if abs(area_a - area_b) > 1e-9 * max(1.0, area_a):
        raise AreaMismatch(f"triangle areas differ: {area_a} vs {area_b}")
    shared = None
    for i, la in enumerate(tri_a):
        for j, lb in enumerate(tri_b):
            if abs(la - lb) <= 1e-9 * max(1.0, la):
                shared = (i, j)
                break
        if shared:
            break
    if shared is not None:
        i, j = shared
        cu1 = dc_triangle_to_rectangle(tri_a, base_index=i, tol=tol)
        cu2 = dc_triangle_to_rectangle(tri_b, base_index=j, tol=tol)
        return [cu1, cu2.reversed()]
    cu1 = dc_triangle_to_rectangle(tri_a, tol=tol)
    cu3 = dc_triangle_to_rectangle(tri_b, tol=tol)
    r1 = TetramonohedronParams.from_rectangle(*rectangle_params(tri_a))
    r2 = TetramonohedronParams.from_rectangle(*rectangle_params(tri_b))
    cu2 = refold_tetramonohedra(r1, r2, tol=tol)
    return [cu1, cu2, cu3.reversed()]


# ---------------------------------------------------------------------------
# regular prismatoids


@dataclass(frozen=True)
class RegularPrismatoid:
    """Two congruent regular n-gon roofs on a common perpendicular axis."""

    n: int
    side: float
    height: float
    twist: float = 0.0  # 0 = prism, pi/n = antiprism

    def __post_init__(self):
        if self.n < 3:
            raise InvalidInput("roof gonality must be at least 3")
        if self.side <= 0.0:
            raise InvalidInput("side must be positive")
        if self.height < 0.0:
            raise InvalidInput("height must be nonnegative")

    @property
    def circumradius(self) -> float:
        return self.side / (2.0 * math.sin(math.pi / self.n))

    def lateral_lengths(self):
        """(l1, l2): roof-vertex to sheared counterpart below/ahead."""
        R = self.circumradius
        step = 2.0 * math.pi / self.n
        l1 = math.hypot(self.height, 2.0 * R * math.sin(self.twist / 2.0))
        l2 = math.hypot(self.height, 2.0 * R * math.sin((step - self.twist) / 2.0))
        return l1, l2

    def surface_area(self) -> float:
        l1, l2 = self.lateral_lengths()
        s = self.side
        band = self.n * (triangle_area(s, l2, l1) + triangle_area(s, l1, l2))
        roof = self.n * self.side * self.circumradius * math.cos(math.pi / self.n) / 2.0
        return band + 2.0 * roof


@dataclass(frozen=True)
class AugmentedRegularPrismatoid:
    prismatoid: RegularPrismatoid
    apex_height_1: float
    apex_height_2: float

    def __post_init__(self):
        if self.apex_height_1 <= 0.0 or self.apex_height_2 <= 0.0:
            raise InvalidInput("pyramid apex heights must be positive")

    def apex_slants(self):
        R = self.prismatoid.circumradius
        return (math.hypot(self.apex_height_1, R), math.hypot(self.apex_height_2, R))

    def surface_area(self) -> float:
        p = self.prismatoid
        l1, l2 = p.lateral_lengths()
        s = p.side
        band = p.n * (triangle_area(s, l2, l1) + triangle_area(s, l1, l2))
        g1, g2 = self.apex_slants()
        return band + p.n * triangle_area(s, g1, g1) + p.n * triangle_area(s, g2, g2)


def unfold_prismatoid(q, tol: Tolerance = DEFAULT_TOL):
    """Unroll a (possibly augmented) regular prismatoid of positive volume
    into a spine polygon.

    Returns (SpinePolygon, CommonUnfolding) where the common unfolding's
    source refolds the prismatoid and its target folds the spine polygon to
    a tetramonohedron.
    """
    if isinstance(q, AugmentedRegularPrismatoid):
        p = q.prismatoid
        leg_bottom, leg_top = q.apex_slants()
        label = (f"augmented-prismatoid(n={p.n}, s={p.side:.6g}, "
                 f"h={p.height:.6g}, twist={p.twist:.6g})")
    elif isinstance(q, RegularPrismatoid):
        p = q
        if p.height <= 0.0:
            raise DegenerateInput(
                "height-zero prismatoid: use dc_regular_ngon for doubly "
                "covered regular polygons")
        leg_bottom = leg_top = p.circumradius
        label = f"prismatoid(n={p.n}, s={p.side:.6g}, h={p.height:.6g}, twist={p.twist:.6g})"
    else:
        raise InvalidInput("expected a RegularPrismatoid or AugmentedRegularPrismatoid")

    n, s = p.n, p.side
    l1, l2 = p.lateral_lengths()
    xw, yw = triangle_apex(s, l1, l2)

    pts = []
    markers = {}

    def add(name, pt):
        markers[name] = len(pts)
        pts.append(pt)

    g_b = math.sqrt(max(leg_bottom * leg_bottom - 0.25 * s * s, 0.0))
    g_t = math.sqrt(max(leg_top * leg_top - 0.25 * s * s, 0.0))
    if g_b <= 0.0 or g_t <= 0.0:
        raise DegenerateInput("spike apex collapses onto the base line")
    add("p0", (0.0, 0.0))
    for i in range(n):
        add(f"c{i + 1}", ((i + 0.5) * s, -g_b))
        add(f"p{i + 1}", ((i + 1.0) * s, 0.0))
    add(f"p{n + 1}", (xw + n * s, yw))
    for j in range(n):
        add(f"c{n + 1 + j}", (xw + (n - j - 0.5) * s, yw + g_t))
        add(f"p{n + 2 + j}", (xw + (n - j - 1.0) * s, yw))

    poly = PlanarPolygon(pts)
    if poly.reoriented:
        raise ConstructionError("spine polygon came out clockwise")
    arc_markers = {name: poly.vertex_arclength(idx) for name, idx in markers.items()}
    poly = poly.with_markers(arc_markers)
    spine = validate_spine(poly, tol)

    # source scheme: spoke folds + roof-closing end pairs + the lateral seam
    sm = arc_markers
    pairs = []
    for i in list(range(1, n)) + list(range(n + 2, 2 * n + 1)):
        half = v_dist(poly.point_at(sm[f"p{i}"]), poly.point_at(sm[f"c{i}"]))
        pairs.append(fold_arc(0, sm[f"p{i}"], half))
    pairs.append(ArcPair(Arc(0, sm["p0"], sm["c1"]), Arc(0, sm[f"c{n}"], sm[f"p{n}"])))
    pairs.append(ArcPair(Arc(0, sm[f"p{n + 1}"], sm[f"c{n + 1}"]),
                         Arc(0, sm[f"c{2 * n}"], sm[f"p{2 * n + 1}"])))
    pairs.append(ArcPair(Arc(0, sm[f"p{n}"], sm[f"p{n + 1}"]),
                         Arc(0, sm[f"p{2 * n + 1}"], poly.perimeter)))
    source = GluingScheme(pairs)

    _, target, _ = fold_spine(spine, tol)

    creases = []
    for i in range(n):
        creases.append(((i * s, 0.0), ((i + 1) * s, 0.0), "source"))
        creases.append(((xw + i * s, yw), (xw + (i + 1) * s, yw), "source"))
        creases.append(((i * s, 0.0), (xw + i * s, yw), "source"))
        creases.append((((i + 1) * s, 0.0), (xw + i * s, yw), "source"))

    cu = CommonUnfolding(poly, source, target,
                         source_label=label,
                         target_label="tetramonohedron",
                         provenance="prismatoid-spine",
                         creases=creases).verify(tol)
    if is_tetramonohedron(cu.target_surface, tol) is None:
        raise ConstructionError("spine folding did not yield a tetramonohedron")
    return spine, cu


# ---------------------------------------------------------------------------
# doubly covered regular polygons


def dc_regular_ngon(n: int, side: float = 1.0,
                    tol: Tolerance = DEFAULT_TOL) -> CommonUnfolding:
    """Common unfolding of the doubly covered regular n-gon and a
    tetramonohedron (n > 2).

    Both faces are cut along center-to-vertex spokes (staggered between the
    two sides) and the surface is developed; regluing the spokes recovers
    the doubly covered polygon and the six-part partition folds a
    tetramonohedron.  n = 4 degenerates (fold the square across its
    midlines) and is handled by the rectangle identification.
    """
    if n <= 2:
        raise InvalidInput("doubly covered polygons need n > 2")
    if n == 4:
        return _dc_square(side, tol)
    surface = doubly_covered_regular_ngon_surface(n, side)
    front = surface.faces[0]
    back = surface.faces[1]
    even = (n % 2 == 0)
    front_targets = list(range(0, n, 2))
    if even:
        back_targets = list(range(1, n, 2))
    else:
        back_targets = sorted(set(list(range(1, n, 2)) + [0]))

    def back_corner_of_vertex(j):
        # doubly_covered_polygon glues front edge i to back edge (n-2-i);
        # front corner j sits at back corner (n-1-j) mod n
        return (n - 1 - j) % n

    cuts = []
    for j in front_targets:
        vpos = front.pts[j]
        cuts.append(GeodesicSegment(
            chords=[(0, (0.0, 0.0), vpos)], length=v_dist((0.0, 0.0), vpos),
            start=SurfacePoint(0, (0.0, 0.0)), end=SurfacePoint(0, vpos),
            start_vertex=None, end_vertex=(0, j), crossings=[]))
    for j in back_targets:
        k = back_corner_of_vertex(j)
        vpos = back.pts[k]
        cuts.append(GeodesicSegment(
            chords=[(1, (0.0, 0.0), vpos)], length=v_dist((0.0, 0.0), vpos),
            start=SurfacePoint(1, (0.0, 0.0)), end=SurfacePoint(1, vpos),
            start_vertex=None, end_vertex=(1, k), crossings=[]))
    if even:
        # also cut one polygon edge to open the cylinder of sectors
        cuts.append(_edge_cut_between(surface, 0, 0))
    res = cut_along(surface, cuts)
    cut = res.surface
    bc = BoundaryCoords(cut)
    if len(bc.walks) != 1:
        raise ConstructionError("spoke cuts did not open into a disk")
    source_on_cut = identity_scheme(bc, res.sides)

    dev = develop(cut)
    poly = dev.outline
    if poly.reoriented:
        raise ConstructionError("development came out clockwise")

    markers = _ngon_markers(cut, bc, res.face_origin, n, even, tol)
    poly = poly.with_markers(markers)

    m = (n // 2) if even else (n + 1) // 2
    if even:
        cuts6 = [markers["p0"], markers[f"c{m}"], markers[f"p{m}"],
                 markers[f"p{m + 1}"], markers[f"c{2 * m}"], markers[f"p{2 * m + 1}"]]
    else:
        cuts6 = [markers["c1"], markers[f"p{m}"], markers[f"p{m}"],
                 markers[f"c{m + 1}"], markers[f"p{2 * m + 1}"], markers[f"p{2 * m + 1}"]]
    target = six_part_scheme(poly, _cyclic_ascend(cuts6, poly.perimeter))

    creases = [(p, q, "source") for (p, q, t) in dev.creases]
    cu = CommonUnfolding(poly, GluingScheme(source_on_cut.pairs), target,
                         source_label=f"dc-{n}-gon(side={side:.6g})",
                         target_label="tetramonohedron",
                         provenance="dc-regular-ngon",
                         creases=creases).verify(tol)

    # the doubly covered side must reproduce n vertices of the polygon angle
    want = 2.0 * (n - 2) * math.pi / n
    got = cu.source_surface
    kk, nn = classify_pi(got)
    if nn != n or any(abs(got.cocurvature(v) - want) > 1e-7
                      for v in got.real_vertices()):
        raise ConstructionError("source folding is not the doubly covered n-gon")
    if is_tetramonohedron(cu.target_surface, tol) is None:
        raise ConstructionError("n-gon target folding is not a tetramonohedron")
    return cu


def _cyclic_ascend(vals, period):
    out = [vals[0]]
    for v in vals[1:]:
        while v < out[-1] - 1e-12:
            v += period
        out.append(v)
    return out


def _edge_cut_between(surface, face, edge):
    from .cutting import EdgeCut
    return EdgeCut((face, edge))


def _ngon_markers(cut, bc, face_origin, n, even, tol):
    """Assign spine labels p*/c* to the boundary nodes of the cut-open
    doubly covered n-gon."""
    walk = bc.walks[0]
    snap = cut.snap
    kinds = []
    for idx, (f, e) in enumerate(walk):
        pos = cut.faces[f].pts[e]
        origin = face_origin.get(f, f)
        if v_dist(pos, (0.0, 0.0)) <= snap:
            ang = cut.cocurvature(bc.node_orbit(0, idx))
            kinds.append(("C", origin, ang))
        else:
            kinds.append(("V", origin, None))
    m = (n // 2) if even else (n + 1) // 2
    total = len(walk)
    if even:
        expect = ["V"] + ["C", "V"] * m + ["V"] + ["C", "V"] * m
    else:
        expect = (["C"] + ["V", "C"] * (m - 1) + ["V"]) * 2
    if total != len(expect):
        raise ConstructionError(
            f"unexpected boundary complexity: {total} nodes vs {len(expect)}")

    def matches(rot):
        for i, want in enumerate(expect):
            if kinds[(rot + i) % total][0] != want:
                return False
        # bottom apexes must all come from the front face
        label_seq = _label_sequence(m, even)
        for i, name in enumerate(label_seq):
            kind, origin, ang = kinds[(rot + i) % total]
            if name.startswith("c"):
                ci = int(name[1:])
                want_origin = 0 if ci <= m else 1
                if origin != want_origin:
                    return False
        if not even:
            # c1 and c{m+1} are the halved sliver apexes
            for i, name in enumerate(label_seq):
                kind, origin, ang = kinds[(rot + i) % total]
                if name in ("c1", f"c{m + 1}"):
                    if ang is None or ang > 2.5 * math.pi / n:
                        return False
        return True

    label_seq = _label_sequence(m, even)
    rot = next((r for r in range(total) if matches(r)), None)
    if rot is None:
        raise ConstructionError("boundary pattern does not match the spine layout")
    markers = {}
    for i, name in enumerate(label_seq):
        idx = (rot + i) % total
        markers[name] = bc.nodes[0][idx]
    return markers


def _label_sequence(m, even):
    seq = []
    if even:
        seq.append("p0")
        for i in range(1, m + 1):
            seq += [f"c{i}", f"p{i}"]
        seq.append(f"p{m + 1}")
        for i in range(m + 1, 2 * m + 1):
            seq += [f"c{i}", f"p{i + 1}"]
    else:
        seq.append("c1")
        for i in range(1, m):
            seq += [f"p{i}", f"c{i + 1}"]
        seq.append(f"p{m}")
        seq.append(f"c{m + 1}")
        for i in range(m + 2, 2 * m + 1):
            seq += [f"p{i}", f"c{i}"]
        seq += [f"p{2 * m + 1}"]
    return seq


def _dc_square(side, tol):
    """n = 4: the doubly covered square is already a degenerate
    tetramonohedron; expose the identification via the two-edge unfolding."""
    s = side
    poly = PlanarPolygon([(0.0, 0.0), (2.0 * s, 0.0), (2.0 * s, s), (0.0, s)],
                         markers=None)
    per = poly.perimeter
    # doubly covered square: fold left half onto right half about x = s
    source = GluingScheme([
        fold_arc(0, s, s),                                        # bottom about (s, 0)
        ArcPair(Arc(0, 2.0 * s, 3.0 * s), Arc(0, 5.0 * s, per)),  # right <-> left
        fold_arc(0, 4.0 * s, s),                                  # top about (s, s)
    ])
    # the doubly covered square IS the degenerate tetramonohedron (diagonal
    # creases), so the identification is direct
    target = source
    cu = CommonUnfolding(poly, source, target,
                         source_label=f"dc-4-gon(side={side:.6g})",
                         target_label="tetramonohedron",
                         provenance="dc-regular-ngon(degenerate)").verify(tol)
    if is_tetramonohedron(cu.target_surface, tol) is None:
        raise ConstructionError("square rewrap is not a tetramonohedron")
    return cu


# ---------------------------------------------------------------------------
# regular solids


REGULAR_SOLIDS = ("tetra", "cube", "octa", "icosa")

_UNIT_AREAS = {
    "tetra": math.sqrt(3.0),
    "cube": 6.0,
    "octa": 2.0 * math.sqrt(3.0),
    "icosa": 5.0 * math.sqrt(3.0),
}


def regular_solid_prismatoid(kind: str, side: float):
    """The prismatoid (or augmented prismatoid) realizing a regular solid."""
    if kind == "cube":
        return RegularPrismatoid(4, side, side, 0.0)
    if kind == "octa":
        return RegularPrismatoid(3, side, side * math.sqrt(2.0 / 3.0), math.pi / 3.0)
    if kind == "icosa":
        R5 = side / (2.0 * math.sin(math.pi / 5.0))
        h = math.sqrt(side * side - (2.0 * R5 * math.sin(math.pi / 10.0)) ** 2)
        hp = math.sqrt(side * side - R5 * R5)
        return AugmentedRegularPrismatoid(
            RegularPrismatoid(5, side, h, math.pi / 5.0), hp, hp)
    raise InvalidInput(f"no prismatoid form for {kind!r}")


def regular_polyhedra_sequence(kind_a: str, kind_b: str, side_a: float = 1.0,
                               tol: Tolerance = DEFAULT_TOL):
    """Refolding chain between two regular solids (dodecahedron excluded)
    of equal surface area: length 0 (same solid), 2 (tetrahedron at one
    end), or 3."""
    for k in (kind_a, kind_b):
        if k == "dodeca":
            raise InvalidInput(
                "the dodecahedron goes through the flip-sequence pipeline")
        if k not in REGULAR_SOLIDS:
            raise InvalidInput(f"unknown regular solid {k!r}")
    area = _UNIT_AREAS[kind_a] * side_a * side_a
    side_b = math.sqrt(area / _UNIT_AREAS[kind_b])

    def mono_params(kind, side):
        return TetramonohedronParams.from_sides(side, side, side)

    if kind_a == kind_b:
        return []

    steps = []
    if kind_a == "tetra":
        spine_b, cu_b = unfold_prismatoid(regular_solid_prismatoid(kind_b, side_b), tol)
        mb = is_tetramonohedron(cu_b.target_surface, tol)
        steps.append(refold_tetramonohedra(mono_params(kind_a, side_a), mb, tol))
        steps.append(cu_b.reversed())
    elif kind_b == "tetra":
        spine_a, cu_a = unfold_prismatoid(regular_solid_prismatoid(kind_a, side_a), tol)
        ma = is_tetramonohedron(cu_a.target_surface, tol)
        steps.append(cu_a)
        steps.append(refold_tetramonohedra(ma, mono_params(kind_b, side_b), tol))
    else:
        spine_a, cu_a = unfold_prismatoid(regular_solid_prismatoid(kind_a, side_a), tol)
        spine_b, cu_b = unfold_prismatoid(regular_solid_prismatoid(kind_b, side_b), tol)
        ma = is_tetramonohedron(cu_a.target_surface, tol)
        mb = is_tetramonohedron(cu_b.target_surface, tol)
        steps.append(cu_a)
        steps.append(refold_tetramonohedra(ma, mb, tol))
        steps.append(cu_b.reversed())
    return steps
