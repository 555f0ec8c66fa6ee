"""Gluing schemes on boundary walks and verification of the three folding
conditions: whole boundary used, glued angle sums at most a full turn, and
the quotient a topological sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cutting import refine_boundary_edges
from .errors import SchemeError
from .geom import (DEFAULT_TOL, Rigid2, TWO_PI, Tolerance, v_dist, v_dot,
                   v_lerp, v_sub)
from .surface import Surface, SurfacePoint


@dataclass(frozen=True)
class Arc:
    """Forward arclength span [s0, s1] on one boundary walk (may wrap)."""

    walk: int
    s0: float
    s1: float

    @property
    def length(self) -> float:
        return self.s1 - self.s0


@dataclass(frozen=True)
class ArcPair:
    """Identification a(s0+u) == b(s1-u): the zipper always reverses the
    boundary orientation, which keeps the quotient orientable."""

    a: Arc
    b: Arc


@dataclass
class GluingScheme:
    pairs: tuple

    def __init__(self, pairs):
        object.__setattr__(self, "pairs", tuple(pairs))

    def __iter__(self):
        return iter(self.pairs)

    def as_dict(self):
        return {"pairs": [[[p.a.walk, p.a.s0, p.a.s1], [p.b.walk, p.b.s0, p.b.s1]]
                          for p in self.pairs]}

    @staticmethod
    def from_dict(d):
        return GluingScheme([ArcPair(Arc(*pa), Arc(*pb)) for pa, pb in d["pairs"]])


@dataclass
class ConditionReport:
    passed: bool
    detail: str = ""
    witnesses: list = field(default_factory=list)


@dataclass
class AlexandrovReport:
    condition1: ConditionReport
    condition2: ConditionReport
    condition3: ConditionReport
    vertex_cocurvatures: list = field(default_factory=list)
    surface: Surface | None = None

    @property
    def passed(self) -> bool:
        return (self.condition1.passed and self.condition2.passed
                and self.condition3.passed)

    def as_dict(self):
        return {
            "passed": self.passed,
            "condition1": {"passed": self.condition1.passed, "detail": self.condition1.detail},
            "condition2": {"passed": self.condition2.passed, "detail": self.condition2.detail},
            "condition3": {"passed": self.condition3.passed, "detail": self.condition3.detail},
            "vertex_cocurvatures": list(self.vertex_cocurvatures),
        }


# ---------------------------------------------------------------------------
# boundary coordinates


class BoundaryCoords:
    """Arclength coordinates along the boundary walks of a cut surface."""

    def __init__(self, surface: Surface):
        self.surface = surface
        self.walks = surface.boundary_walks()
        self.edge_span = {}
        self.lengths = []
        self.nodes = []  # per walk: sorted positions of walk nodes
        for wi, walk in enumerate(self.walks):
            s = 0.0
            node_pos = []
            for e in walk:
                L = surface.faces[e[0]].edge_length(e[1])
                self.edge_span[e] = (wi, s, s + L)
                node_pos.append(s)
                s += L
            self.lengths.append(s)
            self.nodes.append(node_pos)

    def wrap(self, wi: int, s: float) -> float:
        L = self.lengths[wi]
        s = math.fmod(s, L)
        return s + L if s < 0.0 else s

    def edge_at(self, wi: int, s: float):
        """(edge_ref, local param t) at arclength s on walk wi."""
        s = self.wrap(wi, s)
        walk = self.walks[wi]
        for e in walk:
            _, a, b = self.edge_span[e]
            if a - 1e-12 <= s <= b + 1e-12:
                L = b - a
                return e, min(max((s - a) / L, 0.0), 1.0)
        raise SchemeError(f"arclength {s} not on walk {wi}")

    def point_at(self, wi: int, s: float) -> SurfacePoint:
        e, t = self.edge_at(wi, s)
        a, b = self.surface.faces[e[0]].edge(e[1])
        return SurfacePoint(e[0], v_lerp(a, b, t))

    def node_orbit(self, wi: int, idx: int) -> int:
        """Vertex orbit of the idx-th node of walk wi (start of edge idx)."""
        f, e = self.walks[wi][idx]
        return self.surface.orbit_of[(f, e)]

    def angle_at(self, wi: int, s: float, snap: float) -> float:
        """Boundary interior angle at arclength s: pi mid-edge, the fan sum
        at walk nodes."""
        s = self.wrap(wi, s)
        L = self.lengths[wi]
        for idx, pos in enumerate(self.nodes[wi]):
            d = abs(s - pos)
            if min(d, L - d) <= snap:
                return self.surface.cocurvature(self.node_orbit(wi, idx))
        return math.pi

    def vertex_coordinate(self, orbit: int):
        """(walk, s) of a boundary vertex orbit; None for interior orbits."""
        for wi, walk in enumerate(self.walks):
            for idx, (f, e) in enumerate(walk):
                if self.surface.orbit_of[(f, e)] == orbit:
                    return (wi, self.nodes[wi][idx])
        return None

    def side_span(self, side):
        """Contiguous walk span of a cut side: (walk, lo, hi, direction).

        ``side`` is a list of (edge_ref, forward) in cut order; direction is
        +1 when increasing walk coordinate runs along the cut.
        """
        spans = [self.edge_span[tuple(e)] for e, _ in side]
        wi = spans[0][0]
        if any(s[0] != wi for s in spans):
            raise SchemeError("cut side straddles multiple walks")
        forward = side[0][1]
        L = self.lengths[wi]
        # consecutive stored edges may wrap around coordinate 0
        if forward:
            lo, hi = spans[0][1], spans[-1][2]
        else:
            # stored edges run against the cut: walk order is reversed
            lo, hi = spans[-1][1], spans[0][2]
        if hi < lo:
            hi += L
        total = sum(s[2] - s[1] for s in spans)
        if abs((hi - lo) - total) > 1e-6 * max(1.0, total):
            raise SchemeError("cut side is not contiguous along its walk")
        return (wi, lo, hi, +1 if forward else -1)


def pair_sides(bc: BoundaryCoords, side_a, side_b, fold: bool) -> ArcPair:
    """Glue two cut sides: fold pairs cut-parameter u with (len-u), shift
    pairs u with u.  The result is always boundary-orientation reversing."""
    wa, lo_a, hi_a, da = bc.side_span(side_a)
    wb, lo_b, hi_b, db = bc.side_span(side_b)
    len_a = hi_a - lo_a
    len_b = hi_b - lo_b
    if abs(len_a - len_b) > 1e-9 * max(1.0, len_a):
        raise SchemeError("paired sides differ in length")
    # walk-coordinate map must be decreasing: s_b = c - s_a
    valid = (da == db) if fold else (da != db)
    if not valid:
        raise SchemeError("pairing would be orientation preserving")
    c = (hi_b + lo_a) if da == +1 else (lo_b + hi_a)
    return ArcPair(Arc(wa, lo_a, hi_a), Arc(wb, c - hi_a, c - lo_a))


def fold_arc(walk: int, center: float, half_length: float) -> ArcPair:
    """Self-gluing folding the boundary about a point: [c-h, c] onto [c, c+h]."""
    return ArcPair(Arc(walk, center, center + half_length),
                   Arc(walk, center - half_length, center))


def identity_scheme(bc: BoundaryCoords, sides) -> GluingScheme:
    """Reglue every cut exactly as it was cut."""
    return GluingScheme([pair_sides(bc, s.left, s.right, fold=False) for s in sides])


# ---------------------------------------------------------------------------
# checking and gluing


def _as_cut_surface(target) -> Surface:
    from .geom import PlanarPolygon
    from .surface import Face
    if isinstance(target, Surface):
        return target
    if isinstance(target, PlanarPolygon):
        return Surface([Face(0, tuple(target.vertices))], {}, check=False)
    raise SchemeError(f"cannot glue a {type(target).__name__}")


def _normalized_spans(bc, scheme):
    """All arc spans normalized into [0, L) interval pieces per walk."""
    spans = {wi: [] for wi in range(len(bc.walks))}
    for pair in scheme:
        for arc in (pair.a, pair.b):
            if arc.walk not in spans:
                raise SchemeError(f"arc on missing walk {arc.walk}")
            L = bc.lengths[arc.walk]
            if arc.length < -1e-12:
                raise SchemeError("arc with negative length")
            if arc.length > L + 1e-9:
                raise SchemeError("arc longer than its walk")
            s0 = bc.wrap(arc.walk, arc.s0)
            s1 = s0 + arc.length
            if s1 <= L + 1e-12:
                spans[arc.walk].append((s0, min(s1, L)))
            else:
                spans[arc.walk].append((s0, L))
                spans[arc.walk].append((0.0, s1 - L))
    return spans


def _check_condition1(bc, scheme, tol_abs):
    spans = _normalized_spans(bc, scheme)
    witnesses = []
    for wi, lst in spans.items():
        L = bc.lengths[wi]
        lst = sorted((a, b) for a, b in lst if b - a > 1e-12)
        covered = 0.0
        cursor = 0.0
        for a, b in lst:
            if a > cursor + tol_abs:
                witnesses.append(f"walk {wi}: gap [{cursor:.9g}, {a:.9g}]")
            if a < cursor - tol_abs:
                witnesses.append(f"walk {wi}: overlap near {a:.9g}")
            cursor = max(cursor, b)
            covered += b - a
        if cursor < L - tol_abs:
            witnesses.append(f"walk {wi}: gap [{cursor:.9g}, {L:.9g}]")
        if abs(covered - L) > tol_abs * max(1.0, L):
            witnesses.append(f"walk {wi}: covered {covered:.9g} of {L:.9g}")
    ok = not witnesses
    return ConditionReport(ok, "boundary fully used" if ok else "; ".join(witnesses),
                           witnesses)


class _PointIndex:
    """Snap-deduplicated breakpoint set per walk."""

    def __init__(self, bc, snap):
        self.bc = bc
        self.snap = snap
        self.points = {wi: [] for wi in range(len(bc.walks))}

    def add(self, wi, s):
        s = self.bc.wrap(wi, s)
        L = self.bc.lengths[wi]
        for i, p in enumerate(self.points[wi]):
            d = abs(p - s)
            if min(d, L - d) <= self.snap:
                return (wi, i), False
        self.points[wi].append(s)
        return (wi, len(self.points[wi]) - 1), True

    def find(self, wi, s):
        s = self.bc.wrap(wi, s)
        L = self.bc.lengths[wi]
        for i, p in enumerate(self.points[wi]):
            d = abs(p - s)
            if min(d, L - d) <= self.snap:
                return (wi, i)
        return None


def _arc_contains(bc, arc, wi, s, snap):
    if arc.walk != wi:
        return None
    L = bc.lengths[wi]
    rel = math.fmod(s - arc.s0, L)
    if rel < 0:
        rel += L
    if -snap <= rel <= arc.length + snap:
        return min(max(rel, 0.0), arc.length)
    return None


def _glue_maps(bc, scheme, pi: _PointIndex, snap):
    """Close breakpoints under the gluing maps; return list of identified
    breakpoint pairs."""
    pending = [(wi, s) for wi in range(len(bc.walks)) for s in list(pi.points[wi])]
    links = []
    rounds = 0
    while pending and rounds < 64:
        rounds += 1
        new_pending = []
        for (wi, s) in pending:
            key = pi.find(wi, s)
            for pair in scheme:
                for arc, other in ((pair.a, pair.b), (pair.b, pair.a)):
                    u = _arc_contains(bc, arc, wi, s, snap)
                    if u is None:
                        continue
                    # a(s0+u) == b(s1-u)
                    t = other.s1 - u
                    okey, created = pi.add(other.walk, t)
                    links.append((key, okey))
                    if created:
                        new_pending.append((other.walk, bc.wrap(other.walk, t)))
        pending = new_pending
    if pending:
        raise SchemeError("breakpoint closure did not stabilize")
    return links


def check_alexandrov(target, scheme: GluingScheme, tol: Tolerance = DEFAULT_TOL,
                     build: bool = True) -> AlexandrovReport:
    """Verify the three folding conditions of a gluing scheme.

    ``target`` is a cut surface or a planar polygon.  A malformed scheme
    raises SchemeError; a well-formed but invalid gluing yields a failing
    report.
    """
    surface = _as_cut_surface(target)
    bc = BoundaryCoords(surface)
    snap = max(surface.snap, 1e-9 * max(bc.lengths, default=1.0))

    for pair in scheme:
        if abs(pair.a.length - pair.b.length) > 1e-9 * max(1.0, pair.a.length):
            raise SchemeError(
                f"paired arcs differ in length: {pair.a.length} vs {pair.b.length}")

    c1 = _check_condition1(bc, scheme, max(snap, 1e-9))
    if not c1.passed:
        return AlexandrovReport(c1, ConditionReport(False, "not evaluated"),
                                ConditionReport(False, "not evaluated"))

    # breakpoints: arc endpoints + walk nodes, closed under the gluing maps
    pi = _PointIndex(bc, snap)
    for pair in scheme:
        for arc in (pair.a, pair.b):
            pi.add(arc.walk, arc.s0)
            pi.add(arc.walk, arc.s1)
    for wi in range(len(bc.walks)):
        for pos in bc.nodes[wi]:
            pi.add(wi, pos)
    links = _glue_maps(bc, scheme, pi, snap)

    # union-find on breakpoints
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in links:
        union(a, b)

    classes = {}
    for wi in range(len(bc.walks)):
        for i, s in enumerate(pi.points[wi]):
            classes.setdefault(find((wi, i)), []).append((wi, s))

    worst = 0.0
    witnesses = []
    class_angles = []
    for members in classes.values():
        total = sum(bc.angle_at(wi, s, snap) for wi, s in members)
        class_angles.append(total)
        worst = max(worst, total)
        if total > TWO_PI + 50.0 * tol.eps_ang:
            witnesses.append(
                f"glued angle {total:.9f} > 2*pi at " +
                ", ".join(f"(walk {wi}, s={s:.6g})" for wi, s in members))
    c2 = ConditionReport(not witnesses,
                         f"worst glued angle {worst:.9f}" if not witnesses
                         else "; ".join(witnesses[:4]), witnesses)

    # condition 3 via Euler characteristic of the quotient complex
    n_segments = sum(len(pi.points[wi]) for wi in range(len(bc.walks)))
    v_boundary = len(classes)
    interior_orbits = sum(1 for closed in surface.orbit_closed if closed)
    e_interior = len(surface.gluings) // 2
    if n_segments % 2 != 0:
        c3 = ConditionReport(False, "boundary refines into an odd segment count")
    else:
        chi = (v_boundary + interior_orbits) \
            - (e_interior + n_segments // 2) + len(surface.faces)
        c3 = ConditionReport(chi == 2, f"Euler characteristic {chi}")

    vertex_cocurv = sorted(a for a in class_angles if a < TWO_PI - tol.eps_ang)
    vertex_cocurv += sorted(surface.cocurvature(v)
                            for v in range(surface.vertex_count)
                            if surface.orbit_closed[v]
                            and surface.cocurvature(v) < TWO_PI - tol.eps_ang)

    report = AlexandrovReport(c1, c2, c3, sorted(vertex_cocurv))
    if build and report.passed:
        report.surface = glue_boundary(surface, scheme, tol=tol, _checked=True)
    return report


def glue_boundary(target, scheme: GluingScheme, tol: Tolerance = DEFAULT_TOL,
                  _checked: bool = False) -> Surface:
    """Apply a gluing scheme, returning the resulting closed surface.

    Verifies the three folding conditions first (unless already verified by
    the caller) and raises TopologyError/ConvexityError style errors drawn
    from the failing condition.
    """
    surface = _as_cut_surface(target)
    if not _checked:
        from .errors import ConvexityError, TopologyError
        report = check_alexandrov(surface, scheme, tol=tol, build=False)
        if not report.condition1.passed:
            raise TopologyError("condition 1 failed: " + report.condition1.detail)
        if not report.condition2.passed:
            raise ConvexityError("condition 2 failed: " + report.condition2.detail)
        if not report.condition3.passed:
            raise TopologyError("condition 3 failed: " + report.condition3.detail)

    bc = BoundaryCoords(surface)
    snap = max(surface.snap, 1e-9 * max(bc.lengths, default=1.0))
    pi = _PointIndex(bc, snap)
    for pair in scheme:
        for arc in (pair.a, pair.b):
            pi.add(arc.walk, arc.s0)
            pi.add(arc.walk, arc.s1)
    for wi in range(len(bc.walks)):
        for pos in bc.nodes[wi]:
            pi.add(wi, pos)
    _glue_maps(bc, scheme, pi, snap)

    # split boundary edges at breakpoints
    splits = {}
    for wi in range(len(bc.walks)):
        for s in pi.points[wi]:
            e, t = bc.edge_at(wi, s)
            L = bc.edge_span[e][2] - bc.edge_span[e][1]
            if t * L <= snap or (1.0 - t) * L <= snap:
                continue
            splits.setdefault(e, []).append(t)
    refined, chains = refine_boundary_edges(surface, splits)

    # walk coordinates of refined sub-edges (in the old coordinate system)
    sub_span = {}
    for old_edge, chain in chains.items():
        wi, s0, s1 = bc.edge_span[old_edge]
        s = s0
        for ref in chain:
            L = refined.faces[ref[0]].edge_length(ref[1])
            sub_span[(wi, round(s / snap))] = ref
            s += L
    # helper: find sub-edge starting at arclength s
    def sub_edge_at(wi, s):
        s = bc.wrap(wi, s)
        L = bc.lengths[wi]
        for cand in (s, s - L, s + L):
            key = round(cand / snap)
            for dk in (0, -1, 1, -2, 2):
                ref = sub_span.get((wi, key + dk))
                if ref is not None:
                    return ref
        raise SchemeError(f"no refined sub-edge at walk {wi} s={s}")

    gluings = dict(refined.gluings)
    for pair in scheme:
        arc_a, arc_b = pair.a, pair.b
        # walk the breakpoints inside arc_a
        cuts = [0.0, arc_a.length]
        for s in pi.points[arc_a.walk]:
            u = _arc_contains(bc, arc_a, arc_a.walk, s, snap)
            if u is not None and snap < u < arc_a.length - snap:
                cuts.append(u)
        # also breakpoints of arc_b mapped back
        for s in pi.points[arc_b.walk]:
            u = _arc_contains(bc, arc_b, arc_b.walk, s, snap)
            if u is not None:
                ua = arc_a.length - u  # since b(s1-u') pairs a(s0+u'): u' = len - u
                if snap < ua < arc_a.length - snap:
                    cuts.append(ua)
        cuts = _dedupe(sorted(cuts), snap)
        for u0, u1 in zip(cuts, cuts[1:]):
            ea = sub_edge_at(arc_a.walk, arc_a.s0 + u0)
            eb = sub_edge_at(arc_b.walk, arc_b.s1 - u1)
            if ea == eb:
                raise SchemeError("arc pairing glues a segment to itself")
            gluings[ea] = eb
            gluings[eb] = ea

    out = Surface(refined.faces.values(),
                  {a: b for a, b in gluings.items() if a <= b},
                  labels=refined.labels, tol=tol, check=True)
    from .surface import closed_surface_violations
    problems = closed_surface_violations(out)
    if problems:
        raise problems[0]
    return out


def _dedupe(sorted_vals, snap):
    out = []
    for v in sorted_vals:
        if not out or v - out[-1] > snap:
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# tetramonohedron recognition


@dataclass(frozen=True)
class TetramonohedronParams:
    """Face triangle of a tetramonohedron: sides p <= q <= r, longest edge a,
    and b the matching height (a*b = twice the face area)."""

    p: float
    q: float
    r: float
    degenerate: bool = False  # right-angled faces (doubly covered rectangle)

    @property
    def a(self) -> float:
        return self.r

    @property
    def b(self) -> float:
        from .geom import triangle_area
        return 2.0 * triangle_area(self.p, self.q, self.r) / self.r

    @property
    def face_area(self) -> float:
        from .geom import triangle_area
        return triangle_area(self.p, self.q, self.r)

    @property
    def surface_area(self) -> float:
        return 4.0 * self.face_area

    @staticmethod
    def from_sides(p, q, r, allow_right=False, tol: Tolerance = DEFAULT_TOL):
        from .errors import InvalidTriangle
        from .geom import triangle_classify
        p, q, r = sorted(map(float, (p, q, r)))
        kind = triangle_classify((p, q, r), tol)
        if kind == "obtuse":
            raise InvalidTriangle("tetramonohedron faces must be acute")
        if kind == "right" and not allow_right:
            raise InvalidTriangle("right faces only occur in the degenerate "
                                  "(doubly covered rectangle) case")
        return TetramonohedronParams(p, q, r, degenerate=(kind == "right"))

    @staticmethod
    def from_rectangle(w, h):
        w, h = sorted((float(w), float(h)))
        return TetramonohedronParams(w, h, math.hypot(w, h), degenerate=True)


def _skeleton_distance_bound(surface: Surface, va: int, vb: int) -> float:
    """Shortest path between vertex orbits along complex edges (upper bound
    for the geodesic distance)."""
    import heapq
    dist = {va: 0.0}
    heap = [(0.0, va)]
    while heap:
        d, v = heapq.heappop(heap)
        if v == vb:
            return d
        if d > dist.get(v, math.inf):
            continue
        for (f, i) in surface.orbits[v]:
            face = surface.faces[f]
            for e in (i, (i - 1) % face.n):
                L = face.edge_length(e)
                other = (f, (e + 1) % face.n) if e == i else (f, e)
                w = surface.orbit_of[other]
                nd = d + L
                if nd < dist.get(w, math.inf) - 1e-15:
                    dist[w] = nd
                    heapq.heappush(heap, (nd, w))
    return math.inf


def _point_segment_distance(p, a, b):
    d = v_sub(b, a)
    L2 = d[0] * d[0] + d[1] * d[1]
    if L2 <= 0.0:
        return v_dist(p, a)
    t = (v_dot(v_sub(p, a), d)) / L2
    t = min(max(t, 0.0), 1.0)
    return v_dist(p, (a[0] + t * d[0], a[1] + t * d[1]))


def vertex_geodesic_distance(surface: Surface, va: int, vb: int,
                             max_placements: int = 40000, upper: float | None = None):
    """Length of a shortest vertex-avoiding geodesic between two vertex
    orbits, found by unrolling face strips with angular windows (a funnel
    propagation) and verified by tracing.

    Each frontier entry is a placed face together with the interval of
    directions from the source that reach it by a straight segment; windows
    narrow at vertices, which kills winding strips and keeps the search
    linear in the unfolded region instead of exponential.
    Returns (length, segment) or raises ConstructionError.
    """
    from .errors import ConstructionError, VertexCollision
    import heapq
    bound = _skeleton_distance_bound(surface, va, vb) * (1.0 + 1e-12)
    if upper is not None:
        bound = min(bound, upper)
    if not math.isfinite(bound):
        raise ConstructionError("vertex orbits not connected")
    snap = surface.snap
    ang_tol = 1e-9

    def angle_near(theta, ref):
        """Representative of theta within pi of ref."""
        while theta < ref - math.pi:
            theta += TWO_PI
        while theta > ref + math.pi:
            theta -= TWO_PI
        return theta

    frontier = []  # (promise, counter, root_idx, face, M, win_lo, win_hi, entry)
    roots = {}
    counter = 0
    for corner in surface.orbits[va]:
        f0, c0 = corner
        A = surface.faces[f0].pts[c0]
        d_next, _ = surface.corner_dirs(corner)
        th0 = math.atan2(d_next[1], d_next[0])
        th1 = th0 + surface.faces[f0].corner_angle(c0)
        ri = len(roots)
        roots[ri] = (corner, A)
        heapq.heappush(frontier, (0.0, counter, ri, f0, Rigid2.identity(),
                                  th0, th1, None))
        counter += 1

    cands = []
    tried = set()

    # geodesics that run exactly along straight chains of complex edges are
    # invisible to the funnel (their windows have zero width); enumerate them
    # directly
    for ri, (corner, A) in roots.items():
        for L, d in _straight_edge_chains(surface, corner, vb, bound):
            heapq.heappush(cands, (L, counter, ri, d))
            counter += 1

    def try_candidate(L, ri, d):
        corner, A = roots[ri]
        key = (round(L / snap), round(d[0] * 1e9), round(d[1] * 1e9), corner)
        if key in tried:
            return None
        tried.add(key)
        try:
            seg = surface.trace(SurfacePoint(corner[0], A), d, L)
        except VertexCollision:
            return None
        if seg.end_vertex is not None and surface.orbit_of[seg.end_vertex] == vb:
            return seg
        return None

    pops = 0
    while frontier and pops < max_placements:
        while cands and cands[0][0] <= frontier[0][0] + snap:
            L, _, ri, d = heapq.heappop(cands)
            seg = try_candidate(L, ri, d)
            if seg is not None:
                return L, seg
        promise, _, ri, f, M, lo, hi, entry = heapq.heappop(frontier)
        if promise > bound:
            break
        pops += 1
        corner, A = roots[ri]
        face = surface.faces[f]
        placed = [M.apply(p) for p in face.pts]
        for i in range(face.n):
            if surface.orbit_of[(f, i)] == vb:
                d = v_sub(placed[i], A)
                L = math.hypot(d[0], d[1])
                if 1e-12 < L <= bound:
                    th = angle_near(math.atan2(d[1], d[0]), 0.5 * (lo + hi))
                    if lo - ang_tol <= th <= hi + ang_tol:
                        heapq.heappush(cands, (L, counter, ri, (d[0] / L, d[1] / L)))
                        counter += 1
        for e in range(face.n):
            if e == entry:
                continue  # a straight strip never exits through its entry edge
            part = surface.partner((f, e))
            if part is None:
                continue
            pa, pb = (placed[e], placed[(e + 1) % face.n])
            ra = v_sub(pa, A)
            rb = v_sub(pb, A)
            na = math.hypot(ra[0], ra[1])
            nb = math.hypot(rb[0], rb[1])
            if na <= snap or nb <= snap:
                continue  # edge touches the source; no strip through it
            mid = 0.5 * (lo + hi)
            tha = angle_near(math.atan2(ra[1], ra[0]), mid)
            thb = angle_near(math.atan2(rb[1], rb[0]), mid)
            e_lo, e_hi = (tha, thb) if tha <= thb else (thb, tha)
            if e_hi - e_lo >= math.pi:
                continue  # source sits on the edge line; not a strip gate
            n_lo = max(lo, e_lo)
            n_hi = min(hi, e_hi)
            if n_hi - n_lo <= ang_tol:
                continue
            gate = _point_segment_distance(A, pa, pb)
            promise2 = max(gate, promise)
            if promise2 > bound:
                continue
            M2 = M.compose(surface.edge_transform((f, e)))
            heapq.heappush(frontier, (promise2, counter, ri, part[0], M2,
                                      n_lo, n_hi, part[1]))
            counter += 1
    while cands:
        L, _, ri, d = heapq.heappop(cands)
        seg = try_candidate(L, ri, d)
        if seg is not None:
            return L, seg
    raise ConstructionError(
        f"no geodesic found between orbits {va} and {vb} within bound {bound}")


def _straight_edge_chains(surface, corner, vb, bound):
    """(length, start direction) of straight edge chains from a corner's
    outgoing edge to the target orbit, passing only through flat vertices."""
    from .geom import v_unit
    out = []
    f0, i0 = corner
    face0 = surface.faces[f0]
    a, b = face0.edge(i0)
    d0 = v_unit(v_sub(b, a))
    total = 0.0
    cur = (f0, i0)
    guard = 0
    while guard < 64:
        guard += 1
        face = surface.faces[cur[0]]
        total += face.edge_length(cur[1])
        if total > bound + 1e-9:
            break
        far = (cur[0], (cur[1] + 1) % face.n)
        v_far = surface.orbit_of[far]
        if v_far == vb:
            out.append((total, d0))
            break
        if abs(surface.cocurvature(v_far) - TWO_PI) > 1e-7:
            break
        nxt = _continue_edge_through_flat(surface, cur)
        if nxt is None:
            break
        cur = nxt
    return out


def _continue_edge_through_flat(surface, cur):
    """Directed edge continuing straight through the flat vertex at the far
    end of the directed edge ``cur``, or None."""
    from .geom import v_unit
    f, e = cur
    face = surface.faces[f]
    far = (f, (e + 1) % face.n)
    w = surface.orbit_of[far]
    a, b = face.edge(e)
    d_in = v_unit(v_sub(b, a))
    ang_in = surface.fan_angle_of_direction(w, far, (-d_in[0], -d_in[1]))
    sigma = surface.cocurvature(w)
    for c2 in surface.orbits[w]:
        dn, _ = surface.corner_dirs(c2)
        ang2 = surface.fan_angle_of_direction(w, c2, dn)
        delta = (ang2 - ang_in) % sigma
        if abs(delta - math.pi) <= 1e-7:
            return c2
    return None


def is_tetramonohedron(surface: Surface, tol: Tolerance = DEFAULT_TOL):
    """TetramonohedronParams when the surface has exactly four vertices, all
    smooth; None otherwise.  Face sides come from the three vertex-pair
    geodesic distances (opposite pairs coincide)."""
    from .surface import classify_pi
    if classify_pi(surface, tol) != (4, 4):
        return None
    verts = surface.real_vertices()
    d = {}
    for i in range(4):
        for j in range(i + 1, 4):
            d[(i, j)], _ = vertex_geodesic_distance(surface, verts[i], verts[j])
    pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))]
    sides = []
    scale = max(d.values())
    for e1, e2 in pairs:
        if abs(d[e1] - d[e2]) > 1e-7 * scale:
            from .errors import ConstructionError
            raise ConstructionError(
                f"opposite vertex distances differ: {d[e1]} vs {d[e2]}")
        sides.append(0.5 * (d[e1] + d[e2]))
    return TetramonohedronParams.from_sides(*sides, allow_right=True, tol=tol)


# ---------------------------------------------------------------------------
# spine polygons


@dataclass
class SpinePolygon:
    """Parallelogram base with congruent isosceles spikes along its long
    sides; boundary markers p0..p{2n+1}, c1..c{2n}."""

    n: int
    polygon: object  # PlanarPolygon with markers
    base: tuple      # (p0, pn, pn1, p2n1) positions
    spike_base_bottom: float
    spike_leg_bottom: float
    spike_base_top: float
    spike_leg_top: float

    def marker(self, name: str) -> float:
        return self.polygon.markers[name]


def validate_spine(polygon, tol: Tolerance = DEFAULT_TOL) -> SpinePolygon:
    """Check every spine-polygon clause; raises NotSpinePolygon naming the
    first failing one."""
    from .errors import NotSpinePolygon
    from .geom import v_cross as _vc

    m = polygon.markers
    p_names = sorted((k for k in m if k.startswith("p")), key=lambda s: int(s[1:]))
    c_names = sorted((k for k in m if k.startswith("c")), key=lambda s: int(s[1:]))
    if len(p_names) < 4 or len(p_names) % 2 != 0:
        raise NotSpinePolygon(f"need 2n+2 'p' markers, found {len(p_names)}")
    n = (len(p_names) - 2) // 2
    if len(c_names) != 2 * n:
        raise NotSpinePolygon(f"need 2n='{2 * n}' 'c' markers, found {len(c_names)}")
    expect_p = [f"p{i}" for i in range(2 * n + 2)]
    expect_c = [f"c{i}" for i in range(1, 2 * n + 1)]
    if p_names != expect_p or c_names != expect_c:
        raise NotSpinePolygon("marker names must be p0..p{2n+1}, c1..c{2n}")

    # boundary cyclic order
    order = ["p0"]
    for i in range(1, n + 1):
        order += [f"c{i}", f"p{i}"]
    order += [f"p{n + 1}"]
    for i in range(n + 1, 2 * n + 1):
        order += [f"c{i}", f"p{i + 1}"]
    per = polygon.perimeter
    ss = [polygon.markers[x] for x in order]
    rotated = ss.index(min(ss))
    ss2 = ss[rotated:] + [s + per for s in ss[:rotated]]
    if any(b - a <= -1e-9 * per for a, b in zip(ss2, ss2[1:])):
        raise NotSpinePolygon("markers out of cyclic boundary order")

    pos = {name: polygon.point_at(m[name]) for name in m}
    scale = per

    def col(p, a, b):
        return abs(_vc(v_sub(b, a), v_sub(p, a))) <= 1e-9 * scale * scale

    for i in range(1, n):
        if not col(pos[f"p{i}"], pos["p0"], pos[f"p{n}"]):
            raise NotSpinePolygon(f"p{i} not on segment p0 p{n}")
    for i in range(n + 2, 2 * n + 1):
        if not col(pos[f"p{i}"], pos[f"p{n + 1}"], pos[f"p{2 * n + 1}"]):
            raise NotSpinePolygon(f"p{i} not on segment p{n + 1} p{2 * n + 1}")

    p0, pn = pos["p0"], pos[f"p{n}"]
    pn1, p2n1 = pos[f"p{n + 1}"], pos[f"p{2 * n + 1}"]
    gap = v_sub(v_sub(pn, p0), v_sub(pn1, p2n1))
    if math.hypot(*gap) > 1e-9 * scale:
        raise NotSpinePolygon("base is not a parallelogram")
    base_area = abs(_vc(v_sub(pn, p0), v_sub(p2n1, p0)))
    if base_area <= 1e-12 * scale * scale:
        raise NotSpinePolygon("base parallelogram has zero area")

    def spike_family(lo, hi):
        # bottom spikes carry apex c_{i+1}, top spikes carry apex c_i
        bases, legs = [], []
        for i in range(lo, hi):
            a = pos[f"p{i}"]
            c = pos[f"c{i + 1}" if i < n else f"c{i}"]
            b = pos[f"p{i + 1}"]
            l1, l2 = v_dist(a, c), v_dist(c, b)
            if abs(l1 - l2) > 1e-9 * max(scale, 1.0):
                raise NotSpinePolygon(f"spike T{i} is not isosceles")
            bases.append(v_dist(a, b))
            legs.append(0.5 * (l1 + l2))
        for vals in (bases, legs):
            if max(vals) - min(vals) > 1e-9 * max(scale, 1.0):
                raise NotSpinePolygon(f"spikes T{lo}..T{hi - 1} are not congruent")
        return sum(bases) / len(bases), sum(legs) / len(legs)

    bb, lb = spike_family(0, n)
    bt, lt = spike_family(n + 1, 2 * n + 1)
    return SpinePolygon(n, polygon, (p0, pn, pn1, p2n1), bb, lb, bt, lt)


def six_part_scheme(polygon, cuts) -> GluingScheme:
    """Boundary partition into six parts (two translated onto each other,
    four folded onto themselves about their midpoints).

    ``cuts`` are six boundary arclengths a <= ... <= f delimiting the parts
    l1=[a,b], l2=[b,c], l3=[c,d], l4=[d,e], l5=[e,f], l6=[f,a+perimeter].
    Zero-length parts are allowed and skipped.
    """
    per = polygon.perimeter
    a, b, c, d, e, f = cuts
    vals = [a, b, c, d, e, f, a + per]
    pairs = []
    l3 = (vals[2], vals[3])
    l6 = (vals[5], vals[6])
    if abs((l3[1] - l3[0]) - (l6[1] - l6[0])) > 1e-9 * per:
        raise SchemeError("translated parts differ in length")
    if l3[1] - l3[0] > 1e-12 * per:
        pairs.append(ArcPair(Arc(0, l3[0], l3[1]), Arc(0, l6[0], l6[1])))
    for (lo, hi) in ((vals[0], vals[1]), (vals[1], vals[2]),
                     (vals[3], vals[4]), (vals[4], vals[5])):
        if hi - lo <= 1e-12 * per:
            continue
        mid = 0.5 * (lo + hi)
        pairs.append(ArcPair(Arc(0, mid, hi), Arc(0, lo, mid)))
    return GluingScheme(pairs)


def fold_spine(sp: SpinePolygon, tol: Tolerance = DEFAULT_TOL):
    """Fold a spine polygon to a tetramonohedron.

    Returns (surface, scheme, report); the partition glues the two base
    sides to each other by translation and folds the four spiked parts onto
    themselves.
    """
    poly = sp.polygon
    n = sp.n
    s = poly.markers
    cuts = [s["p0"], s[f"c{n}"], s[f"p{n}"], s[f"p{n + 1}"],
            s[f"c{2 * n}"], s[f"p{2 * n + 1}"]]
    scheme = six_part_scheme(poly, cuts)
    report = check_alexandrov(poly, scheme, tol=tol)
    if not report.passed:
        from .errors import TopologyError
        raise TopologyError("spine folding failed verification: "
                            + report.condition2.detail)
    return report.surface, scheme, report
