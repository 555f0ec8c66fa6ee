"""Intrinsic cut-and-glue pipeline reducing any tetrahedron to a
tetramonohedron, plus the general few-smooth-vertices reduction that drops
one vertex per double step."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .alexandrov import (Arc, ArcPair, BoundaryCoords, GluingScheme,
                         check_alexandrov, fold_arc, is_tetramonohedron,
                         vertex_geodesic_distance)
from .cutting import cut_along
from .errors import (ConstructionError, CutGraphError, SchemeError,
                     UnsupportedInput, VertexCollision)
from .geom import DEFAULT_TOL, TWO_PI, Tolerance, v_dist, v_sub
from .solids import tetrahedron_surface
from .surface import GeodesicSegment, Surface, SurfacePoint, classify_pi


@dataclass
class ReductionStep:
    """One verified cut-and-reglue move."""

    input_surface: Surface
    cuts: list
    scheme: GluingScheme
    output_surface: Surface
    report: object
    expected_class: tuple
    note: str = ""

    def check(self, tol: Tolerance = DEFAULT_TOL):
        got = classify_pi(self.output_surface)
        if got != tuple(self.expected_class):
            raise ConstructionError(
                f"{self.note}: class {got}, expected {self.expected_class}")
        a_in = self.input_surface.total_area()
        a_out = self.output_surface.total_area()
        if abs(a_in - a_out) > 1e-9 * max(1.0, a_in):
            raise ConstructionError(f"{self.note}: area drifted")
        total = sum(self.output_surface.curvature(v)
                    for v in range(self.output_surface.vertex_count))
        if abs(total - 4.0 * math.pi) > 2e-7:
            raise ConstructionError(f"{self.note}: total curvature {total}")
        return self


def _make_pair(walk, sa0, sa1, image_of_sa0) -> ArcPair:
    """Arc pair from explicit endpoints: the decreasing map s_b = c - s_a."""
    c = sa0 + image_of_sa0
    return ArcPair(Arc(walk, sa0, sa1), Arc(walk, c - sa1, c - sa0))


def _edge_between(surface, va, vb):
    for (f, e) in surface.gluings:
        c0 = surface.orbit_of[(f, e)]
        c1 = surface.orbit_of[(f, (e + 1) % surface.faces[f].n)]
        if {c0, c1} == {va, vb}:
            return (f, e)
    return None


# ---------------------------------------------------------------------------
# step 1: merge the two smallest-cocurvature vertices


def merge_min_cocurvature(q: Surface, tol: Tolerance = DEFAULT_TOL) -> ReductionStep:
    """Slit the edge joining the two smallest-cocurvature vertices of a
    tetrahedron and zip each side onto itself about its midpoint, merging the
    endpoints into one vertex and minting two smooth ones."""
    k, n = classify_pi(q, tol)
    if n != 4:
        raise UnsupportedInput(f"expected a tetrahedron, got {n} vertices")
    if k != 0:
        raise UnsupportedInput("smooth vertices on the input are out of scope")
    verts = sorted(q.real_vertices(), key=lambda v: (q.cocurvature(v), v))
    va, vb = verts[0], verts[1]
    if q.cocurvature(va) + q.cocurvature(vb) > TWO_PI + tol.eps_ang:
        raise UnsupportedInput("two smallest cocurvatures exceed a full angle")
    from .cutting import EdgeCut
    edge = _edge_between(q, va, vb)
    if edge is None:
        raise ConstructionError("vertices not joined by a complex edge")
    res = cut_along(q, [EdgeCut(edge)])
    bc = BoundaryCoords(res.surface)
    if len(bc.walks) != 1:
        raise ConstructionError("edge slit should open a single walk")
    w, lo, hi, _ = bc.side_span(res.sides[0].left)
    L = hi - lo
    scheme = GluingScheme([fold_arc(0, lo + 0.5 * L, 0.5 * L),
                           fold_arc(0, lo + 1.5 * L, 0.5 * L)])
    rep = check_alexandrov(res.surface, scheme, tol)
    if not rep.passed:
        raise ConstructionError("merge regluing failed verification: "
                                + rep.condition2.detail)
    return ReductionStep(q, list(res.sides), scheme, rep.surface, rep,
                         (2, 5), "merge").check(tol)


# ---------------------------------------------------------------------------
# the shared star construction (three cuts through one hinge vertex)


def _trace_ray_until_segment(surface, v_from, fan_angle, target: GeodesicSegment,
                             max_len):
    """Shoot from a vertex and stop at the first crossing with the target
    segment's footprint; returns (ray_segment, split_length_on_target)."""
    from .geom import segment_intersection_param
    corner, d = surface.fan_direction(v_from, fan_angle)
    f = corner[0]
    p = surface.faces[corner[0]].pts[corner[1]]
    remaining = max_len
    chords = []
    crossings = []
    acc = 0.0
    guard = 0
    target_acc = {}
    walk_len = 0.0
    # arclength of each target chord start
    for (tf, tp, tq) in target.chords:
        target_acc.setdefault(tf, []).append((walk_len, tp, tq))
        walk_len += v_dist(tp, tq)
    while guard < 1000:
        guard += 1
        face = surface.faces[f]
        hit = surface._exit_through_edge(face, p, d)
        if hit is None:
            raise ConstructionError("ray found no exit while hunting the target")
        t_exit, k, u = hit
        seg_end = (p[0] + d[0] * min(t_exit, remaining),
                   p[1] + d[1] * min(t_exit, remaining))
        # does this chord cross the target's chords in this face?
        best = None
        for (t0, tp, tq) in target_acc.get(f, []):
            hit2 = segment_intersection_param(p, v_sub(seg_end, p), tp, v_sub(tq, tp))
            if hit2 is None:
                continue
            a, b = hit2
            if 1e-9 < a <= 1.0 + 1e-9 and 1e-4 <= b <= 1.0 - 1e-4:
                if best is None or a < best[0]:
                    best = (a, b, t0, tp, tq)
        if best is not None:
            a, b, t0, tp, tq = best
            m_pt = (tp[0] + (tq[0] - tp[0]) * b, tp[1] + (tq[1] - tp[1]) * b)
            chords.append((f, p, m_pt))
            length = acc + v_dist(p, m_pt)
            ray = GeodesicSegment(chords, length,
                                  SurfacePoint(corner[0],
                                               surface.faces[corner[0]].pts[corner[1]]),
                                  SurfacePoint(f, m_pt),
                                  start_vertex=corner, end_vertex=None,
                                  crossings=crossings)
            return ray, t0 + v_dist(tp, m_pt) * (1.0 if True else 1.0)
        if t_exit >= remaining:
            raise ConstructionError("ray missed the target segment")
        chords.append((f, p, seg_end))
        acc += t_exit
        remaining -= t_exit
        part = surface.gluings.get((f, k))
        if part is None:
            raise ConstructionError("ray left the surface")
        crossings.append(((f, k), u))
        M = surface.edge_transform(part)
        p = M.apply(seg_end)
        d = M.apply_vec(d)
        f = part[0]
    raise ConstructionError("ray wandered too long")


def _split_segment(seg: GeodesicSegment, at_len: float):
    """Split a traced segment at an interior arclength into two segments,
    distributing the recorded edge crossings to the halves."""
    first = []
    second = []
    cross_first = []
    cross_second = []
    acc = 0.0
    split_pt = None
    split_face = None
    for idx, (f, p, q) in enumerate(seg.chords):
        L = v_dist(p, q)
        if split_pt is not None:
            second.append((f, p, q))
        elif acc + L <= at_len + 1e-12 and abs(acc + L - at_len) > 1e-9:
            first.append((f, p, q))
        else:
            t = (at_len - acc) / L
            m = (p[0] + (q[0] - p[0]) * t, p[1] + (q[1] - p[1]) * t)
            split_pt, split_face = m, f
            if v_dist(p, m) > 1e-12:
                first.append((f, p, m))
            if v_dist(m, q) > 1e-12:
                second.append((f, m, q))
        # crossing idx sits between chords idx and idx+1
        if idx < len(seg.crossings):
            (cross_first if split_pt is None else cross_second).append(
                seg.crossings[idx])
        acc += L
    if split_pt is None:
        raise ConstructionError("split point beyond segment")
    mid = SurfacePoint(split_face, split_pt)
    a = GeodesicSegment(first, at_len, seg.start, mid,
                        start_vertex=seg.start_vertex, end_vertex=None,
                        crossings=cross_first)
    b = GeodesicSegment(second, seg.length - at_len, mid, seg.end,
                        start_vertex=None, end_vertex=seg.end_vertex,
                        crossings=cross_second)
    return a, b


def _direction_angle_at(surface, v, seg: GeodesicSegment) -> float:
    """Fan coordinate at vertex v of a traced segment leaving v."""
    corner = seg.start_vertex
    f, p, q = seg.chords[0]
    d = v_sub(q, p)
    L = math.hypot(*d)
    return surface.fan_angle_of_direction(v, corner, (d[0] / L, d[1] / L))


def _star_reduction(q: Surface, la: int, lb: int, vi: int, vj: int,
                    expected_class, tol: Tolerance = DEFAULT_TOL, note="star"):
    """Cut the smooth-pair segment, the segment v_j v_i, and a third segment
    from v_j hitting the smooth-pair segment at the prescribed angle, then
    reglue so that three boundary midpoints become smooth vertices.

    Works for both the 5-vertex splitting step and the 5-vertex base case.
    The rotation sense of the angle condition is fixed by demanding the
    expected output class (the wrong sense can still fold validly, but onto
    a surface with one vertex too many).
    """
    d_len, g1 = vertex_geodesic_distance(q, vj, vi)
    L_len, glam = vertex_geodesic_distance(q, la, lb)
    kappa_i = q.curvature(vi)
    base_angle = _direction_angle_at(q, vj, g1)
    sigma_j = q.cocurvature(vj)
    errors = []
    for sign in (+1.0, -1.0):
        ang = (base_angle + sign * kappa_i) % sigma_j
        try:
            gm, split_at = _trace_ray_until_segment(
                q, vj, ang, glam, max_len=4.0 * (d_len + L_len))
            result = _star_glue(q, g1, gm, glam, split_at, q.curvature(vi),
                                tol, note)
        except (ConstructionError, VertexCollision, CutGraphError,
                SchemeError) as exc:
            errors.append(str(exc))
            continue
        got = classify_pi(result[2].surface, tol)
        if got == tuple(expected_class):
            return result
        errors.append(f"class {got} != {expected_class}")
    raise ConstructionError(f"{note}: both rotation senses failed "
                            f"({' / '.join(errors) or 'no ray hit'})")


def _star_glue(q, g1, gm, glam, split_at, kappa_i, tol, note):
    d_len = g1.length
    L_len = glam.length
    e_len = gm.length
    lam_a, lam_b = _split_segment(glam, split_at)

    res = cut_along(q, [g1, gm, lam_a, lam_b])
    bc = BoundaryCoords(res.surface)
    if len(bc.walks) != 1:
        raise ConstructionError(f"{note}: cut tree should open one walk")
    T = bc.lengths[0]

    g1_spans = [bc.side_span(res.sides[0].left), bc.side_span(res.sides[0].right)]
    gm_spans = [bc.side_span(res.sides[1].left), bc.side_span(res.sides[1].right)]

    def endpoints(span):
        w, lo, hi, _ = span
        return (bc.wrap(0, lo), bc.wrap(0, hi))

    def near(a, b):
        d0 = abs(a - b)
        return min(d0, T - d0) <= 1e-7 * max(1.0, T)

    # v_j^1 = endpoint shared by a g1 side and a gm side
    svj1 = None
    side_x = None
    for gs in g1_spans:
        for ms in gm_spans:
            for p1 in endpoints(gs):
                for p2 in endpoints(ms):
                    if near(p1, p2):
                        svj1, side_x = p1, gs
                        break
    if svj1 is None:
        raise ConstructionError(f"{note}: boundary layout not recognized")
    # v_i = the other endpoint of side_x's partner g1 side... v_i is the
    # endpoint of side_x away from v_j^1
    e0, e1 = endpoints(side_x)
    svi = e1 if near(e0, svj1) else e0
    # orientation: +1 if walking from v_i by +d lands on v_j^1
    if near(bc.wrap(0, svi + d_len), svj1):
        sgn = +1.0
    elif near(bc.wrap(0, svi - d_len), svj1):
        sgn = -1.0
    else:
        raise ConstructionError(f"{note}: side span arithmetic failed")

    def upair(u0, u1, c):
        """Pair the cut-coordinate arc [u0, u1] under the map u -> c - u."""
        sa0 = svi + sgn * u0
        sa1 = svi + sgn * u1
        lo, hi = (sa0, sa1) if sa0 <= sa1 else (sa1, sa0)
        cw = 2.0 * svi + sgn * c
        return ArcPair(Arc(0, lo, hi), Arc(0, cw - hi, cw - lo))

    e, dd, LL = e_len, d_len, L_len
    pairs = [
        upair(T - dd / 2.0, T, 2.0 * T - dd),            # fold about c1
        upair(0.0, e, T - dd),                           # [v_i, s] onto [v_j2, m3]
        upair(dd + e + LL, dd + e + 2.0 * LL,
              2.0 * (dd + e + LL)),                      # fold about c2
        upair(e + dd / 2.0, e + dd, 2.0 * e + dd),       # fold about c3
    ]
    scheme = GluingScheme(pairs)
    rep = check_alexandrov(res.surface, scheme, tol)
    if not rep.passed:
        raise ConstructionError(f"{note}: regluing failed: "
                                + rep.condition1.detail + " | "
                                + rep.condition2.detail)
    return res, scheme, rep


def split_to_pi3(q: Surface, tol: Tolerance = DEFAULT_TOL) -> ReductionStep:
    """Five vertices, two smooth: split the larger-cocurvature pair so three
    boundary midpoints become smooth, landing on three smooth vertices."""
    k, n = classify_pi(q, tol)
    if (k, n) != (2, 5):
        raise UnsupportedInput(f"expected class (2,5), got {(k, n)}")
    smooth = q.smooth_vertices()
    # the two sharpest vertices (largest curvature): their curvature sum
    # sits in [4pi/3, 2pi], which keeps the merged leftover below a full
    # angle; vi is the flatter of the pair
    others = sorted((v for v in q.real_vertices() if v not in smooth),
                    key=lambda v: (q.cocurvature(v), v))
    vi, vj = others[1], others[0]  # kappa(vi) < kappa(vj)
    ksum = q.curvature(vi) + q.curvature(vj)
    if not (4.0 * math.pi / 3.0 - 1e-9 <= ksum <= TWO_PI + 1e-9):
        raise ConstructionError(f"curvature budget violated: {ksum}")
    res, scheme, rep = _star_reduction(q, smooth[0], smooth[1], vi, vj,
                                       (3, 5), tol, note="split")
    out = rep.surface
    step = ReductionStep(q, [], scheme, out, rep, (3, 5), "split").check(tol)
    # the leftover piece of the split pair carries 3*pi - (kappa_i + kappa_j)
    want = 3.0 * math.pi - (q.curvature(vi) + q.curvature(vj))
    got = sorted(out.cocurvature(v) for v in out.real_vertices()
                 if abs(out.cocurvature(v) - math.pi) > 1e-7
                 and not _matches_any(out.cocurvature(v), q, (vi, vj)))
    if not any(abs(gv - want) <= 1e-7 for gv in
               [out.cocurvature(v) for v in out.real_vertices()]):
        raise ConstructionError(f"expected a vertex of cocurvature {want}")
    if not (math.pi - 1e-9 <= want <= 5.0 * math.pi / 3.0 + 1e-9):
        raise ConstructionError(f"merged cocurvature {want} outside [pi, 5pi/3]")
    return step


def _matches_any(value, q, verts):
    return any(abs(value - q.cocurvature(v)) <= 1e-9 for v in verts)


def pi3_base_case(q: Surface, tol: Tolerance = DEFAULT_TOL) -> ReductionStep:
    """Five vertices, three smooth: one more star cut lands in the
    four-smooth-vertices class."""
    k, n = classify_pi(q, tol)
    if (k, n) != (3, 5):
        raise UnsupportedInput(f"expected class (3,5), got {(k, n)}")
    smooth = q.smooth_vertices()
    others = sorted((v for v in q.real_vertices() if v not in smooth),
                    key=lambda v: (q.cocurvature(v), v))
    vi, vj = others[1], others[0]  # kappa(vi) < kappa(vj)
    # here kappa_i + kappa_j = pi by the angle budget
    if abs(q.curvature(vi) + q.curvature(vj) - math.pi) > 1e-7:
        raise ConstructionError("curvature pair does not sum to pi")
    la, lb = smooth[0], smooth[1]
    res, scheme, rep = _star_reduction(q, la, lb, vi, vj, (4, 4), tol,
                                       note="base")
    out = rep.surface
    step = ReductionStep(q, [], scheme, out, rep, (4, 4), "base").check(tol)
    if is_tetramonohedron(out, tol) is None:
        raise ConstructionError("base case did not reach a tetramonohedron")
    return step


def tetrahedron_to_tetramonohedron(q: Surface, tol: Tolerance = DEFAULT_TOL):
    """Three verified steps from a no-smooth-vertex tetrahedron to a
    tetramonohedron."""
    s1 = merge_min_cocurvature(q, tol)
    s2 = split_to_pi3(s1.output_surface, tol)
    s3 = pi3_base_case(s2.output_surface, tol)
    return [s1, s2, s3]


# ---------------------------------------------------------------------------
# the inductive vertex-count reduction


def _rolling_belt_reglue(q: Surface, la: int, lb: int, offset: float,
                         tol: Tolerance):
    """Cut the smooth-pair segment and reglue shifted so the fold points sit
    at parameters offset and L - offset along it."""
    L_len, glam = vertex_geodesic_distance(q, la, lb)
    if not (1e-9 < offset < L_len - 1e-9):
        raise ConstructionError("belt offset outside the open segment")
    res = cut_along(q, [glam])
    bc = BoundaryCoords(res.surface)
    w, lo, hi, dirn = bc.side_span(res.sides[0].left)
    # left side runs along the cut (la -> lb); fold points at offset from la
    if dirn == +1:
        f1 = lo + offset
    else:
        f1 = hi - offset
    # fold about f1 with half-length = offset; the rest of the doubled slit
    # folds about the antipodal point
    total = bc.lengths[0]
    rest_half = 0.5 * (total - 2.0 * offset)
    f2 = f1 + offset + rest_half
    scheme = GluingScheme([fold_arc(0, bc.wrap(0, f1), offset),
                           fold_arc(0, bc.wrap(0, f2), rest_half)])
    rep = check_alexandrov(res.surface, scheme, tol)
    if not rep.passed:
        raise ConstructionError("belt regluing failed: " + rep.condition2.detail)
    return res, scheme, rep


def pi3_inductive_step(q: Surface, tol: Tolerance = DEFAULT_TOL):
    """Two refolding moves taking class (3, k) to (3, k-1) for k > 5: a
    rolling-belt reglue of the smooth-pair segment, then a star cut through
    the two chosen vertices."""
    k, n = classify_pi(q, tol)
    if k != 3 or n <= 5:
        raise UnsupportedInput(f"expected class (3, k>5), got {(k, n)}")
    smooth = q.smooth_vertices()
    others = sorted((v for v in q.real_vertices() if v not in smooth),
                    key=lambda v: (-q.cocurvature(v), v))
    vi, vj = others[0], others[1]
    ki, kj = q.curvature(vi), q.curvature(vj)
    if not (0.0 < ki + kj < math.pi + 1e-12):
        raise ConstructionError(f"curvature pair {ki + kj} outside (0, pi)")

    la, lb, lc = smooth[0], smooth[1], smooth[2]
    sigma_i = q.cocurvature(vi)
    d_len, _ = vertex_geodesic_distance(q, vi, vj)

    def attempt(offset_frac, pair):
        pa, pb = pair
        L_len, _ = vertex_geodesic_distance(q, pa, pb)
        belt_res, belt_scheme, belt_rep = _rolling_belt_reglue(
            q, pa, pb, offset_frac * L_len, tol)
        q1 = belt_rep.surface
        step_a = ReductionStep(q, [], belt_scheme, q1, belt_rep, (3, n),
                               "belt").check(tol)
        out = _inductive_second_move(q1, q, vi, vj, tol)
        return step_a, out

    last_error = None
    for pair in ((la, lb), (la, lc), (lb, lc)):
        for frac in (0.5, 0.35, 0.65, 0.25, 0.75, 0.45, 0.55):
            try:
                step_a, step_b = attempt(frac, pair)
                return [step_a, step_b]
            except (ConstructionError, UnsupportedInput, VertexCollision) as exc:
                last_error = exc
    raise ConstructionError(f"inductive step failed: {last_error}")


def _inductive_second_move(q1: Surface, q0: Surface, vi_old, vj_old,
                           tol: Tolerance):
    """The double-star move on the belt-reglued surface."""
    k, n = classify_pi(q1, tol)
    smooth = q1.smooth_vertices()
    if k != 3:
        raise ConstructionError("belt reglue lost a smooth vertex")
    # match the chosen vertices on the new surface by cocurvature
    def find_matching(value):
        cands = [v for v in q1.real_vertices()
                 if abs(q1.cocurvature(v) - value) <= 1e-9 and v not in smooth]
        if not cands:
            raise ConstructionError("chosen vertex lost in the belt reglue")
        return cands[0]

    vi = find_matching(q0.cocurvature(vi_old))
    vj = find_matching(q0.cocurvature(vj_old))
    kj = q1.curvature(vj)
    sigma_i = q1.cocurvature(vi)
    d_len, g_b = vertex_geodesic_distance(q1, vi, vj)

    base_angle = _direction_angle_at(q1, vi, g_b)
    # m' sits where the ray from v_i at angle kappa_j meets a smooth-pair
    # segment; try both rotation senses and all smooth pairs
    best = None
    for (pa, pb) in ((smooth[0], smooth[1]), (smooth[0], smooth[2]),
                     (smooth[1], smooth[2])):
        try:
            L_len, glam = vertex_geodesic_distance(q1, pa, pb)
        except ConstructionError:
            continue
        for sign in (+1.0, -1.0):
            ang = (base_angle + sign * kj) % sigma_i
            try:
                gm, split_at = _trace_ray_until_segment(
                    q1, vi, ang, glam, max_len=4.0 * (d_len + L_len))
            except (ConstructionError, VertexCollision):
                continue
            # the closing fold needs |v_i m'| = |v_i v_j| / 2
            if abs(gm.length - 0.5 * d_len) <= 1e-7 * max(1.0, d_len):
                best = (pa, pb, gm, split_at, glam)
                break
        if best:
            break
    if best is None:
        raise ConstructionError("no hinge point at half the pair distance")
    pa, pb, gm, split_at, glam = best
    lam_a, lam_b = _split_segment(glam, split_at)
    third = [v for v in smooth if v not in (pa, pb)][0]
    g_a_len, g_a = vertex_geodesic_distance(q1, third, vi)

    res = cut_along(q1, [g_b, gm, lam_a, lam_b, g_a])
    bc = BoundaryCoords(res.surface)
    if len(bc.walks) != 1:
        raise ConstructionError("inductive cut should open one walk")
    T = bc.lengths[0]
    dd = g_b.length
    e = gm.length
    u = lam_a.length
    w = lam_b.length
    x = g_a.length

    gb_spans = [bc.side_span(res.sides[0].left), bc.side_span(res.sides[0].right)]

    def endpoints(span):
        _, lo, hi, _ = span
        return (bc.wrap(0, lo), bc.wrap(0, hi))

    def near(a, b):
        d0 = abs(a - b)
        return min(d0, T - d0) <= 1e-7 * max(1.0, T)

    # v_j = the endpoint where the two g_b sides meet
    svj = None
    for p1 in endpoints(gb_spans[0]):
        for p2 in endpoints(gb_spans[1]):
            if near(p1, p2):
                svj = p1
    if svj is None:
        raise ConstructionError("g_b sides do not meet at a leaf")
    for sgn in (+1.0, -1.0):
        def pos(uu):
            return bc.wrap(0, svj + sgn * uu)
        pairs = [
            fold_arc(0, pos(dd / 2.0), e + dd / 2.0),
            fold_arc(0, pos(dd + e + u + w), u + w),
            fold_arc(0, pos(dd + e + 2.0 * (u + w) + (dd / 2.0 + x)), dd / 2.0 + x),
        ]
        scheme = GluingScheme(pairs)
        try:
            rep = check_alexandrov(res.surface, scheme, tol)
        except Exception:
            continue
        if rep.passed:
            out = rep.surface
            kk, nn = classify_pi(out, tol)
            if (kk, nn) == (3, classify_pi(q1, tol)[1] - 1):
                step = ReductionStep(q1, [], scheme, out, rep,
                                     (3, classify_pi(q1, tol)[1] - 1),
                                     "inductive")
                return step.check(tol)
    raise ConstructionError("inductive regluing failed both orientations")


def pi3_reduce(q: Surface, tol: Tolerance = DEFAULT_TOL):
    """Full reduction from class (3, n) to four smooth vertices in 2n - 9
    refolding steps."""
    k, n = classify_pi(q, tol)
    if k != 3 or n < 5:
        raise UnsupportedInput(f"expected class (3, n >= 5), got {(k, n)}")
    steps = []
    cur = q
    while classify_pi(cur, tol)[1] > 5:
        two = pi3_inductive_step(cur, tol)
        steps.extend(two)
        cur = two[-1].output_surface
    steps.append(pi3_base_case(cur, tol))
    return steps


# ---------------------------------------------------------------------------
# random instance generators (test data; 3-space used only here)


def random_tetrahedron_surface(rng: random.Random, max_tries: int = 200) -> Surface:
    """Random tetrahedron with four clearly non-smooth vertices."""
    for _ in range(max_tries):
        pts = [(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
               for _ in range(4)]
        # reject flat or needle-like shapes
        ax = [tuple(p[i] - pts[0][i] for i in range(3)) for p in pts[1:]]
        det = (ax[0][0] * (ax[1][1] * ax[2][2] - ax[1][2] * ax[2][1])
               - ax[0][1] * (ax[1][0] * ax[2][2] - ax[1][2] * ax[2][0])
               + ax[0][2] * (ax[1][0] * ax[2][1] - ax[1][1] * ax[2][0]))
        if abs(det) < 0.08:
            continue
        try:
            s = tetrahedron_surface(pts)
        except Exception:
            continue
        cocurvs = [s.cocurvature(v) for v in range(s.vertex_count)]
        if any(abs(c - math.pi) < 0.15 for c in cocurvs):
            continue
        if any(c > TWO_PI - 0.15 for c in cocurvs):
            continue
        two = sorted(cocurvs)[:2]
        if two[0] + two[1] > TWO_PI - 0.15:
            continue
        return s
    raise ConstructionError("no usable random tetrahedron found")


def random_pi3_polygon_surface(n: int, rng: random.Random,
                               max_tries: int = 400) -> Surface:
    """Doubly covered convex n-gon with exactly three right angles: its
    doubling lies in class (3, n)."""
    from .geom import PlanarPolygon
    from .solids import doubly_covered_polygon
    if n < 5:
        raise UnsupportedInput("need n >= 5 for three right angles")
    for _ in range(max_tries):
        w = rng.uniform(1.5, 2.5)
        a = rng.uniform(0.5, 0.9)
        pts = [(0.0, 0.0), (w, 0.0), (w, a)]
        # convex chain from (w, a) back to (0, b): n - 3 free vertices
        b = rng.uniform(1.2, 1.6)
        free = n - 3
        chain = []
        for i in range(1, free):
            t = i / free
            x = w * (1.0 - t)
            bulge = rng.uniform(0.05, 0.3)
            y = a + (b - a) * t + bulge * math.sin(math.pi * t)
            chain.append((x, y))
        pts += chain + [(0.0, b)]
        try:
            poly = PlanarPolygon(pts)
        except Exception:
            continue
        if poly.reoriented or not _strictly_convex(poly):
            continue
        angles = [poly.interior_angle(i) for i in range(len(poly))]
        rights = [i for i, ang in enumerate(angles)
                  if abs(ang - 0.5 * math.pi) < 1e-12]
        others_ok = all(abs(ang - 0.5 * math.pi) > 0.05
                        for i, ang in enumerate(angles) if i not in rights)
        if len(rights) == 3 and others_ok:
            s = doubly_covered_polygon(poly)
            if classify_pi(s) == (3, n):
                return s
    raise ConstructionError("no usable random (3, n) instance found")


def _strictly_convex(poly):
    n = len(poly)
    for i in range(n):
        if poly.interior_angle(i) >= math.pi - 1e-9:
            return False
    return True
