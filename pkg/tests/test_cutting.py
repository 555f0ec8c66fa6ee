"""Cut surgery and the cut/glue round trip."""

import math
import random

import pytest

from refold.alexandrov import BoundaryCoords, check_alexandrov, identity_scheme
from refold.cutting import EdgeCut, cut_along
from refold.errors import CutGraphError, VertexCollision
from refold.geom import v_dist
from refold.solids import (cube_surface, doubly_covered_triangle_surface,
                           regular_tetrahedron)
from refold.surface import SurfacePoint


def edge_between(s, la, lb):
    a, b = s.label_vertex(la), s.label_vertex(lb)
    for (f, e) in list(s.gluings):
        c0 = s.orbit_of[(f, e)]
        c1 = s.orbit_of[(f, (e + 1) % s.faces[f].n)]
        if {c0, c1} == {a, b}:
            return (f, e)
    raise KeyError((la, lb))


def face_center(surface, f):
    pts = surface.faces[f].pts
    return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def test_tetrahedron_opposite_edges_to_cylinder():
    t = regular_tetrahedron(1.0)
    res = cut_along(t, [EdgeCut(edge_between(t, "v0", "v1")),
                        EdgeCut(edge_between(t, "v2", "v3"))])
    bc = BoundaryCoords(res.surface)
    assert len(bc.walks) == 2
    assert sorted(bc.lengths) == pytest.approx([2.0, 2.0])
    assert res.surface.total_area() == pytest.approx(t.total_area(), rel=1e-12)


def test_interior_slit_boundary_length():
    c = cube_surface(1.0)
    ctr = face_center(c, 0)
    seg = c.trace(SurfacePoint(0, (ctr[0] - 0.2, ctr[1])), (1.0, 0.0), 0.4)
    res = cut_along(c, [seg])
    bc = BoundaryCoords(res.surface)
    assert len(bc.walks) == 1
    assert bc.lengths[0] == pytest.approx(0.8, abs=1e-12)


def test_dc_triangle_two_edges_is_disk():
    s = doubly_covered_triangle_surface([(0, 0), (2, 0), (0.7, 1)])
    res = cut_along(s, [EdgeCut(edge_between(s, "v0", "v2")),
                        EdgeCut(edge_between(s, "v1", "v2"))])
    assert len(res.surface.boundary_walks()) == 1
    assert res.surface.euler_characteristic() == 1  # disk


def test_roundtrip_preserves_curvature_multiset():
    c = cube_surface(1.0)
    base = c.curvature_multiset()
    rng = random.Random(11)
    done = 0
    while done < 40:
        f = rng.randrange(6)
        ctr = face_center(c, f)
        start = (ctr[0] + rng.uniform(-0.2, 0.2), ctr[1] + rng.uniform(-0.2, 0.2))
        th = rng.uniform(0, 2 * math.pi)
        L = rng.uniform(0.2, 1.4)
        try:
            seg = c.trace(SurfacePoint(f, start), (math.cos(th), math.sin(th)), L)
            res = cut_along(c, [seg])
        except (VertexCollision, CutGraphError):
            continue
        bc = BoundaryCoords(res.surface)
        rep = check_alexandrov(res.surface, identity_scheme(bc, res.sides))
        assert rep.passed
        got = rep.surface.curvature_multiset()
        assert len(got) == len(base)
        for x, y in zip(got, base):
            assert x == pytest.approx(y, abs=1e-9)
        assert rep.surface.total_area() == pytest.approx(6.0, rel=1e-12)
        done += 1


def test_crossing_cuts_rejected():
    c = cube_surface(1.0)
    ctr = face_center(c, 0)
    s1 = c.trace(SurfacePoint(0, (ctr[0] - 0.2, ctr[1])), (1.0, 0.0), 0.4)
    s2 = c.trace(SurfacePoint(0, (ctr[0], ctr[1] - 0.2)), (0.0, 1.0), 0.4)
    with pytest.raises(CutGraphError):
        cut_along(c, [s1, s2])


def test_cycle_in_cut_graph_rejected():
    t = regular_tetrahedron(1.0)
    cuts = [EdgeCut(edge_between(t, "v0", "v1")),
            EdgeCut(edge_between(t, "v1", "v2")),
            EdgeCut(edge_between(t, "v2", "v0"))]
    with pytest.raises(CutGraphError):
        cut_along(t, cuts)


def test_cut_sides_bookkeeping():
    t = regular_tetrahedron(1.0)
    res = cut_along(t, [EdgeCut(edge_between(t, "v0", "v1"))])
    side = res.sides[0]
    assert side.left and side.right
    bc = BoundaryCoords(res.surface)
    wl, lo_l, hi_l, dl = bc.side_span(side.left)
    wr, lo_r, hi_r, dr = bc.side_span(side.right)
    assert hi_l - lo_l == pytest.approx(1.0)
    assert hi_r - lo_r == pytest.approx(1.0)
    assert dl != dr
