"""Surface complexes: orbits, curvature bookkeeping, geodesic tracing."""

import math

import pytest

from refold.errors import TopologyError, VertexCollision
from refold.geom import PlanarPolygon, v_dist
from refold.solids import (cube_surface, doubly_covered_polygon,
                           doubly_covered_regular_ngon_surface,
                           regular_dodecahedron, regular_icosahedron,
                           regular_octahedron, regular_tetrahedron)
from refold.surface import (SurfacePoint, build_surface, classify_pi,
                            closed_surface_violations)

PHI = (1 + math.sqrt(5)) / 2


def face_center(surface, f):
    pts = surface.faces[f].pts
    return (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))


def test_regular_tetrahedron_orbit_structure():
    t = regular_tetrahedron(1.0)
    assert t.vertex_count == 4
    for v in range(4):
        assert t.cocurvature(v) == pytest.approx(math.pi, abs=1e-12)
    assert classify_pi(t) == (4, 4)


def test_doubly_covered_square():
    s = doubly_covered_polygon(PlanarPolygon([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert s.vertex_count == 4
    for v in range(4):
        assert s.cocurvature(v) == pytest.approx(math.pi, abs=1e-12)


def test_dodecahedron_cocurvatures():
    d = regular_dodecahedron(1.0)
    assert d.vertex_count == 20
    for v in range(20):
        assert d.cocurvature(v) == pytest.approx(9 * math.pi / 5, abs=1e-9)
    assert d.total_area() == pytest.approx(3 * math.sqrt(25 + 10 * math.sqrt(5)), rel=1e-12)


def test_cube_corner_curvature():
    c = cube_surface(1.0)
    for v in range(8):
        assert c.cocurvature(v) == pytest.approx(1.5 * math.pi, abs=1e-12)
        assert c.curvature(v) == pytest.approx(0.5 * math.pi, abs=1e-12)


def test_doubly_covered_pentagon_vertex():
    # oracle: two interior angles of the regular n-gon at n = 5
    s = doubly_covered_regular_ngon_surface(5, 1.0)
    want = 2 * (5 - 2) * math.pi / 5
    for v in range(5):
        assert s.cocurvature(v) == pytest.approx(want, abs=1e-12)


def test_classify_examples():
    assert classify_pi(regular_tetrahedron(1.0)) == (4, 4)
    assert classify_pi(cube_surface(2.0)) == (0, 8)
    # doubled angles: a right angle doubles to exactly pi, so a right
    # triangle has one smooth vertex and only non-right triangles give (0, 3)
    tri_right = PlanarPolygon([(0, 0), (2, 0), (0, 2 / math.sqrt(3))])
    assert classify_pi(doubly_covered_polygon(tri_right)) == (1, 3)
    tri = PlanarPolygon([(0, 0), (2, 0), (0.4, 1.1)])
    for ang in (tri.interior_angle(i) for i in range(3)):
        assert abs(2 * ang - math.pi) > 1e-6
    assert classify_pi(doubly_covered_polygon(tri)) == (0, 3)


def test_gauss_bonnet_all_solids():
    for s in (regular_tetrahedron(1.0), cube_surface(1.0), regular_octahedron(1.0),
              regular_icosahedron(1.0), regular_dodecahedron(1.0)):
        assert not closed_surface_violations(s)
        total = sum(s.curvature(v) for v in range(s.vertex_count))
        assert total == pytest.approx(4 * math.pi, abs=2e-8)


def test_trace_within_face():
    c = cube_surface(1.0)
    ctr = face_center(c, 0)
    seg = c.trace(SurfacePoint(0, ctr), (1.0, 0.0), 0.4)
    assert len(seg.chords) == 1
    assert v_dist(ctr, seg.end.xy) == pytest.approx(0.4, abs=1e-12)


def test_trace_across_one_edge():
    c = cube_surface(1.0)
    seg = c.trace(SurfacePoint(0, face_center(c, 0)), (1.0, 0.0), 1.0)
    assert len(seg.chords) == 2
    assert seg.length == pytest.approx(1.0)


def test_trace_additivity():
    c = cube_surface(1.0)
    ctr = face_center(c, 0)
    whole = c.trace(SurfacePoint(0, ctr), (0.3, 1.0), 2.0)
    first = c.trace(SurfacePoint(0, ctr), (0.3, 1.0), 0.7)
    f, p0, p1 = first.chords[-1]
    rest = c.trace(SurfacePoint(f, p1), (p1[0] - p0[0], p1[1] - p0[1]), 1.3)
    assert whole.end.face == rest.end.face
    assert v_dist(whole.end.xy, rest.end.xy) < 1e-9


def test_dodecahedron_vertex_distances():
    # from any vertex: 3 vertices at geodesic distance 1, 6 at distance phi
    from refold.alexandrov import vertex_geodesic_distance
    from refold.errors import ConstructionError
    d = regular_dodecahedron(1.0)
    v0 = d.label_vertex("v0")
    at_one = 0
    at_phi = 0
    for w in range(d.vertex_count):
        if w == v0:
            continue
        try:
            L, _ = vertex_geodesic_distance(d, v0, w, upper=PHI * 1.01)
        except ConstructionError:
            continue  # farther than the cap
        if abs(L - 1.0) < 1e-9:
            at_one += 1
        elif abs(L - PHI) < 1e-9:
            at_phi += 1
    assert at_one == 3
    assert at_phi == 6


def test_trace_through_cone_vertex_rejected():
    t = regular_tetrahedron(1.0)
    f0 = t.faces[0]
    # aim straight at a corner with length far beyond it
    ctr = face_center(t, 0)
    corner = f0.pts[0]
    d = (corner[0] - ctr[0], corner[1] - ctr[1])
    with pytest.raises(VertexCollision):
        t.trace(SurfacePoint(0, ctr), d, 2.0)


def test_build_surface_rejects_bad_topology():
    from refold.surface import Face
    # two triangles glued along one edge only: boundary remains
    f0 = Face(0, ((0, 0), (1, 0), (0, 1)))
    f1 = Face(1, ((0, 0), (1, 0), (0, 1)))
    with pytest.raises(TopologyError):
        build_surface([f0, f1], {(0, 0): (1, 0)})
