"""Folding-condition checks, tetramonohedron recognition, spine polygons."""

import math

import pytest

from refold.alexandrov import (Arc, ArcPair, GluingScheme, check_alexandrov,
                               fold_arc, glue_boundary, is_tetramonohedron,
                               validate_spine, fold_spine)
from refold.errors import NotSpinePolygon, SchemeError, InvalidTriangle
from refold.geom import PlanarPolygon
from refold.solids import (cube_surface, doubly_covered_polygon,
                           regular_tetrahedron)
from refold.surface import classify_pi


def unit_square():
    return PlanarPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def test_square_folds_to_flat_tetramonohedron():
    # glue bottom onto top (seam), fold the two side circles at midpoints
    sq = unit_square()
    scheme = GluingScheme([
        ArcPair(Arc(0, 0.0, 1.0), Arc(0, 2.0, 3.0)),  # bottom <-> top
        fold_arc(0, 1.5, 0.5),                        # right side
        fold_arc(0, 3.5, 0.5),                        # left side
    ])
    rep = check_alexandrov(sq, scheme)
    assert rep.passed
    assert len(rep.vertex_cocurvatures) == 4
    for a in rep.vertex_cocurvatures:
        assert a == pytest.approx(math.pi, abs=1e-9)
    assert classify_pi(rep.surface) == (4, 4)


def test_square_three_sides_fails_condition1():
    sq = unit_square()
    scheme = GluingScheme([
        ArcPair(Arc(0, 0.0, 1.0), Arc(0, 2.0, 3.0)),
        fold_arc(0, 1.5, 0.5),
    ])
    rep = check_alexandrov(sq, scheme, build=False)
    assert not rep.condition1.passed
    assert not rep.passed


def test_angle_overflow_fails_condition2():
    # L-shaped hexagon: gluing its reflex corner onto a straight boundary
    # point piles up 3*pi/2 + pi > 2*pi
    ell = PlanarPolygon([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
    scheme = GluingScheme([
        fold_arc(0, 3.75, 0.25),                  # maps the reflex corner (s=4)
        ArcPair(Arc(0, 4.0, 7.75), Arc(0, 7.75, 11.5)),
    ])
    rep = check_alexandrov(ell, scheme, build=False)
    assert rep.condition1.passed
    assert not rep.condition2.passed


def test_malformed_scheme_raises():
    sq = unit_square()
    with pytest.raises(SchemeError):
        check_alexandrov(sq, GluingScheme([
            ArcPair(Arc(0, 0.0, 1.0), Arc(0, 2.0, 2.5)),
        ]))


def test_is_tetramonohedron_regular():
    p = is_tetramonohedron(regular_tetrahedron(1.0))
    assert p is not None
    for side in (p.p, p.q, p.r):
        assert side == pytest.approx(1.0, abs=1e-9)
    assert p.a == pytest.approx(1.0, abs=1e-9)
    assert p.b == pytest.approx(math.sqrt(3) / 2, abs=1e-9)


def test_is_tetramonohedron_rectangle_degenerate():
    r = doubly_covered_polygon(PlanarPolygon([(0, 0), (2, 0), (2, 1), (0, 1)]))
    p = is_tetramonohedron(r)
    assert p is not None and p.degenerate
    assert (p.p, p.q) == pytest.approx((1.0, 2.0), abs=1e-9)
    assert p.r == pytest.approx(math.sqrt(5), abs=1e-9)


def test_is_tetramonohedron_cube_empty():
    assert is_tetramonohedron(cube_surface(1.0)) is None


def test_params_from_sides_rejects_right_and_obtuse():
    from refold.alexandrov import TetramonohedronParams
    with pytest.raises(InvalidTriangle):
        TetramonohedronParams.from_sides(3, 4, 5)
    with pytest.raises(InvalidTriangle):
        TetramonohedronParams.from_sides(1, 1, 1.8)
    p = TetramonohedronParams.from_sides(3, 4, 5, allow_right=True)
    assert p.degenerate


def cube_spine_polygon():
    from refold.constructions import RegularPrismatoid, unfold_prismatoid
    spine, cu = unfold_prismatoid(RegularPrismatoid(4, 1.0, 1.0, 0.0))
    return spine, cu


def test_validate_spine_cube():
    spine, cu = cube_spine_polygon()
    assert spine.n == 4
    assert cu.polygon.area() == pytest.approx(6.0, abs=1e-9)
    # base is the 4 x 1 lateral rectangle
    p0, pn, pn1, p2n1 = spine.base
    from refold.geom import v_dist
    assert v_dist(p0, pn) == pytest.approx(4.0, abs=1e-9)
    assert v_dist(pn, pn1) == pytest.approx(1.0, abs=1e-9)
    # spikes are right isosceles triangles with legs sqrt(2)/2
    assert spine.spike_leg_bottom == pytest.approx(math.sqrt(2) / 2, abs=1e-9)


def test_validate_spine_rejects_perturbed_apex():
    spine, cu = cube_spine_polygon()
    pts = list(cu.polygon.vertices)
    # nudge one spike apex (vertex index 1 = first bottom apex)
    pts[1] = (pts[1][0] + 1e-3, pts[1][1])
    bad = PlanarPolygon(pts).with_markers(cu.polygon.markers)
    with pytest.raises(NotSpinePolygon):
        validate_spine(bad)


def test_fold_spine_cube_area_and_class():
    spine, cu = cube_spine_polygon()
    surf, scheme, rep = fold_spine(spine)
    assert rep.passed
    assert surf.total_area() == pytest.approx(6.0, rel=1e-9)
    assert classify_pi(surf) == (4, 4)
    for v in surf.real_vertices():
        assert surf.cocurvature(v) == pytest.approx(math.pi, abs=1e-9)


def test_fold_spine_icosahedron_area():
    from refold.constructions import regular_solid_prismatoid, unfold_prismatoid
    spine, cu = unfold_prismatoid(regular_solid_prismatoid("icosa", 1.0))
    assert spine.n == 5
    surf, scheme, rep = fold_spine(spine)
    assert surf.total_area() == pytest.approx(5 * math.sqrt(3), rel=1e-9)
    assert classify_pi(surf) == (4, 4)


def test_glue_boundary_raises_on_uncovered():
    from refold.errors import TopologyError
    sq = unit_square()
    with pytest.raises(TopologyError):
        glue_boundary(sq, GluingScheme([fold_arc(0, 0.5, 0.5)]))
