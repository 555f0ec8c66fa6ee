"""Planar kernel: areas, simplicity, triangle classification."""

import math
import random

import pytest

from refold.errors import DegenerateInput, InvalidTriangle
from refold.geom import (PlanarPolygon, Rigid2, is_simple, polygon_area,
                         segments_intersect, triangle_classify)


def brute_force_simple(poly):
    """Independent oracle: all-pairs segment intersection."""
    v = list(poly.vertices)
    n = len(v)
    edges = [(v[i], v[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a, b = edges[i]
            c, d = edges[j]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent: allowed to share exactly one endpoint
                shared = 1
                pts = {tuple(a), tuple(b), tuple(c), tuple(d)}
                if len(pts) != 3:
                    return False
                # the nonshared endpoints must not sit on the other edge
                continue
            if segments_intersect(a, b, c, d):
                return False
    return True


def test_area_unit_square():
    assert polygon_area(PlanarPolygon([(0, 0), (1, 0), (1, 1), (0, 1)])) == 1.0


def test_area_half_box_triangle():
    assert polygon_area(PlanarPolygon([(0, 0), (2, 0), (0, 1)])) == pytest.approx(1.0, rel=1e-12)


def test_area_rigid_motion_invariant():
    rng = random.Random(42)
    pts = [(0, 0), (3, 0), (4, 2), (1.5, 3.5), (-0.5, 2)]
    base = polygon_area(PlanarPolygon(pts))
    for _ in range(50):
        th = rng.uniform(0, 2 * math.pi)
        dx, dy = rng.uniform(-10, 10), rng.uniform(-10, 10)
        M = Rigid2(math.cos(th), math.sin(th), dx, dy)
        moved = PlanarPolygon([M.apply(p) for p in pts])
        assert polygon_area(moved) == pytest.approx(base, rel=1e-9)


def test_area_clockwise_reoriented():
    p = PlanarPolygon([(0, 0), (0, 1), (1, 1), (1, 0)])
    assert p.reoriented
    assert p.area() > 0


def test_degenerate_polygon_rejected():
    with pytest.raises(DegenerateInput):
        PlanarPolygon([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(DegenerateInput):
        PlanarPolygon([(0, 0), (0, 0), (1, 1)])


def test_simple_convex_quad():
    assert is_simple(PlanarPolygon([(0, 0), (2, 0), (2, 1), (0, 1)]))


def test_bowtie_not_simple():
    # classic self-crossing; constructor reorients but crossing remains
    poly = PlanarPolygon.__new__(PlanarPolygon)
    poly.vertices = ((0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0))
    poly.markers = {}
    poly.reoriented = False
    poly._cumlen = None
    assert not is_simple(poly)


def test_simple_matches_bruteforce_oracle():
    rng = random.Random(2024)
    checked = 0
    for _ in range(400):
        n = rng.randint(3, 12)
        pts = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(n)]
        try:
            poly = PlanarPolygon(pts)
        except DegenerateInput:
            continue
        checked += 1
        assert is_simple(poly) == brute_force_simple(poly)
    assert checked > 300


def test_triangle_classify_basic():
    assert triangle_classify((1, 1, 1)) == "acute"
    assert triangle_classify((3, 4, 5)) == "right"
    assert triangle_classify((2, 2, 3.5)) == "obtuse"
    with pytest.raises(InvalidTriangle):
        triangle_classify((1, 1, 2.1))


def test_triangle_classify_order_symmetric():
    rng = random.Random(5)
    for _ in range(100):
        sides = sorted(rng.uniform(0.5, 2.0) for _ in range(3))
        if sides[0] + sides[1] <= sides[2] * (1 + 1e-9):
            continue
        base = triangle_classify(sides)
        for perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
            assert triangle_classify([sides[i] for i in perm]) == base
