"""Exact polytope machinery: hulls, facet/vertex enumeration, faces, images."""

import math
import random
from fractions import Fraction

import pytest

from monoproj import linalg
from monoproj import polytope as pt
from monoproj.errors import UnboundedError


def _cube(d):
    import itertools
    return pt.VPolytope.from_vertices(
        d, list(itertools.product((0, 1), repeat=d)))


def test_hull_removes_interior_and_dedupes():
    v = pt.hull_vertices([[0, 0], [2, 0], [0, 2], [1, 1], [0, 0],
                          [Fraction(1, 2), Fraction(1, 2)]])
    assert v.vertices == ((Fraction(0), Fraction(0)),
                          (Fraction(0), Fraction(2)),
                          (Fraction(2), Fraction(0)))


def test_hull_collinear_points():
    v = pt.hull_vertices([[k, 2 * k] for k in range(6)])
    assert v.vertices == ((0, 0), (5, 10))


def test_hull_certificates_random():
    """Every dropped point must be a convex combination of the kept ones and
    every kept point must not be; checked with the exact LP directly."""
    rng = random.Random(5150)
    pts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                 for _ in range(3)) for _ in range(30)]
    hull = pt.hull_vertices(pts)
    kept = set(hull.vertices)
    for p in set(pts):
        others = [q for q in set(pts) if q != p]
        inside = linalg.in_convex_hull(p, others)
        assert (p not in kept) == inside


def test_hull_empty_and_singleton():
    assert pt.hull_vertices([], 4).is_empty
    v = pt.hull_vertices([[1, 2]])
    assert v.vertices == ((1, 2),)
    assert v.dim() == 0
    with pytest.raises(ValueError):
        pt.hull_vertices([], None)


def test_facets_of_the_cube():
    h = pt.facet_enumeration(_cube(3))
    assert h.c == 6
    assert not h.eqs
    for v in _cube(3).vertices:
        assert h.contains(v)
    assert not h.contains([2, 0, 0])
    assert h.contains([Fraction(1, 2)] * 3)


def test_facets_of_the_simplex():
    for d in (2, 3, 4):
        verts = [[0] * d] + [[int(i == j) for j in range(d)] for i in range(d)]
        h = pt.facet_enumeration(pt.VPolytope.from_vertices(d, verts))
        assert h.c == d + 1
        assert not h.eqs


def test_facets_lower_dimensional():
    # a segment embedded in the plane: one equality, two facet inequalities
    seg = pt.VPolytope.from_vertices(2, [[0, 0], [1, 1]])
    h = pt.facet_enumeration(seg)
    assert len(h.eqs) == 1
    assert h.c == 2
    assert h.contains([Fraction(1, 2), Fraction(1, 2)])
    assert not h.contains([Fraction(1, 2), 0])


def test_every_facet_is_tight_and_proper():
    for p in (_cube(3), pt.gen_cycle_cover_polytope(3), pt.gen_pm_polytope(2)):
        h = pt.facet_enumeration(p)
        for a, b in h.ineqs:
            slacks = [Fraction(b) - linalg.dot(a, v) for v in p.vertices]
            assert all(s >= 0 for s in slacks)
            assert any(s == 0 for s in slacks)   # supporting
            assert any(s > 0 for s in slacks)    # not an equality
        for a, b in h.eqs:
            assert all(linalg.dot(a, v) == b for v in p.vertices)


def test_round_trip_v_to_h_to_v():
    rng = random.Random(929)
    cases = [_cube(2), _cube(3), pt.gen_cycle_cover_polytope(3),
             pt.gen_pm_polytope(2), pt.gen_cut_polytope(3, 2)]
    for _ in range(8):
        pts = [[Fraction(rng.randint(-3, 3)) for _ in range(3)]
               for _ in range(rng.randint(4, 12))]
        cases.append(pt.hull_vertices(pts))
    for p in cases:
        h = pt.facet_enumeration(p)
        assert pt.vertex_enumeration(h) == p


def test_vertex_enumeration_unbounded_and_empty():
    # half-plane x >= 0 in R^2 is unbounded
    with pytest.raises(UnboundedError):
        pt.vertex_enumeration(pt.HPolytope(2, (((-1, 0), 0),), ()))
    # x <= -1 and -x <= -1 is empty
    empty = pt.vertex_enumeration(pt.HPolytope(1, (((1,), -1), ((-1,), -1)), ()))
    assert empty.is_empty
    # inconsistent equalities
    empty = pt.HPolytope(1, (), (((1,), 0), ((1,), 1)))
    assert pt.vertex_enumeration(empty).is_empty


def test_vertex_enumeration_with_equalities():
    # the triangle {x >= 0, sum x = 1} in R^3
    h = pt.HPolytope(3, tuple(((tuple(-int(i == j) for j in range(3))), 0)
                              for i in range(3)),
                     (((1, 1, 1), 1),))
    v = pt.vertex_enumeration(h)
    assert len(v.vertices) == 3
    assert v.dim() == 2


def test_dim_integral_scale():
    p = pt.gen_cycle_cover_polytope(3)
    assert p.dim() == 4
    assert p.is_integral()
    q = pt.scale(p, 2)
    assert q.vertices == tuple(sorted(tuple(2 * x for x in v)
                                      for v in p.vertices))
    assert pt.scale(p, Fraction(1, 2)).is_integral() is False


def test_coordinate_face_birkhoff():
    p = pt.gen_cycle_cover_polytope(3)
    face = pt.coordinate_face(p, [0])  # x_1_1 = 0
    assert len(face.vertices) == 4
    assert all(v[0] == 0 for v in face.vertices)
    assert pt.coordinate_face(p, []) == p
    assert pt.coordinate_face(p, range(9)).is_empty


def test_coordinate_face_requires_nonneg_orthant():
    p = pt.VPolytope.from_vertices(1, [[-1], [1]])
    with pytest.raises(ValueError):
        pt.coordinate_face(p, [0])


def test_face_is_exposed():
    """Each nonempty coordinate face is exposed: the sum of the zeroed
    coordinates vanishes on the face and is positive on all other vertices."""
    p = pt.gen_cycle_cover_polytope(3)
    for coords in ([0], [1, 5], [0, 4, 8]):
        face = pt.coordinate_face(p, coords)
        for v in p.vertices:
            val = sum(v[c] for c in coords)
            assert (val == 0) == (v in face.vertices)


def test_image_and_extension():
    p = _cube(2)
    proj = pt.AffineMapT.of([[1, 0]])
    img = pt.image(proj, p)
    assert img.vertices == ((0,), (1,))
    assert pt.is_extension(p, proj, img)
    ident = pt.AffineMapT.of([[1, 0], [0, 1]])
    assert pt.is_extension(p, ident, p)
    shift = pt.AffineMapT.of([[1, 0], [0, 1]], [1, 1])
    assert pt.image(shift, p).vertices == tuple(
        tuple(x + 1 for x in v) for v in p.vertices)


def test_image_dimension_checks():
    with pytest.raises(ValueError):
        pt.image(pt.AffineMapT.of([[1, 0]]), _cube(3))
    assert pt.image(pt.AffineMapT.of([[1, 0]]),
                    pt.VPolytope(2, ())).is_empty


def test_named_polytope_vertex_counts():
    for m in range(1, 5):
        assert len(pt.gen_cycle_cover_polytope(m).vertices) == math.factorial(m)
    for n in range(2, 6):
        assert len(pt.gen_tsp_polytope(n).vertices) == math.factorial(n - 1)
    for n, expect in ((1, 1), (2, 3), (3, 15)):
        assert len(pt.gen_pm_polytope(n).vertices) == expect
    for n in range(1, 5):
        assert len(pt.gen_cut_polytope(n, 2).vertices) == 2 ** n - 1


def test_birkhoff_h_representation():
    h = pt.facet_enumeration(pt.gen_cycle_cover_polytope(3))
    assert h.c == 9
    assert len(h.eqs) == 5
    # doubly stochastic interior point
    assert h.contains([Fraction(1, 3)] * 9)


def test_json_round_trips():
    p = pt.gen_pm_polytope(2)
    assert pt.VPolytope.from_jsonable(p.to_jsonable()) == p
    h = pt.facet_enumeration(p)
    assert pt.HPolytope.from_jsonable(h.to_jsonable()) == h
    m = pt.AffineMapT.of([[1, Fraction(1, 2)]], [3])
    assert pt.AffineMapT.from_jsonable(m.to_jsonable()) == m


def test_hpolytope_data_is_primitive_integer():
    for p in (_cube(3), pt.gen_cycle_cover_polytope(3)):
        h = pt.facet_enumeration(p)
        for a, b in list(h.ineqs) + list(h.eqs):
            assert all(isinstance(x, int) for x in a)
            assert isinstance(b, int)
            g = 0
            for x in list(a) + [b]:
                g = math.gcd(g, abs(x))
            assert g == 1
