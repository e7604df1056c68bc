import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricaut import lattice as lat
from toricaut.errors import NotStronglyConvex, RankTooLarge
from toricaut.polyhedra import (
    RationalPolyhedron,
    cone_from_generators,
    dual_cone,
    extreme_rays,
    face_lattice,
    integer_feasible,
    lattice_points,
    vertices_and_rays,
)

from _gen import random_monoid


def test_extreme_rays_of_quadrant():
    assert extreme_rays([(1, 0), (0, 1)]) == [(0, 1), (1, 0)]


def test_veronese_cone():
    c = cone_from_generators([(1, 0), (1, 1), (1, 2)])
    assert c.dual_generators == ((1, 0), (1, 2))
    assert c.sigma_rays == ((0, 1), (2, -1))
    assert c.contains((1, 1)) and not c.contains((0, 1))


def test_redundant_generators_are_not_rays():
    c = cone_from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 1, 0)])
    assert sorted(c.dual_generators) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_line_is_rejected():
    with pytest.raises(NotStronglyConvex):
        cone_from_generators([(1, 0), (-1, 0), (0, 1)])


def test_square_cone_face_lattice():
    c = cone_from_generators([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    fl = face_lattice(c)
    assert [f.dim for f in fl.faces] == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
    assert fl.minimal.active == (0, 1, 2, 3) and fl.full.active == ()
    for f in fl.faces:
        assert f.dim + fl.dual_dim(f.id) == 3


def test_face_order_and_meet():
    fl = face_lattice(cone_from_generators([(1, 0), (0, 1)]))
    assert len(fl) == 4
    assert fl.leq(0, 1) and fl.leq(1, 3) and not fl.leq(1, 2)
    assert fl.meet([1, 2]) == 0
    assert fl.meet([3]) == 3


def test_rank_cap():
    c = cone_from_generators([[int(i == j) for j in range(7)] for i in range(7)])
    with pytest.raises(RankTooLarge):
        face_lattice(c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_dual_involution_and_face_dimensions(seed, r):
    import random

    m = random_monoid(random.Random(seed), r)
    c = m.cone
    assert dual_cone(dual_cone(c)) == c
    assert cone_from_generators(c.dual_generators) == c
    fl = face_lattice(c)
    for f in fl.faces:
        assert f.dim + fl.dual_dim(f.id) == r
        # every generator on the face pairs to zero with its normals
        for k in f.spanning:
            assert all(lat.dot(c.dual_generators[k], c.sigma_rays[a]) == 0 for a in f.active)


def _brute(poly, box):
    return [p for p in itertools.product(*(range(lo, hi + 1) for lo, hi in box)) if poly.contains(p)]


ineq = st.tuples(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-6, 6))


@settings(max_examples=200, deadline=None)
@given(st.lists(ineq, min_size=1, max_size=4), st.lists(ineq, max_size=1))
def test_lattice_points_and_feasibility_agree_with_brute_force(ineqs, eqs):
    poly = RationalPolyhedron(2, tuple(eqs), tuple(ineqs))
    box = [(-7, 7), (-7, 7)]
    pts = _brute(poly, box)
    assert lattice_points(poly, box) == pts
    w = integer_feasible(poly)
    if w is not None:
        assert poly.contains(w)
    else:
        assert not pts


def test_feasibility_ignores_rational_points():
    # 2x = 1 has a rational but no integer solution
    assert integer_feasible(RationalPolyhedron(1, (((2,), 1),))) is None
    # 1/3 <= x <= 2/3 after scaling
    assert integer_feasible(RationalPolyhedron(1, (), (((3,), 1), ((-3,), -2)))) is None
    # thin unbounded strip 0 < 2x - 2y < 2 ... has no integer point
    strip = RationalPolyhedron(2, (), (((2, -2), 1), ((-2, 2), -1)))
    assert integer_feasible(strip) is None


def test_vertices_and_rays():
    verts, rays = vertices_and_rays(RationalPolyhedron(2, (), (((1, 0), 0), ((0, 1), 0), ((-1, -1), -2))))
    assert sorted(verts) == [(0, 0), (0, 2), (2, 0)] and rays == []
    verts, rays = vertices_and_rays(RationalPolyhedron(2, (), (((1, 0), 1), ((0, 1), 0))))
    assert verts == [(1, 0)] and rays == [(0, 1), (1, 0)]
