"""Rational polyhedral cones, fans, Hilbert bases, refinement."""


import pytest
from hypothesis import given, settings, strategies as st

from drinfan.cones import Cone, Fan, dual_monoid_hilbert_basis


def test_vh_roundtrip_simple():
    c = Cone.from_rays([(1, 1), (1, 2)])
    assert set(c.rays()) == {(1, 1), (1, 2)}
    # H-rep cuts out the same set
    c2 = Cone.from_ineqs(c.ineqs(), n=2)
    assert c2 == c


@st.composite
def random_rays(draw):
    n = draw(st.integers(2, 3))
    k = draw(st.integers(1, 4))
    rays = [tuple(draw(st.integers(-3, 3)) for _ in range(n))
            for _ in range(k)]
    rays = [r for r in rays if any(r)]
    if not rays:
        rays = [(1,) * n]
    return n, rays


@given(random_rays())
@settings(max_examples=80, deadline=None)
def test_double_description_roundtrip(data):
    n, rays = data
    c = Cone.from_rays(rays, n=n)
    # every generator satisfies the H-rep
    for r in rays:
        assert c.contains(r)
    # rebuild from H-rep
    c2 = Cone.from_ineqs(c.ineqs(), n=n, eqs=c.eqs())
    assert c2 == c
    # relative interior point is inside
    if not c.is_trivial():
        assert c.contains(c.relative_interior_point())


def test_faces_of_quadrant():
    c = Cone.from_ineqs([[1, 0], [0, 1]], n=2)
    faces = c.faces()
    assert len(faces) == 4  # itself, two rays, origin
    dims = sorted(f.dim() for f in faces)
    assert dims == [0, 1, 1, 2]
    for f in faces:
        assert f.is_face_of(c)


def test_face_closure_in_fan():
    fan = Fan([Cone.from_rays([(1, 0), (1, 1)]),
               Cone.from_rays([(1, 1), (0, 1)])])
    assert len(fan.maximal_cones()) == 2
    support = Cone.from_rays([(1, 0), (0, 1)])
    assert fan.validate(support) == []


def test_fan_validation_detects_overlap():
    fan = Fan([Cone.from_rays([(1, 0), (1, 2)]),
               Cone.from_rays([(1, 1), (0, 1)])])  # overlapping cones
    problems = fan.validate()
    assert problems


def test_smoothness_and_refinement():
    c = Cone.from_rays([(1, 0), (1, 4)])
    assert not c.is_regular()
    refined = Fan([c]).regular_refinement()
    assert refined.is_regular()
    assert refined.is_subdivision_of(Fan([c]), c)


def test_refinement_non_simplicial():
    c = Cone.from_rays([(1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1)])
    refined = Fan([c]).regular_refinement()
    assert refined.is_regular()
    assert refined.is_subdivision_of(Fan([c]), c)


def test_join_of_fans():
    a = Fan([Cone.from_rays([(1, 0), (1, 1)]),
             Cone.from_rays([(1, 1), (0, 1)])])
    b = Fan([Cone.from_rays([(1, 0), (1, 2)]),
             Cone.from_rays([(1, 2), (0, 1)])])
    j = a.join(b)
    support = Cone.from_rays([(1, 0), (0, 1)])
    assert j.validate(support) == []
    assert j.is_subdivision_of(a, support)
    assert j.is_subdivision_of(b, support)


def test_hilbert_basis_quadrant_like():
    # dual of cone{(1,1),(1,2)} in Z^2
    c = Cone.from_rays([(1, 1), (1, 2)])
    data = dual_monoid_hilbert_basis(c)
    gens = set(data["generators"])
    assert gens == {(-1, 1), (2, -1)} or gens == {(2, -1), (-1, 1)}
    # every generator pairs nonnegatively with the cone
    for g in gens:
        for r in c.rays():
            assert sum(a * b for a, b in zip(g, r)) >= 0


def test_hilbert_basis_singular_cone():
    # dual monoid of cone{(1,0),(1,4)}: needs interior generators
    c = Cone.from_rays([(1, 0), (1, 4)])
    data = dual_monoid_hilbert_basis(c)
    gens = set(data["all"])
    # minimality: no generator is a sum of two generators
    import itertools
    for a, b in itertools.combinations_with_replacement(gens, 2):
        s = tuple(x + y for x, y in zip(a, b))
        assert s not in gens
    # extreme generators of the dual plus one interior generator
    assert gens == {(0, 1), (1, 0), (4, -1)}


def test_smooth_index():
    assert Cone.from_rays([(1, 0), (0, 1)]).smooth_index() == 1
    assert Cone.from_rays([(1, 0), (1, 2)]).smooth_index() == 2


def test_stellar_subdivision():
    c = Cone.from_rays([(1, 0), (1, 2)])
    fan = Fan([c]).stellar_subdivide((1, 1))
    assert len(fan.maximal_cones()) == 2
    assert fan.is_subdivision_of(Fan([c]), c)
