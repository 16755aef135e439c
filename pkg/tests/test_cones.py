from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instability import _linalg as la
from instability.cones import (
    ConeMorphism,
    Fan,
    canonicalize_ray,
    cone,
    cone_contains,
    cone_facets,
    faces,
    intersect,
    is_classical_fan,
    is_face,
    morphism_check,
    pointed_pieces,
    simplicial_subdivision,
    zero_cone,
)
from instability.errors import DimensionMismatch, NotStrictlyConvex, ZeroVector


def same(C, D):
    return C.equals(D)


# -- worked examples ------------------------------------------------------


def test_canonicalize_examples():
    assert canonicalize_ray((2, 4)) == (1, 2)
    assert canonicalize_ray((1, 0)) == (1, 0)
    assert canonicalize_ray((-3, 6, 9)) == (-1, 2, 3)
    with pytest.raises(ZeroVector):
        canonicalize_ray((0, 0))


def test_contains_examples():
    assert cone_contains(cone((1, 0), (0, 1)), (1, 2))
    assert cone_contains(cone((1, 2), (2, 1)), (1, 1))
    assert not cone_contains(cone((1, 2), (2, 1)), (1, -1))
    with pytest.raises(DimensionMismatch):
        cone_contains(cone((1, 0), (0, 1)), (1, 2, 3))


def test_facets_examples():
    assert sorted(cone_facets(cone((1, 0), (1, 2)))) == sorted([(0, 1), (2, -1)])
    assert sorted(cone_facets(cone((1, 0), (0, 1)))) == [(0, 1), (1, 0)]
    ray = cone((1, 1))
    assert len(ray.equations) == 1
    e = ray.equations[0]
    assert la.dot(e, (1, 1)) == 0 and any(e)
    assert all(la.dot(h, (1, 1)) > 0 for h in ray.inequalities)


def test_intersect_examples():
    X = intersect(cone((1, 0), (1, 1)), cone((1, 1), (0, 1)))
    assert same(X, cone((1, 1)))
    C = cone((1, 0), (1, 3))
    assert same(intersect(C, C), C)
    assert intersect(cone((1, 0)), cone((0, 1))).is_zero()


def test_subdivision_examples():
    sq = cone((1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1))
    parts = simplicial_subdivision(sq)
    assert len(parts) == 2
    shared = intersect(parts[0], parts[1])
    assert same(shared, cone((1, 0, 1), (-1, 0, 1)))
    simp = cone((1, 0), (1, 2))
    assert len(simplicial_subdivision(simp)) == 1
    three = simplicial_subdivision(cone((1, 0), (1, 1), (1, 2)))
    assert len(three) == 2
    assert any(same(P, cone((1, 0), (1, 1))) for P in three)
    assert any(same(P, cone((1, 1), (1, 2))) for P in three)
    with pytest.raises(NotStrictlyConvex):
        simplicial_subdivision(cone((1, 0), (-1, 0), (0, 1)))


def test_fan_examples():
    assert is_classical_fan([cone((1, 0), (0, 1)), cone((0, 1), (-1, 0))])
    assert not is_classical_fan([cone((1, 0), (1, 2)), cone((1, 1), (0, 1))])
    assert is_classical_fan([cone((1, 2), (3, 1))])


def test_morphism_examples():
    assert morphism_check([[1, 1], [0, 2]], 2, 2)
    assert not morphism_check([[1, -1], [0, 1]], 2, 2)
    assert not morphism_check([[1, 1], [1, 1]], 2, 2)


def test_zero_cone_and_faces():
    Z = zero_cone(3)
    assert Z.is_zero() and Z.contains((0, 0, 0)) and not Z.contains((1, 0, 0))
    C = cone((1, 0, 0), (0, 1, 0), (0, 0, 1))
    fs = faces(C)
    assert len(fs) == 8
    assert all(is_face(F, C) for F in fs)
    assert not is_face(cone((1, 1, 0), (0, 0, 1)), cone((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_pointed_pieces_cover_halfplane():
    H = cone((1, 0), (-1, 0), (0, 1))
    parts = pointed_pieces(H)
    assert len(parts) == 2 and all(P.is_strictly_convex() for P in parts)
    for x in [(3, 1), (-2, 5), (0, 1), (7, 0)]:
        assert any(P.contains(x) for P in parts)


def test_fan_dedups():
    F = Fan(2, [cone((1, 0), (0, 1)), cone((0, 1), (1, 0))])
    assert len(F.cones) == 1


# -- properties -----------------------------------------------------------

small = st.integers(-4, 4)


def vec(n):
    return st.lists(small, min_size=n, max_size=n).filter(any)


@st.composite
def cones3(draw):
    gens = draw(st.lists(vec(3), min_size=1, max_size=4))
    return cone(*gens)


rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=60, deadline=None)
@given(cones3(), st.lists(rat, min_size=3, max_size=3))
def test_membership_certificates(C, x):
    h = C.separating_functional(x)
    if h is None:
        assert all(la.dot(f, x) >= 0 for f in C.inequalities)
        assert all(la.dot(e, x) == 0 for e in C.equations)
    else:
        assert la.dot(h, x) < 0
        assert all(la.dot(h, g) >= 0 for g in C.generators)


@settings(max_examples=40, deadline=None)
@given(st.lists(vec(3), min_size=2, max_size=5), st.randoms(use_true_random=False))
def test_subdivision_partitions_points(gens, rnd):
    C = cone(*gens)
    if not C.is_strictly_convex():
        return
    parts = simplicial_subdivision(C)
    assert all(P.is_simplicial() for P in parts)
    assert is_classical_fan(parts)
    for g in C.generators:
        assert any(g in P.generators for P in parts)
    for _ in range(40):
        x = [Fraction(rnd.randint(-30, 30), rnd.randint(1, 6)) for _ in range(3)]
        assert C.contains(x) == any(P.contains(x) for P in parts)


@settings(max_examples=40, deadline=None)
@given(cones3(), cones3(), cones3())
def test_intersect_commutative_associative(A, B, C):
    assert same(intersect(A, B), intersect(B, A))
    assert same(intersect(intersect(A, B), C), intersect(A, intersect(B, C)))


@given(vec(4), st.integers(1, 9))
def test_canonicalize_idempotent_and_scale_invariant(v, lam):
    r = canonicalize_ray(v)
    assert canonicalize_ray(r) == r
    assert canonicalize_ray([lam * x for x in v]) == r


mat_entry = st.integers(0, 3)


@settings(max_examples=80)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4), st.data())
def test_morphisms_compose(k, m, n, data):
    M1 = data.draw(st.lists(st.lists(mat_entry, min_size=k, max_size=k), min_size=m, max_size=m))
    M2 = data.draw(st.lists(st.lists(mat_entry, min_size=m, max_size=m), min_size=n, max_size=n))
    if morphism_check(M1, k, m) and morphism_check(M2, m, n):
        comp = ConeMorphism(M2).compose(ConeMorphism(M1))
        assert comp.shape == (n, k)
        assert comp.is_valid()
