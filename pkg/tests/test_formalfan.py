import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instability.cones import (
    ConeMorphism,
    Fan,
    complete_fan_1d,
    cone,
    morphism_check,
    standard_cone,
    whole_space,
)
from instability.errors import NotSurjective, ZeroVector
from instability.formalfan import (
    DegenerationModel,
    FormalFan,
    admissible_cone,
    certify_classical,
    fan_cones,
    fans_equal,
    proj_points_equal,
    realization_contains,
    restrict,
    standard_fan,
    toric_degeneration_fan,
)


def test_fan_cones_examples():
    F = standard_fan(2)
    assert fan_cones(F, 2, [[1, 0], [0, 1]])
    assert not fan_cones(F, 2, [[1, 0], [0, -1]])
    G = FormalFan(2, [cone((1, 0), (0, 1)), cone((-1, 0), (0, -1))])
    assert not fan_cones(G, 2, [[1, -1], [1, -1]])


def test_realization_examples():
    F = standard_fan(2)
    assert realization_contains(F, (1, 2))
    assert not realization_contains(F, (-1, 0))
    P1 = toric_degeneration_fan(complete_fan_1d(), [[1]])
    assert realization_contains(P1, (-5,))


def test_restrict_examples():
    F = standard_fan(2)
    assert fans_equal(restrict(F, [[2, 0], [0, 3]]), standard_fan(2))
    G = FormalFan(2, [cone((1, 0), (1, 2))])
    R = restrict(G, [[1], [1]])
    assert fans_equal(R, standard_fan(1))
    E = restrict(FormalFan(2, [cone((1, 0))]), [[0], [1]])
    assert E.is_empty()


def test_toric_degeneration_examples():
    A2 = Fan(2, [standard_cone(2)])
    D = toric_degeneration_fan(A2, [[1, 0], [0, 1]])
    assert fans_equal(D, standard_fan(2)) and D.classical_fan_certified
    half = toric_degeneration_fan(Fan(1, [cone((1,))]), [[1, 1]])
    assert len(half.pieces) == 1
    K = half.pieces[0]
    assert K.contains((3, -2)) and not K.contains((-3, 2)) and K.contains((1, -1))
    P1 = toric_degeneration_fan(complete_fan_1d(), [[1]])
    assert sorted(P1.rays()) == [(-1,), (1,)]
    with pytest.raises(NotSurjective):
        toric_degeneration_fan(A2, [[1, 1], [2, 2]])


def test_admissible_cone_examples():
    assert admissible_cone(DegenerationModel([[1], [-1]]), {1, 2}).is_zero()
    D = DegenerationModel([[1, 0], [0, 1], [2, 3]])
    assert admissible_cone(D, set()).equals(whole_space(2))
    assert admissible_cone(DegenerationModel([[1], [1]]), {1, 2}).equals(cone((1,)))


def test_proj_points_examples():
    assert proj_points_equal((2, 4), (1, 2))
    assert not proj_points_equal((1, 2), (-1, -2))
    assert not proj_points_equal((1, 0), (1, 1))
    with pytest.raises(ZeroVector):
        proj_points_equal((0, 0), (1, 0))


def test_model_supports():
    D = DegenerationModel.punctured([[-1], [0], [1]])
    sup = D.supports()
    assert frozenset() not in sup and len(sup) == 7
    assert D.limit_support({1, 2}, (-1,)) == frozenset({2})


# -- properties -----------------------------------------------------------

entry = st.integers(-3, 3)


def matrix(rows, cols):
    return st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3), st.data())
def test_preimage_fans_are_classical(n, data):
    N = data.draw(st.integers(n, 3))
    pi = data.draw(matrix(n, N))
    from instability import _linalg as la

    if la.rank(pi) != n:
        return
    sigma = Fan(n, [standard_cone(n)])
    D = toric_degeneration_fan(sigma, pi)
    assert D.classical_fan_certified
    assert certify_classical(D)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_restrict_functorial(data):
    F = FormalFan(3, [cone((1, 0, 0), (1, 1, 0), (0, 1, 1)), cone((0, 0, 1), (1, 0, 1))])
    nonneg = st.integers(0, 2)
    phi = data.draw(st.lists(st.lists(nonneg, min_size=2, max_size=2), min_size=3, max_size=3))
    psi = data.draw(st.lists(st.lists(nonneg, min_size=2, max_size=2), min_size=2, max_size=2))
    if not (morphism_check(phi, 2, 3) and morphism_check(psi, 2, 2)):
        return
    comp = ConeMorphism(phi).compose(ConeMorphism(psi))
    lhs = restrict(restrict(F, phi), psi)
    rhs = restrict(F, comp.matrix)
    probes = [(a, b) for a in range(0, 4) for b in range(0, 4)]
    assert fans_equal(lhs, rhs, probes)


@settings(max_examples=60)
@given(st.integers(1, 3), st.data())
def test_standard_fan_accepts_exactly_morphisms(n, data):
    k = data.draw(st.integers(1, n))
    M = data.draw(st.lists(st.lists(st.integers(-1, 2), min_size=k, max_size=k),
                           min_size=n, max_size=n))
    assert fan_cones(standard_fan(n), k, M) == morphism_check(M, k, n)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 2), st.data())
def test_admissible_cone_is_convex(n, k, data):
    A = data.draw(matrix(n, k))
    S = data.draw(st.sets(st.integers(1, n)))
    D = DegenerationModel(A)
    K = admissible_cone(D, S)
    gens = K.generators
    # closed under sums of generators
    for g in gens:
        for h in gens:
            assert K.contains([a + b for a, b in zip(g, h)])
    for g in gens:
        for i in S:
            assert sum(a * b for a, b in zip(A[i - 1], g)) >= 0
