import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instability.building import (
    building_complex,
    building_stats,
    complete_flag_count,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    rref_mod,
    to_dot,
    to_off,
)
from instability.errors import TooLarge

from oracles import count_subspaces_by_vectors, q_binomial

SMALL = [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (4, 2)]


@pytest.mark.parametrize("n,q", SMALL)
def test_subspace_counts(n, q):
    for k in range(n + 1):
        want = q_binomial(n, k, q)
        assert gaussian_binomial(n, k, q) == want
        assert len(enumerate_subspaces(n, q, k)) == want
        assert len(set(enumerate_subspaces(n, q, k))) == want
        if q ** n <= 256:
            assert count_subspaces_by_vectors(n, q, k) == want


@pytest.mark.parametrize("n,q,f,chi", [
    (2, 2, [3], 3),
    (2, 3, [4], 4),
    (2, 5, [6], 6),
    (3, 2, [14, 21], -7),
    (3, 3, [26, 52], -26),
    (4, 2, [65, 315, 315], 65),
])
def test_f_vectors(n, q, f, chi):
    C = building_complex(n, q)
    s = building_stats(C)
    assert s["f_vector"] == f and s["euler_characteristic"] == chi
    assert s["dimension"] == n - 2 and s["pure"]
    assert s["chambers"] == complete_flag_count(n, q) == s["independent_flags"]
    assert s["chambers_match_independent"] and s["color_classes_match_gaussian"]
    # reduced homology is concentrated in the top degree with rank q^binom(n,2)
    assert chi - 1 == (-1) ** (n - 2) * q ** (n * (n - 1) // 2)
    if n >= 3:
        assert s["thickness_q_plus_1"]
    else:
        assert s["thickness_q_plus_1"] is None


def test_rank_one_is_projective_line():
    for q in (2, 3, 5, 7):
        C = building_complex(2, q)
        assert len(C.vertices) == q + 1 and C.f_vector == [q + 1]


def test_bounds():
    with pytest.raises(TooLarge):
        building_complex(17, 2)
    with pytest.raises(TooLarge):
        building_complex(3, 5, max_points=100)
    with pytest.raises(ValueError):
        building_complex(2, 4)
    with pytest.raises(ValueError):
        building_complex(1, 2)


def test_containment():
    line = rref_mod([[1, 1, 0]], 2)
    plane = rref_mod([[1, 0, 0], [0, 1, 0]], 2)
    other = rref_mod([[0, 0, 1], [0, 1, 0]], 2)
    assert contains(line, plane, 2) and not contains(line, other, 2)
    assert not contains(plane, line, 2)


@settings(max_examples=80)
@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.integers(0, 10 ** 6))
def test_canonical_form(q, n, seed):
    rng = random.Random(seed)
    k = rng.randint(0, n)
    U = rng.choice(enumerate_subspaces(n, q, k))
    assert rref_mod(U, q) == U
    # a random spanning set of U reduces to the same echelon form
    rows = []
    for _ in range(k + 2):
        c = [rng.randrange(q) for _ in U]
        rows.append([sum(ci * r[j] for ci, r in zip(c, U)) for j in range(n)])
    rows += [list(r) for r in U]
    rng.shuffle(rows)
    assert rref_mod([[x + q * rng.randint(-2, 2) for x in r] for r in rows], q) == U


def test_exports_deterministic():
    a, b = building_complex(3, 2), building_complex(3, 2)
    assert to_dot(a) == to_dot(b) and to_off(a) == to_off(b)
    off = to_off(a).splitlines()
    assert off[0] == "OFF" and off[1] == "14 21 0"
    assert to_dot(a).count(" -- ") == 21
