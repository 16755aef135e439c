"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` for the summary
lines alone; under pytest they are repeated in the terminal summary.
"""

import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import (  # noqa: E402
    grid_fractions,
    integral_h_sq,
    kempf_grid_max,
    mu_parts,
    weight_grid_best,
)

from instability.building import building_complex, building_stats  # noqa: E402
from instability.errors import NotSurjective  # noqa: E402
from instability.cones import Fan, cone, is_classical_fan, standard_cone  # noqa: E402
from instability.formalfan import (  # noqa: E402
    DegenerationModel,
    fans_equal,
    standard_fan,
    toric_degeneration_fan,
)
from instability.futaki import (  # noqa: E402
    TautCoeffs,
    futaki_classes,
    futaki_fit,
    normalized_futaki_exact,
    p1_rotation_samples,
    product_samples,
    twist,
)
from instability.hn.filtration import brute_force_max, hn_filtration  # noqa: E402
from instability.hn.lattice import is_semistable, validate_lattice  # noqa: E402
from instability.hn.random_models import random_lattice  # noqa: E402
from instability.hn.rdw import (  # noqa: E402
    delete_step,
    integral_h_prime_sq,
    mu_rdw,
    optimal_weights,
    pol,
    polygon_equal,
    polygon_leq,
    slope_cmp,
)
from instability.hn.rees import rees_module  # noqa: E402
from instability.invariants import MuValue, NumericalInvariant  # noqa: E402
from instability.kempf import maximize_on_fan  # noqa: E402
from instability.stratify import build_stratification, check_closedness  # noqa: E402

F = Fraction
RESULTS = {}


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[n] = line
    print(line)
    return ok


# -- 1. Kempf oracle dominance ------------------------------------------------


def _rat(rng, lo=-4, hi=4, den=4):
    return F(rng.randint(lo * den, hi * den), rng.randint(1, den))


def _pd(rng, n):
    M = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
    return [[sum(M[k][i] * M[k][j] for k in range(n)) + (i == j) for j in range(n)]
            for i in range(n)]


def criterion_1(count=50, seed=1):
    rng = random.Random(seed)
    bad = []
    done = 0
    while done < count:
        n = rng.randint(1, 4)
        m = rng.randint(1, min(n + 1, 4))
        gens = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        if any(not any(g) for g in gens):
            continue
        C = cone(*gens)
        if not C.is_strictly_convex():
            continue
        l = [_rat(rng) for _ in range(n)]
        B = _pd(rng, n)
        res = maximize_on_fan(NumericalInvariant.linear(l, B), Fan(n, [C]))
        gL, gB, _ = kempf_grid_max(l, B, C.generators, max_den=12)
        grid = MuValue(gL, gB)
        ok = res.value >= grid if res.unstable else grid.sign <= 0
        if res.unstable:
            r = res.argmax_rays[0]
            Lr = sum(F(a) * b for a, b in zip(l, r))
            Br = sum(r[i] * B[i][j] * r[j] for i in range(n) for j in range(n))
            ok = ok and res.unique and len(res.argmax_rays) == 1 and C.contains(r)
            ok = ok and MuValue(Lr, Br) == res.value
        if not ok:
            bad.append((gens, l, B))
        done += 1
    return report(1, not bad, f"({count} instances, grid denominators <= 12, {len(bad)} failures)")


# -- 2. HN oracle equivalence -------------------------------------------------


def criterion_2(count=200, seed=2):
    rng = random.Random(seed)
    bad = 0
    for _ in range(count):
        L = random_lattice(rng, max_size=12)
        ok = validate_lattice(L)[0] and len(L.elements) <= 12
        g, b = hn_filtration(L), brute_force_max(L)
        ok = ok and g.chain == b.chain and g.value == b.value
        ok = ok and is_semistable(L) == (b.value.sign <= 0)
        bad += not ok
    return report(2, bad == 0, f"({count} random lattices, greedy == brute force, {bad} failures)")


# -- 3. insertion and deletion ------------------------------------------------


def _mu(seq):
    m = mu_rdw(seq)
    # a single piece has L = 0 whatever its weight
    return MuValue(0, 1) if m.B == 0 and m.L == 0 else m


def random_rdw(rng):
    p = rng.randint(2, 5)
    ws = sorted(set(F(rng.randint(-30, 30), rng.randint(1, 6)) for _ in range(p)))
    while len(ws) < 2:
        ws.append(ws[-1] + 1)
    return [(rng.randint(1, 5), rng.randint(-5, 5), w) for w in ws]


def insertion_deletion_check(seq, k):
    """Returns (bullet1_ok or None, bullet2_ok or None)."""
    a, b = seq[k - 1], seq[k]
    merged, dL, dB = delete_step(seq, k)
    m, m2 = _mu(seq), _mu(merged)
    R = sum(r for r, _, _ in seq)
    L1, B1 = mu_parts([x[:2] for x in seq], [x[2] for x in seq])
    L2, B2 = mu_parts([(x.r, x.d) for x in merged], [x.w for x in merged])
    assert L2 - L1 == R * dL and B2 - B1 == dB
    c = slope_cmp((a[0], a[1]), (b[0], b[1]))  # sign of phi_k - phi_(k+1)
    b1 = b2 = None
    if m.sign >= 0 and c >= 0:
        eq = m2 == m
        b1 = m2 >= m and eq == (c == 0 and m.sign == 0)
    if m2.sign >= 0 and c < 0:
        b2 = m > m2
    return b1, b2


def criterion_3(count=10 ** 4, seed=3):
    rng = random.Random(seed)
    n1 = n2 = f1 = f2 = 0
    eq_seen = 0
    example = None
    for _ in range(count):
        seq = random_rdw(rng)
        k = rng.randint(1, len(seq) - 1)
        b1, b2 = insertion_deletion_check(seq, k)
        if b1 is not None:
            n1 += 1
            f1 += not b1
        if b2 is not None:
            n2 += 1
            if not b2:
                f2 += 1
                example = example or (seq, k)
        if b1 and _mu(seq).sign == 0 and slope_cmp(seq[k - 1][:2], seq[k][:2]) == 0:
            eq_seen += 1
    ok = f1 == 0 and f2 == 0
    detail = (f"({count} sequences; first guarantee {n1 - f1}/{n1}, "
              f"second guarantee {n2 - f2}/{n2}, equality cases seen {eq_seen})")
    if example:
        detail += f"; second guarantee fails e.g. on {example[0]} k={example[1]}"
    return report(3, ok, detail)


# -- 4. closed-form optimum ---------------------------------------------------


def random_convex_pieces(rng, p):
    while True:
        ps = [(rng.randint(1, 5), rng.randint(-5, 5)) for _ in range(p)]
        ps.sort(key=lambda x: F(x[1], x[0]))
        if all(slope_cmp(a, b) < 0 for a, b in zip(ps, ps[1:])):
            return ps


def criterion_4(count=100, seed=4):
    rng = random.Random(seed)
    grids = {2: grid_fractions(8, -4, 4), 3: grid_fractions(8, -1, 1)}
    bad = 0
    for i in range(count):
        p = 2 if i % 2 == 0 else 3
        ps = random_convex_pieces(rng, p)
        w, m = optimal_weights(ps)
        gL, gB, _ = weight_grid_best(ps, grids[p], increasing=(p == 3))
        ok = m >= MuValue(gL, gB)
        R = sum(r for r, _ in ps)
        nu = F(sum(d for _, d in ps), R)
        S = sum(F(d, r) ** 2 * r for r, d in ps) - nu * nu * R
        ok = ok and m.squared() == R * R * S
        ok = ok and mu_rdw([(r, d, x) for (r, d), x in zip(ps, w)]) == m
        bad += not ok
    return report(4, bad == 0, f"({count} convex piece lists vs denominator-8 weight grids, {bad} failures)")


# -- 5. polygon monotonicity --------------------------------------------------


def nested_pair(rng):
    """A polygon and a coarsening: adjacent hull pieces merged into groups."""
    ps = [(rng.randint(1, 5), rng.randint(-5, 5)) for _ in range(rng.randint(1, 6))]
    ps.sort(key=lambda x: -F(x[1], x[0]))
    groups, cur = [], list(ps[0])
    for r, d in ps[1:]:
        if rng.random() < 0.5:
            cur[0] += r
            cur[1] += d
        else:
            groups.append(tuple(cur))
            cur = [r, d]
    groups.append(tuple(cur))
    return pol(groups), pol(ps), groups, ps


def criterion_5(count=100, seed=5):
    rng = random.Random(seed)
    bad = strict = 0
    for _ in range(count):
        P1, P2, g, ps = nested_pair(rng)
        I1, I2 = integral_h_prime_sq(P1), integral_h_prime_sq(P2)
        ok = polygon_leq(P1, P2) and I1 == integral_h_sq(g) and I2 == integral_h_sq(ps)
        if polygon_equal(P1, P2):
            ok = ok and I1 == I2
        else:
            ok = ok and I1 < I2
            strict += 1
        bad += not ok
    return report(5, bad == 0, f"({count} nested pairs, {strict} strictly nested, {bad} failures)")


# -- 6. stratifications -------------------------------------------------------


def criterion_6():
    D = DegenerationModel([[1], [-1]])
    S = build_stratification(D, NumericalInvariant.linear([1], [[1]]))
    ok = len(S.strata) == 1 and S.strata[0].mu == MuValue(1, 1) and S.strata[0].ray == (1,)
    ok = ok and check_closedness(D, S) == (True, None)
    bad = DegenerationModel.punctured([[-1], [0], [1]])
    T = build_stratification(bad, NumericalInvariant.linear([-1], [[1]]))
    closed, wit = check_closedness(bad, T)
    ok = ok and not closed and wit == (frozenset({1, 2}), frozenset({1}))
    return report(6, ok, "(weights (1,-1): one stratum mu = 1; counterexample witness ({1,2},{1}))")


# -- 7. toric degeneration fans -----------------------------------------------


def criterion_7(seed=7):
    rng = random.Random(seed)
    ok = True
    for n in range(1, 5):
        I = [[int(i == j) for j in range(n)] for i in range(n)]
        D = toric_degeneration_fan(Fan(n, [standard_cone(n)]), I)
        probes = [tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(30)]
        ok = ok and fans_equal(D, standard_fan(n), probes) and D.classical_fan_certified
    p2 = Fan(2, [cone((1, 0), (0, 1)), cone((0, 1), (-1, -1)), cone((-1, -1), (1, 0))])
    trials = 0
    while trials < 20:
        N = rng.randint(2, 4)
        pi = [[rng.randint(-2, 2) for _ in range(N)] for _ in range(2)]
        try:
            D = toric_degeneration_fan(p2, pi)
        except NotSurjective:
            continue
        closure = Fan(N, list(D.pieces)).face_closure()
        ok = ok and D.classical_fan_certified and is_classical_fan(closure)
        trials += 1
    return report(7, ok, "(identity on the orthant fan for n <= 4; 20 random preimages are classical)")


# -- 8. buildings -------------------------------------------------------------


def criterion_8():
    s = building_stats(building_complex(3, 2))
    ok = s["f_vector"] == [14, 21] and s["pure"] and s["dimension"] == 1
    ok = ok and s["chambers"] == 21 and s["chambers_match_independent"]
    for q in (2, 3, 5):
        ok = ok and len(building_complex(2, q).vertices) == q + 1
    return report(8, ok, "(SL3(F2): f-vector 14, 21, pure of dimension 1; SL2(F_q): q+1 vertices)")


# -- 9. Futaki calculus -------------------------------------------------------


def criterion_9(seed=9):
    rng = random.Random(seed)
    ok = True
    for _ in range(100):
        c = TautCoeffs(rng.randint(0, 3), F(rng.randint(1, 20), rng.randint(1, 5)),
                       *[_rat(rng, -10, 10, 7) for _ in range(5)])
        m = _rat(rng, -10, 10, 9)
        ok = ok and futaki_classes(twist(c, m)) == futaki_classes(c)
    c = futaki_fit(p1_rotation_samples(5), 1)
    ok = ok and c.astuple() == (1, 1, 1, F(1, 2), 2, 1) and futaki_classes(c) == (F(1, 2), 1)
    for r in (1, 2, 3):
        pc = futaki_fit(product_samples(r, r + 4), r)
        ok = ok and futaki_classes(pc) == (0, 0) and normalized_futaki_exact(pc).sign == 0
    return report(9, ok, "(100 random twists; P1 coefficients (1,1,1,1/2,2,1), (l, b) = (1/2, 1); products give 0)")


# -- 10. Rees correspondence --------------------------------------------------


def random_filtration(rng):
    n = rng.randint(1, 6)
    p = rng.randint(0, min(3, n - 1))
    while True:
        M = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if any(map(any, M)) and rees_module([M], [0]).dims == [n]:
            break
    dims = sorted(rng.sample(range(1, n), p), reverse=True)
    # leading blocks of a random basis, each padded with a redundant combination
    subs = [M]
    for j in dims:
        coef = [rng.randint(-2, 2) for _ in range(j)]
        extra = [sum(a * M[i][c] for i, a in enumerate(coef)) for c in range(n)]
        subs.append(M[:j] + [extra])
    if rng.random() < 0.5:
        ws = sorted(rng.sample(range(-5, 6), p + 1))
    else:
        ws = sorted(set(F(rng.randint(-20, 20), rng.randint(1, 4)) for _ in range(p + 1)))
    return subs, ws


def criterion_10(count=50, seed=10):
    rng = random.Random(seed)
    done = bad = p2 = 0
    while done < count:
        subs, ws = random_filtration(rng)
        if len(ws) != len(subs):
            continue  # two random weights collided
        rep = rees_module(subs, ws)
        ok = rep.ok and rep.t_injective and rep.colimit_ok and rep.gr_ok
        if len(rep.dims) == 3:
            p2 += 1
            ok = ok and rep.gr_k_ok == {1: True, 2: True}
        bad += not ok
        done += 1
    return report(10, bad == 0, f"({count} random filtrations, {p2} with two steps, {bad} failures)")


# -- pytest entry points ------------------------------------------------------


def test_criterion_1():
    assert criterion_1()


def test_criterion_2():
    assert criterion_2()


@pytest.mark.xfail(strict=True, reason="the second guarantee of insertion/deletion fails on "
                   "some sequences: deleting lowers B as well as L, which can raise mu")
def test_criterion_3():
    assert criterion_3()


def test_criterion_3_first_guarantee_and_counterexample():
    rng = random.Random(33)
    for _ in range(2000):
        seq = random_rdw(rng)
        b1, _ = insertion_deletion_check(seq, rng.randint(1, len(seq) - 1))
        assert b1 is not False
    seq = [(3, -4, F(-28, 3)), (2, -2, -3), (4, 4, F(39, 4))]
    merged, _, _ = delete_step(seq, 1)
    assert _mu(merged).sign >= 0 and not _mu(seq) > _mu(merged)


def test_criterion_4():
    assert criterion_4()


def test_criterion_5():
    assert criterion_5()


def test_criterion_6():
    assert criterion_6()


def test_criterion_7():
    assert criterion_7()


def test_criterion_8():
    assert criterion_8()


def test_criterion_9():
    assert criterion_9()


def test_criterion_10():
    assert criterion_10()


if __name__ == "__main__":
    for fn in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
               criterion_6, criterion_7, criterion_8, criterion_9, criterion_10):
        fn()
