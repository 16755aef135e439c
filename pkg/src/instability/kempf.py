"""Exact maximization of mu = l / sqrt(b) over cones and fans.

On a simplicial cone with generator matrix V, write x = V lam with lam >= 0,
Q = V^T B V and c = V^T l.  The maximum of ``c.lam / sqrt(lam^T Q lam)`` is
attained in the relative interior of some face T, where ``lam_T`` is
proportional to ``Q_T^-1 c_T`` and the squared value is ``c_T^T Q_T^-1 c_T``.
Enumerating the faces is exhaustive and exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import _linalg as la
from .cones import RationalCone, intersect, pointed_pieces, simplicial_subdivision
from .errors import NotPositiveDefinite, NotSimplicial, OutsideSupport, OutsideU
from .invariants import (
    MuValue,
    NumericalInvariant,
    compare_mu,
    form_positive_on_cone,
)

UNSTABLE = "Unstable"
SEMISTABLE = "SemistableNonPositive"

__all__ = [
    "DestabResult",
    "SEMISTABLE",
    "UNSTABLE",
    "compare_mu",
    "convexity_check",
    "maximize_on_cone",
    "maximize_on_fan",
    "maximize_on_simplicial_cone",
]


@dataclass
class DestabResult:
    status: str
    value: MuValue = None
    argmax_rays: list = field(default_factory=list)
    cone_indices: list = field(default_factory=list)
    unique: bool = False

    @property
    def unstable(self) -> bool:
        return self.status == UNSTABLE

    def summary(self) -> str:
        if not self.unstable:
            return "semistable (mu <= 0 on the fan)"
        rays = ", ".join("(" + ",".join(str(x) for x in r) + ")" for r in self.argmax_rays)
        return f"ray {rays}, mu^2 = {self.value.squared()}"


def _candidates(l, B, V):
    """Positive face candidates ``(subset, ray, value^2)`` on cone(V)."""
    m = len(V)
    c = [la.dot(l, v) for v in V]
    Q = [[la.dot(u, la.matvec(B, v)) for v in V] for u in V]
    out = []
    for k in range(1, m + 1):
        for T in combinations(range(m), k):
            cT = [c[i] for i in T]
            if all(x == 0 for x in cT):
                continue
            lam = la.solve([[Q[i][j] for j in T] for i in T], cT)
            if lam is None or any(x <= 0 for x in lam):
                continue
            val = la.dot(cT, lam)
            if val <= 0:
                continue
            x = [sum(lam[t] * V[i][j] for t, i in enumerate(T)) for j in range(len(V[0]))]
            out.append((T, la.primitive(x), val))
    return out


def _mu_at(l, B, x) -> MuValue:
    return MuValue(la.dot(l, x), la.dot(x, la.matvec(B, x)))


def maximize_on_simplicial_cone(l, B, C: RationalCone):
    """``(ray, MuValue)`` of the unique maximizer, or ``SEMISTABLE``."""
    if not C.is_simplicial():
        raise NotSimplicial("solver needs a simplicial, strictly convex cone")
    if C.is_zero():
        return SEMISTABLE
    l = la.frac_vector(l)
    B = la.frac_matrix(B)
    V = [list(g) for g in C.generators]
    Q = [[la.dot(u, la.matvec(B, v)) for v in V] for u in V]
    if not la.is_positive_definite_matrix(Q):
        raise NotPositiveDefinite("b is not positive definite on the span of the cone")
    cands = _candidates(l, B, V)
    if not cands:
        return SEMISTABLE
    T, ray, val = max(cands, key=lambda t: t[2])
    return ray, _mu_at(l, B, ray)


def maximize_on_cone(l, B, C: RationalCone, accept=None) -> list:
    """All maximizing ``(ray, MuValue)`` over an arbitrary cone; ``[]`` if mu <= 0 on it.

    ``accept`` filters candidate rays before they compete; each candidate is
    the maximizer on the relative interior of one face of a simplicial piece.
    """
    l = la.frac_vector(l)
    B = la.frac_matrix(B)
    best = []
    for P in pointed_pieces(C):
        for S in simplicial_subdivision(P):
            if accept is None:
                res = maximize_on_simplicial_cone(l, B, S)
                if res is not SEMISTABLE:
                    best = _merge(best, [res])
                continue
            V = [list(g) for g in S.generators]
            Q = [[la.dot(u, la.matvec(B, v)) for v in V] for u in V]
            if not la.is_positive_definite_matrix(Q):
                raise NotPositiveDefinite("b is not positive definite on the span of the cone")
            found = [(ray, _mu_at(l, B, ray)) for _, ray, _ in _candidates(l, B, V)]
            best = _merge(best, [(r, v) for r, v in found if accept(r)])
    return best


def _merge(best, new):
    for ray, val in new:
        if not best:
            best = [(ray, val)]
            continue
        c = compare_mu(val, best[0][1])
        if c > 0:
            best = [(ray, val)]
        elif c == 0 and all(ray != r for r, _ in best):
            best.append((ray, val))
    return best


def maximize_on_fan(inv: NumericalInvariant, F, accept=None) -> DestabResult:
    """Maximize over the support of a formal fan, a Fan, or any object with ``pieces``."""
    cells = inv.cells()
    found = []
    pieces = F.pieces if hasattr(F, "pieces") else F.cones
    for a, K in enumerate(pieces):
        for cell, l, B in cells:
            Kc = intersect(K, cell)
            if not Kc.is_zero():
                found.extend((r, v, a) for r, v in maximize_on_cone(l, B, Kc, accept))
    if not found:
        return DestabResult(SEMISTABLE)
    top = max((v for _, v, _ in found), key=lambda v: v.key())
    winners = [(r, a) for r, v, a in found if v == top]
    rays = sorted({r for r, _ in winners})
    idx = sorted({a for _, a in winners})
    return DestabResult(UNSTABLE, top, rays, idx, len(rays) == 1)


# -- convexity along segments -------------------------------------------


def _cell_for(inv: NumericalInvariant, pts):
    for K, l, B in inv.cells():
        if all(K.contains(p) for p in pts):
            return K, l, B
    raise OutsideSupport("segment does not lie in a single cell of the invariant")


def convexity_check(inv: NumericalInvariant, gamma, samples: int = 50, rng=None) -> bool:
    """Sampled test that mu is concave-down and non-constant along a b-geodesic.

    The segment between the two columns of ``gamma`` is parametrized by
    b-arclength; for random triples ``t1 < t2 < t3`` in the region where
    mu >= 0 the value at t2 must dominate the chord.
    """
    rng = rng or random.Random(0)
    M = gamma.matrix if hasattr(gamma, "matrix") else gamma
    v, w = (la.frac_vector(c) for c in zip(*M))
    K, l, B = _cell_for(inv, [v, w])
    seg = RationalCone(len(v), (la.primitive(v), la.primitive(w)))
    if not form_positive_on_cone(B, seg):
        raise OutsideU("b vanishes somewhere on the segment")
    if la.primitive(v) == la.primitive(w):
        return False
    if la.dot(l, v) == 0 and la.dot(l, w) == 0:
        return False
    bv = float(la.dot(v, la.matvec(B, v)))
    bvw = float(la.dot(v, la.matvec(B, w)))
    bw = float(la.dot(w, la.matvec(B, w)))
    lv, lw = float(la.dot(l, v)), float(la.dot(l, w))
    # orthonormal frame e (along v) and u in span(v, w) for the form B
    ev = 1 / math.sqrt(bv)
    proj = bvw / bv
    nu = math.sqrt(max(bw - proj * proj * bv, 0.0))
    if nu == 0:
        return False
    theta_max = math.acos(max(-1.0, min(1.0, bvw / math.sqrt(bv * bw))))

    def f(t):
        th = t * theta_max
        lu = (lw - proj * lv) / nu
        return math.cos(th) * lv * ev + math.sin(th) * lu

    scale = abs(lv) * ev + abs(lw) / math.sqrt(bw) + 1.0
    for _ in range(samples):
        ts = sorted(Fraction(rng.randint(0, 10**6), 10**6) for _ in range(3))
        t1, t2, t3 = ts
        if t1 == t3 or t1 == t2 or t2 == t3:
            continue
        y1, y2, y3 = f(t1), f(t2), f(t3)
        if min(y1, y2, y3) < 0:
            continue
        chord = (float(t3 - t2) * y1 + float(t2 - t1) * y3) / float(t3 - t1)
        if y2 < chord - 1e-12 * scale:
            return False
    return True
