"""Piecewise linear and quadratic classes on fans, and the ratio mu = l / sqrt(b).

Values of mu are carried exactly as a pair ``(L, B)`` with ``mu = L / sqrt(B)``;
floats only appear in ``MuValue.float_view`` and in arc lengths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import combinations

from . import _linalg as la
from .cones import (
    Fan,
    RationalCone,
    intersect,
    pointed_pieces,
    simplicial_subdivision,
    whole_space,
)
from .errors import (
    DimensionMismatch,
    IncompatibleClass,
    NonConvexSupport,
    NotPositiveDefinite,
    OutsideSupport,
)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class MuValue:
    """Exact ``L / sqrt(B)``. ``B == 0`` encodes +-infinity by the sign of L."""

    __slots__ = ("L", "B")

    def __init__(self, L, B):
        L, B = Fraction(L), Fraction(B)
        if B < 0:
            raise ValueError("B must be nonnegative")
        self.L = L
        self.B = B

    @property
    def sign(self) -> int:
        return _sign(self.L)

    def is_infinite(self) -> bool:
        return self.B == 0 and self.L != 0

    def is_defined(self) -> bool:
        return self.B != 0 or self.L != 0

    @property
    def float_view(self) -> float:
        if self.B == 0:
            return math.copysign(math.inf, self.L) if self.L else math.nan
        return float(self.L) / math.sqrt(self.B)

    def key(self):
        """Exact sort key: ``(class, sign * mu^2)``; equal keys iff equal values."""
        if not self.is_defined():
            raise ValueError("mu is undefined where l and b both vanish")
        if self.B == 0:
            return (self.sign, Fraction(0))
        return (0, self.sign * self.L * self.L / self.B)

    def squared(self) -> Fraction:
        return self.L * self.L / self.B

    def scaled(self, t) -> MuValue:
        """``t * mu`` for rational t."""
        t = Fraction(t)
        return MuValue(self.L * t, self.B)

    def __eq__(self, other):
        if not isinstance(other, MuValue):
            return NotImplemented
        return compare_mu(self, other) == 0

    def __lt__(self, other):
        if not isinstance(other, MuValue):
            return NotImplemented
        return compare_mu(self, other) < 0

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"MuValue(L={self.L}, B={self.B})"

    def __str__(self):
        if self.B == 0:
            return "+inf" if self.L > 0 else ("-inf" if self.L < 0 else "undefined")
        if self.L == 0:
            return "0"
        sq = self.squared()
        s = "" if self.L > 0 else "-"
        r = _exact_sqrt(sq)
        return f"{s}{r}" if r is not None else f"{s}sqrt({sq})"


def _exact_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def compare_mu(a: MuValue, b: MuValue) -> int:
    """-1, 0 or 1. Sign first, then ``L1^2 B2`` against ``L2^2 B1``."""
    if not (a.is_defined() and b.is_defined()):
        raise ValueError("cannot compare an undefined mu value")
    sa, sb = a.sign, b.sign
    if sa != sb:
        return -1 if sa < sb else 1
    if sa == 0:
        return 0
    lhs = a.L * a.L * b.B
    rhs = b.L * b.L * a.B
    c = _sign(lhs - rhs)
    return c * sa


# -- classes on fans ----------------------------------------------------


def _sym(M):
    M = la.frac_matrix(M)
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("bilinear form must be square")
    if any(M[i][j] != M[j][i] for i in range(n) for j in range(i)):
        raise ValueError("bilinear form must be symmetric")
    return M


def _quad(B, x):
    return la.dot(x, la.matvec(B, x))


class _PiecewiseClass:
    degree = 0

    def __init__(self, fan: Fan, per_cone):
        per_cone = list(per_cone)
        if len(per_cone) != len(fan.cones):
            raise DimensionMismatch("need one datum per cone of the fan")
        self.fan = fan
        self.per_cone = [self._coerce(d) for d in per_cone]

    @property
    def ambient_dim(self) -> int:
        return self.fan.ambient_dim

    def _coerce(self, d):
        raise NotImplementedError

    def _value(self, d, x):
        raise NotImplementedError

    def _agree_on(self, d1, d2, C: RationalCone) -> bool:
        raise NotImplementedError

    def pieces(self):
        return list(zip(self.fan.cones, self.per_cone))

    def __call__(self, x):
        x = la.frac_vector(x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatch("point has the wrong dimension")
        vals = {self._value(d, x) for C, d in self.pieces() if C.contains(x)}
        if not vals:
            raise OutsideSupport(f"{tuple(x)} is not in the fan support")
        if len(vals) > 1:
            raise IncompatibleClass(f"cone data disagree at {tuple(x)}")
        return vals.pop()

    def incompatibilities(self) -> list:
        """Index pairs of cones whose data differ on their common face."""
        bad = []
        cs = self.pieces()
        for (i, (C1, d1)), (j, (C2, d2)) in combinations(enumerate(cs), 2):
            K = intersect(C1, C2)
            if not self._agree_on(d1, d2, K):
                bad.append((i, j))
        return bad

    def is_compatible(self) -> bool:
        return not self.incompatibilities()


class PLClass(_PiecewiseClass):
    """A linear functional on each cone; evaluates to the glued function."""

    degree = 1

    def _coerce(self, d):
        d = la.frac_vector(d)
        if len(d) != self.fan.ambient_dim:
            raise DimensionMismatch("functional has the wrong length")
        return tuple(d)

    def _value(self, d, x):
        return la.dot(d, x)

    def _agree_on(self, d1, d2, C):
        return all(la.dot(d1, g) == la.dot(d2, g) for g in C.generators)

    @classmethod
    def linear(cls, l) -> PLClass:
        n = len(l)
        return cls(Fan(n, [whole_space(n)]), [l])


class PQClass(_PiecewiseClass):
    """A symmetric bilinear form on each cone."""

    degree = 2

    def _coerce(self, d):
        M = _sym(d)
        if len(M) != self.fan.ambient_dim:
            raise DimensionMismatch("form has the wrong size")
        return tuple(tuple(r) for r in M)

    def _value(self, d, x):
        return _quad(d, x)

    def _agree_on(self, d1, d2, C):
        U = C.span_basis
        D = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(d1, d2)]
        return all(la.dot(u, la.matvec(D, v)) == 0 for u in U for v in U)

    def form_on(self, x):
        """The form of some cone containing ``x``."""
        for C, d in self.pieces():
            if C.contains(x):
                return d
        raise OutsideSupport(f"{tuple(x)} is not in the fan support")

    @classmethod
    def quadratic(cls, B) -> PQClass:
        n = len(B)
        return cls(Fan(n, [whole_space(n)]), [B])


def eval_pl(l: PLClass, x) -> Fraction:
    return l(x)


def eval_pq(b: PQClass, x) -> Fraction:
    return b(x)


@dataclass(eq=False)
class NumericalInvariant:
    l: PLClass
    b: PQClass

    def __post_init__(self):
        if self.l.ambient_dim != self.b.ambient_dim:
            raise DimensionMismatch("l and b live on different lattices")

    @classmethod
    def linear(cls, l, B) -> NumericalInvariant:
        """Globally linear l and a single quadratic form on all of R^n."""
        return cls(PLClass.linear(l), PQClass.quadratic(B))

    @property
    def ambient_dim(self) -> int:
        return self.l.ambient_dim

    def cells(self) -> list:
        """Cones on which both l and b are given by single data, with that data."""
        out = []
        for C1, l in self.l.pieces():
            for C2, B in self.b.pieces():
                K = intersect(C1, C2)
                if not K.is_zero():
                    out.append((K, l, B))
        return out


def mu(inv: NumericalInvariant, x) -> MuValue:
    x = la.frac_vector(x)
    if all(v == 0 for v in x):
        raise ValueError("mu is evaluated at nonzero points")
    return MuValue(inv.l(x), inv.b(x))


# -- positivity -----------------------------------------------------------


def strictly_copositive(Q) -> bool:
    """Exact test that ``y^T Q y > 0`` for all nonzero ``y >= 0``.

    Principal submatrices are checked in order of size; once every proper
    one passes, Q itself passes iff ``det Q > 0`` or ``adj Q`` has a negative
    entry.
    """
    Q = la.frac_matrix(Q)
    n = len(Q)
    if any(Q[i][i] <= 0 for i in range(n)):
        return False
    for m in range(2, n + 1):
        for T in combinations(range(n), m):
            sub = [[Q[i][j] for j in T] for i in T]
            if la.det(sub) > 0:
                continue
            if not any(x < 0 for row in la.adjugate(sub) for x in row):
                return False
    return True


def form_positive_on_cone(B, C: RationalCone) -> bool:
    """``x^T B x > 0`` for every nonzero x in C."""
    if C.is_zero():
        return True
    for P in pointed_pieces(C):
        for S in simplicial_subdivision(P):
            V = [list(g) for g in S.generators]
            Q = [[la.dot(u, la.matvec(B, v)) for v in V] for u in V]
            if not strictly_copositive(Q):
                return False
    return True


def is_positive_definite(b: PQClass) -> bool:
    return all(form_positive_on_cone(B, C) for C, B in b.pieces())


# -- convexity of piecewise linear classes ---------------------------------


def _walls(C: RationalCone):
    """(wall generators, inward facet functional) for each facet of a pointed cone."""
    for h in C.inequalities:
        on = [g for g in C.generators if la.dot(h, g) == 0]
        r = la.rank(on) if on else 0
        if r == C.dim - 1:
            yield tuple(on), h


def is_convex_pl(l: PLClass) -> bool:
    """Wall test ``l(x) + l(y) <= l(x + y)`` across every wall of the maximal cones.

    ``x`` and ``y`` sit on the two sides of the wall and ``x + y`` lands on
    the wall itself.
    """
    mx = l.fan.maximal_cones()
    if not mx:
        return True
    d = max(C.dim for C in mx)
    if any(C.dim != d for C in mx):
        raise NonConvexSupport("maximal cones have different dimensions")
    hull = RationalCone(l.ambient_dim, tuple(g for C in mx for g in C.generators))
    if hull.dim != d:
        raise NonConvexSupport("maximal cones do not span a common subspace")
    for C in mx:
        if not C.is_strictly_convex():
            continue
        for W, h in _walls(C):
            Wc = RationalCone(l.ambient_dim, W)
            nbrs = [D for D in mx if D is not C and D.contains_cone(Wc)
                    and not C.contains_cone(D)]
            if not nbrs:
                if not any(all(la.dot(f, g) == 0 for g in W) for f in hull.inequalities):
                    raise NonConvexSupport("an unshared wall is interior to the hull")
                continue
            for D in nbrs:
                if not _wall_ok(l, C, D, Wc, h):
                    return False
    return True


def _wall_ok(l, C, D, W, h) -> bool:
    g1 = [sum(c) for c in zip(*[g for g in C.generators if la.dot(h, g) != 0])]
    g2 = [sum(c) for c in zip(*[g for g in D.generators if la.dot(h, g) != 0])]
    a, b = -la.dot(h, g2), la.dot(h, g1)
    if a <= 0 or b <= 0:
        return True
    w = [Fraction(0)] * l.ambient_dim
    for g in W.generators:
        w = [x + y for x, y in zip(w, g)]
    s = [a * x + b * y for x, y in zip(g1, g2)]
    K = 1
    for _ in range(64):
        x = [K * wi + a * gi for wi, gi in zip(w, g1)]
        y = [K * wi + b * gi for wi, gi in zip(w, g2)]
        z = [2 * K * wi + si for wi, si in zip(w, s)]
        if W.contains(z):
            lx = la.dot(_datum_on(l, C), x)
            ly = la.dot(_datum_on(l, D), y)
            return lx + ly <= l(z)
        K *= 2
    return True


def _datum_on(l: PLClass, C: RationalCone):
    for K, d in l.pieces():
        if K.contains_cone(C):
            return d
    raise OutsideSupport("cone not covered by the class")


# -- spherical metric -----------------------------------------------------


def spherical_length(b: PQClass, gamma) -> float:
    """Arc length of the segment between the two rays of ``gamma`` (N-by-2)."""
    M = gamma.matrix if hasattr(gamma, "matrix") else gamma
    cols = [la.frac_vector(c) for c in zip(*M)]
    if len(cols) != 2:
        raise DimensionMismatch("gamma must have two columns")
    v, w = cols
    bv, bw = b(v), b(w)
    bvw = b([x + y for x, y in zip(v, w)])
    if bv <= 0 or bw <= 0:
        raise NotPositiveDefinite("b is not positive on the boundary rays")
    num = bvw - bv - bw
    if num < 0:
        arg = -math.sqrt(num * num / (4 * bv * bw))
    else:
        arg = math.sqrt(num * num / (4 * bv * bw))
    if num * num >= 4 * bv * bw:
        arg = 1.0 if num > 0 else -1.0
    return math.acos(max(-1.0, min(1.0, arg)))
