"""Rank-degree-weight sequences, their mu, merges and the optimal weights.

A piece with rank r and degree d has charge ``-d + i r``; its slope is
``nu = d / r`` and phase increases with nu.  Pieces of rank 0 are torsion
and sit at phase 1 (slope +infinity).  Slope comparisons are always made
cross-multiplied so torsion needs no special casing.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from ..errors import (
    EndpointMismatch,
    InconsistentTotal,
    NotConvex,
    OutOfRange,
    ZeroRankPair,
)
from ..invariants import MuValue


@dataclass(frozen=True)
class RDW:
    r: Fraction
    d: Fraction
    w: Fraction

    def __post_init__(self):
        for k in ("r", "d", "w"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.r < 0 or (self.r == 0 and self.d < 0):
            raise OutOfRange(f"charge {-self.d} + {self.r}i is outside H u R_<=0")


def as_rdw(seq) -> list:
    return [x if isinstance(x, RDW) else RDW(*x) for x in seq]


def slope_cmp(a, b) -> int:
    """Compare phases of pieces ``(r, d)``: -1, 0, 1 as phi_a <, =, > phi_b."""
    ra, da = a[0], a[1]
    rb, db = b[0], b[1]
    x = da * rb - db * ra
    return (x > 0) - (x < 0)


def totals(seq):
    seq = as_rdw(seq)
    return sum((p.r for p in seq), Fraction(0)), sum((p.d for p in seq), Fraction(0))


def mu_rdw(seq, total=None) -> MuValue:
    """``L = sum w_j (R d_j - D r_j)`` and ``B = sum w_j^2 r_j``."""
    seq = as_rdw(seq)
    R, D = totals(seq)
    if total is not None:
        if (Fraction(total[0]), Fraction(total[1])) != (R, D):
            raise InconsistentTotal(f"pieces sum to {(R, D)}, not {tuple(total)}")
    L = sum((p.w * (R * p.d - D * p.r) for p in seq), Fraction(0))
    B = sum((p.w * p.w * p.r for p in seq), Fraction(0))
    return MuValue(L, B)


def delete_step(seq, k: int):
    """Merge entries k and k+1 (1-based) keeping ``sum w r``.

    Returns ``(merged, dL, dB)`` where ``dL`` is the change of ``sum w_j d_j``
    (the change of L is ``R * dL``) and ``dB`` the change of B.
    """
    seq = as_rdw(seq)
    if not 1 <= k < len(seq):
        raise IndexError("k must satisfy 1 <= k < p")
    a, b = seq[k - 1], seq[k]
    rs = a.r + b.r
    if rs == 0:
        raise ZeroRankPair("cannot average weights over two torsion pieces")
    w = (a.w * a.r + b.w * b.r) / rs
    merged = seq[: k - 1] + [RDW(rs, a.d + b.d, w)] + seq[k + 1:]
    dL = (b.w - a.w) / rs * (a.d * b.r - a.r * b.d)
    dB = -(a.r * b.r) / rs * (a.w - b.w) ** 2
    return merged, dL, dB


def _centered(pieces):
    R = sum(r for r, _ in pieces)
    D = sum(d for _, d in pieces)
    nu = D / R
    return R, nu, [d / r - nu for r, d in pieces]


def optimal_weights(pieces):
    """Weights ``nu_j - nu`` and the exact optimum ``L = R S``, ``B = S``.

    ``S = sum (nu_j - nu)^2 r_j``, so ``mu = R sqrt(S)``.  One piece gives
    weight 0 and mu = 0 (reported as ``L = 0, B = 1``).
    """
    pieces = [(Fraction(r), Fraction(d)) for r, d in pieces]
    if any(r <= 0 for r, _ in pieces):
        raise OutOfRange("optimal weights need positive ranks")
    for a, b in zip(pieces, pieces[1:]):
        if slope_cmp(a, b) >= 0:
            raise NotConvex("slopes must be strictly increasing")
    R, nu, w = _centered(pieces)
    S = sum((x * x * r for x, (r, _) in zip(w, pieces)), Fraction(0))
    if S == 0:
        return w, MuValue(0, 1)
    return w, MuValue(R * S, S)


def pava_blocks(pieces) -> list:
    """Pool adjacent violators: list of ``(r, d, [indices])`` with strictly increasing phase."""
    blocks = []
    for i, (r, d) in enumerate(pieces):
        blocks.append((Fraction(r), Fraction(d), [i]))
        while len(blocks) > 1 and slope_cmp(blocks[-2], blocks[-1]) >= 0:
            b = blocks.pop()
            a = blocks.pop()
            blocks.append((a[0] + b[0], a[1] + b[1], a[2] + b[2]))
    return blocks


def pava_max(pieces):
    """Best increasing weights for pieces in a fixed order.

    Returns ``(weights, MuValue, blocks)``; a trailing torsion block makes
    the supremum +infinity and its weight is reported as ``None``.
    """
    pieces = [(Fraction(r), Fraction(d)) for r, d in pieces]
    blocks = pava_blocks(pieces)
    if blocks and blocks[-1][0] == 0 and blocks[-1][1] > 0 and len(blocks) > 1:
        R = sum(b[0] for b in blocks)
        if R > 0:
            head, _ = optimal_weights([(b[0], b[1]) for b in blocks[:-1]])
            weights = [None] * len(pieces)
            for w, b in zip(head, blocks[:-1]):
                for i in b[2]:
                    weights[i] = w
            return weights, MuValue(1, 0), blocks
    if any(b[0] == 0 for b in blocks):
        # everything is torsion: l vanishes identically
        return [Fraction(0)] * len(pieces), MuValue(0, 1), blocks
    bw, val = optimal_weights([(b[0], b[1]) for b in blocks])
    weights = [None] * len(pieces)
    for w, b in zip(bw, blocks):
        for i in b[2]:
            weights[i] = w
    return weights, val, blocks


# -- polygons ------------------------------------------------------------


@dataclass
class Polygon:
    """Region generated by charges ``-d_j + i r_j`` plus nonnegative real shifts."""

    pieces: list

    def __post_init__(self):
        self.pieces = [(Fraction(r), Fraction(d)) for r, d in self.pieces]
        for r, d in self.pieces:
            if r < 0 or (r == 0 and d < 0):
                raise OutOfRange("charge outside H u R_<=0")

    @property
    def R(self):
        return sum((r for r, _ in self.pieces), Fraction(0))

    @property
    def D(self):
        return sum((d for _, d in self.pieces), Fraction(0))

    def breakpoints(self) -> list:
        """``(x, h(x))`` at every corner of the upper boundary."""
        h0 = sum((d for r, d in self.pieces if r == 0), Fraction(0))
        rest = sorted((p for p in self.pieces if p[0] > 0), key=lambda p: -p[1] / p[0])
        pts = [(Fraction(0), h0)]
        x, y = Fraction(0), h0
        for r, d in rest:
            x, y = x + r, y + d
            if len(pts) >= 2 and _collinear(pts[-2], pts[-1], (x, y)):
                pts[-1] = (x, y)
            else:
                pts.append((x, y))
        return pts

    def h(self, x) -> Fraction:
        x = Fraction(x)
        if x < 0 or x > self.R:
            raise OutOfRange(f"x = {x} outside [0, {self.R}]")
        pts = self.breakpoints()
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return pts[0][1]

    def slopes(self) -> list:
        pts = self.breakpoints()
        return [((y1 - y0) / (x1 - x0), x1 - x0) for (x0, y0), (x1, y1) in zip(pts, pts[1:])]

    def contains(self, z) -> bool:
        """Membership of ``z = (re, im)``: ``0 <= im <= R`` and ``-re <= h(im)``."""
        re, im = Fraction(z[0]), Fraction(z[1])
        if im < 0 or im > self.R:
            return False
        return -re <= self.h(im)

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["x", "h"])
        for x, y in self.breakpoints():
            wr.writerow([str(x), str(y)])
        return buf.getvalue()


def _collinear(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])


def pol(pieces) -> Polygon:
    return Polygon(list(pieces))


def h_function(P: Polygon):
    return P.h


def integral_h_prime_sq(P: Polygon) -> Fraction:
    return sum((s * s * w for s, w in P.slopes()), Fraction(0))


def polygon_leq(P1: Polygon, P2: Polygon) -> bool:
    """``h1 <= h2`` on ``[0, R]``, checked at the breakpoints of both."""
    if (P1.R, P1.D) != (P2.R, P2.D):
        raise EndpointMismatch(f"{(P1.R, P1.D)} != {(P2.R, P2.D)}")
    xs = {x for x, _ in P1.breakpoints()} | {x for x, _ in P2.breakpoints()}
    return all(P1.h(x) <= P2.h(x) for x in xs)


def polygon_equal(P1: Polygon, P2: Polygon) -> bool:
    return polygon_leq(P1, P2) and polygon_leq(P2, P1)
