"""Tautological coefficients of a test configuration and its Futaki-type invariant.

Input is weight data of sections in degree n of the central fiber: the
dimension, the sum of weights and the sum of squared weights.  These are
polynomials in n of degrees r, r+1, r+2 and their leading coefficients,
read against factorial-normalized monomials, are the coefficients below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateB, DegreeOverflow
from .invariants import MuValue


@dataclass(frozen=True)
class TautCoeffs:
    r: int
    a0: Fraction
    a1: Fraction
    d0: Fraction
    d1: Fraction
    q0: Fraction
    q1: Fraction

    def __post_init__(self):
        for name in ("a0", "a1", "d0", "d1", "q0", "q1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a0 <= 0:
            raise ValueError("a0 must be positive")

    def astuple(self):
        return (self.a0, self.a1, self.d0, self.d1, self.q0, self.q1)


def _interpolate(xs, ys):
    """Coefficients (constant term first) of the interpolating polynomial."""
    # Newton divided differences, then expand to the monomial basis
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        nxt = [Fraction(0)] * n
        for i, c in enumerate(poly):
            if c:
                if i + 1 < n:
                    nxt[i + 1] += c
                nxt[i] -= c * xs[k]
        nxt[0] += coef[k]
        poly = nxt
    return poly


def _degree(poly) -> int:
    for i in range(len(poly) - 1, -1, -1):
        if poly[i] != 0:
            return i
    return -1


def _coeff(poly, k):
    return poly[k] if 0 <= k < len(poly) else Fraction(0)


def futaki_fit(samples, r: int) -> TautCoeffs:
    """Exact fit from rows ``(n, dim, wsum, wsqsum)``.

    ``dim = a0 n^r/r! + a1 n^(r-1)/(r-1)! + ...``,
    ``wsum = d0 n^(r+1)/(r+1)! + d1 n^r/r! + ...``,
    ``wsqsum = q0 n^(r+2)/(r+2)! + q1 n^(r+1)/(r+1)! + ...``.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    rows = {}
    for row in samples:
        n, dim, ws, wq = (Fraction(x) for x in row)
        if n in rows and rows[n] != (dim, ws, wq):
            raise ValueError(f"conflicting samples at n = {n}")
        rows[n] = (dim, ws, wq)
    if len(rows) < r + 3:
        raise ValueError(f"need at least {r + 3} distinct sample degrees")
    xs = sorted(rows)
    polys = [_interpolate(xs, [rows[x][i] for x in xs]) for i in range(3)]
    for i, p in enumerate(polys):
        if _degree(p) > r + i:
            raise DegreeOverflow(f"series {i} has degree {_degree(p)} > {r + i}")
    f = math.factorial
    dim, ws, wq = polys
    a1 = _coeff(dim, r - 1) * f(r - 1) if r >= 1 else Fraction(0)
    return TautCoeffs(
        r,
        _coeff(dim, r) * f(r),
        a1,
        _coeff(ws, r + 1) * f(r + 1),
        _coeff(ws, r) * f(r),
        _coeff(wq, r + 2) * f(r + 2),
        _coeff(wq, r + 1) * f(r + 1),
    )


def futaki_classes(c: TautCoeffs):
    """``(l, b) = (a1 d0 - a0 d1, a0^2 q0 - a0 d0^2)``."""
    l = c.a1 * c.d0 - c.a0 * c.d1
    b = c.a0 * c.a0 * c.q0 - c.a0 * c.d0 * c.d0
    return l, b


def twist(c: TautCoeffs, m) -> TautCoeffs:
    """Effect of tensoring the polarization by a line with first Chern class m."""
    m = Fraction(m)
    return TautCoeffs(
        c.r,
        c.a0,
        c.a1,
        c.d0 + m * c.a0,
        c.d1 + m * c.a1,
        c.q0 + 2 * m * c.d0 + m * m * c.a0,
        c.q1 + 2 * m * c.d1 + m * m * c.a1,
    )


def normalized_futaki_exact(c: TautCoeffs) -> MuValue:
    """``-d1/sqrt(q0)`` after the twist making ``d0 = 0``.

    A configuration with ``d1 = q0 = 0`` after twisting (a product) gives 0.
    """
    t = twist(c, -c.d0 / c.a0)
    if t.q0 == 0 and t.d1 == 0:
        return MuValue(0, 1)
    if t.q0 <= 0:
        raise DegenerateB(f"twisted q0 = {t.q0} is not positive")
    return MuValue(-t.d1, t.q0)


def normalized_futaki(c: TautCoeffs) -> float:
    return normalized_futaki_exact(c).float_view


def product_samples(r: int, count: int, dim=None):
    """Weight data with all weights zero, dimension ``n + 1`` raised to r by default."""
    dim = dim or (lambda n: math.comb(n + r, r))
    return [(n, dim(n), 0, 0) for n in range(1, count + 1)]


def p1_rotation_samples(count: int = 5):
    """The standard C^* action on P^1: weights 0..n on degree-n sections."""
    out = []
    for n in range(1, count + 1):
        out.append((n, n + 1, Fraction(n * (n + 1), 2), Fraction(n * (n + 1) * (2 * n + 1), 6)))
    return out
