"""Rees modules of filtered vector spaces, checked by weight-space dimensions.

Input is a strictly decreasing chain ``E = E_0 > E_1 > ... > E_p > 0`` of
subspaces of Q^n (each given by spanning rows) with weights
``w_0 < ... < w_p``.

Single grading: ``F^w = sum of E_j with w_j >= w``.
Multigrading with one variable per step: in degree ``m`` (entries >= -1)
the module is ``E_J`` where ``J = max{j : m_j = -1}`` (0 if none), and it
vanishes once some entry drops below -1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .. import _linalg as la
from ..errors import NotNested, WeightsNotIncreasing

MAX_P = 4


def _basis(rows, n):
    rows = [la.frac_vector(r) for r in rows]
    if any(len(r) != n for r in rows):
        raise NotNested("subspace rows have the wrong length")
    return la.row_space_basis(rows) if rows else []


def _contained(A, B) -> bool:
    return all(la.contains_vector(B, v) for v in A)


def _dim_sum(*spaces) -> int:
    return la.subspace_sum_dim(*spaces)


def _dim_meet(A, B) -> int:
    return len(A) + len(B) - _dim_sum(A, B)


@dataclass
class ReesReport:
    n: int
    dims: list
    weights: list
    single_table: dict
    gr_single: dict
    t_injective: bool
    kernels: list
    colimit_ok: bool
    gr_ok: bool
    multi_table: dict = field(default_factory=dict)
    multi_t_injective: bool = True
    fiber_products_ok: bool = True
    gr_k: dict = field(default_factory=dict)
    gr_k_ok: dict = field(default_factory=dict)
    pullback_ok: bool = None

    @property
    def ok(self) -> bool:
        checks = [self.t_injective, self.colimit_ok, self.gr_ok,
                  self.multi_t_injective, self.fiber_products_ok, *self.gr_k_ok.values()]
        if self.pullback_ok is not None:
            checks.append(self.pullback_ok)
        return all(checks)


def normalize_filtration(subspaces, weights, n=None):
    """Bases for each step, after checking strict nesting and increasing weights."""
    subspaces = list(subspaces)
    if not subspaces:
        raise NotNested("need at least the whole space")
    n = n or len(subspaces[0][0])
    bases = [_basis(s, n) for s in subspaces]
    for A, B in zip(bases, bases[1:]):
        if not _contained(B, A) or len(B) >= len(A):
            raise NotNested("each subspace must be strictly contained in the previous")
    if bases[-1] == []:
        raise NotNested("the last step must be nonzero; 0 is implicit")
    weights = [Fraction(w) for w in weights]
    if len(weights) != len(bases):
        raise WeightsNotIncreasing("need one weight per subspace")
    if any(a >= b for a, b in zip(weights, weights[1:])):
        raise WeightsNotIncreasing("weights must be strictly increasing")
    return n, bases, weights


def _J(m) -> int:
    J = 0
    for j, x in enumerate(m, start=1):
        if x == -1:
            J = j
    return J


def multi_space(bases, m):
    """Basis of the degree-m piece of the multigraded module."""
    if any(x < -1 for x in m):
        return []
    return bases[_J(m)]


def rees_module(subspaces, weights, multi_degree=None, n=None) -> ReesReport:
    n, bases, weights = normalize_filtration(subspaces, weights, n)
    p = len(bases) - 1
    dims = [len(B) for B in bases]

    def F(w):
        idx = [j for j, wj in enumerate(weights) if wj >= w]
        return bases[idx[0]] if idx else []

    # single grading: weights from below w_0 to above w_p, on integer steps
    lo = int(weights[0].__floor__()) - 2
    hi = int(weights[-1].__ceil__()) + 2
    table = {w: len(F(w)) for w in range(lo, hi + 1)}
    kernels = []
    inj = True
    for w in range(lo, hi):
        A, B = F(w + 1), F(w)
        # t : F^{w+1} -> F^w is the inclusion; its kernel is the column nullspace
        ker = la.nullspace(la.transpose(A), len(A)) if A else []
        kernels.append((w + 1, len(ker)))
        if ker or not _contained(A, B):
            inj = False
    colim = table[lo] == dims[0]
    gr = {w: table[w] - table[w + 1] for w in range(lo, hi)}
    expected = {w: 0 for w in range(lo, hi)}
    for j, wj in enumerate(weights):
        if wj.denominator == 1:
            nxt = dims[j + 1] if j < p else 0
            expected[int(wj)] = dims[j] - nxt
    gr_ok = gr == expected if all(w.denominator == 1 for w in weights) else None
    rep = ReesReport(n, dims, weights, table, gr, inj, kernels, colim, gr_ok is not False)

    pdeg = p if multi_degree is None else multi_degree
    if pdeg and p >= 1 and pdeg == p and p <= MAX_P:
        _multi(rep, bases, p)
        if all(w.denominator == 1 for w in weights):
            rep.pullback_ok = _pullback(bases, weights, F)
    return rep


def _multi(rep: ReesReport, bases, p):
    rng = (-2, -1, 0, 1)
    table = {m: len(multi_space(bases, m)) for m in product(rng, repeat=p)}
    rep.multi_table = table
    # multiplication by t_k is the inclusion E_J(m) -> E_J(m + e_k)
    for m in product((-1, 0), repeat=p):
        for k in range(p):
            m2 = tuple(x + (i == k) for i, x in enumerate(m))
            A, B = multi_space(bases, m), multi_space(bases, m2)
            if not _contained(A, B):
                rep.multi_t_injective = False
            if p >= 2:
                for k2 in range(k + 1, p):
                    m3 = tuple(x + (i == k2) for i, x in enumerate(m))
                    m4 = tuple(x + (i == k2) for i, x in enumerate(m2))
                    C, D = multi_space(bases, m3), multi_space(bases, m4)
                    if len(A) != _dim_meet(B, C) or not _contained(B, D) or not _contained(C, D):
                        rep.fiber_products_ok = False
    for k in range(1, p + 1):
        direct, ok = _gr_k(bases, p, k, table)
        rep.gr_k[k] = direct
        rep.gr_k_ok[k] = ok


def _gr_k(bases, p, k, table):
    """Dimensions of ``Etilde / t_k Etilde`` three ways.

    1. directly, ``dim E~_m - dim E~_{m - e_k}``;
    2. by the two-part decomposition (m_k = -1 gives E_J; m_k = 0 with later
       entries >= 0 gives E_J / E_k);
    3. summing out the t_k degree, against the Rees table of the shortened
       filtration ``E_0 > ... > E_(k-1) > E_(k+1) > ... > E_p``.
    """
    dims = [len(B) for B in bases]
    direct = {}
    for m in product((-1, 0, 1), repeat=p):
        prev = tuple(x - (i == k - 1) for i, x in enumerate(m))
        below = len(multi_space(bases, prev))
        direct[m] = len(multi_space(bases, m)) - below
    ok = True
    for m, d in direct.items():
        if m[k - 1] == -1:
            pred = dims[_J(m)]
        elif m[k - 1] == 0 and all(x >= 0 for x in m[k:]):
            pred = dims[_J(m)] - dims[k]
        else:
            pred = 0
        if d != pred:
            ok = False
    short = dims[:k] + dims[k + 1:]
    for mp in product((-1, 0, 1), repeat=p - 1):
        total = sum(direct[mp[: k - 1] + (mk,) + mp[k - 1:]] for mk in (-1, 0, 1))
        Jp = 0
        for j, x in enumerate(mp, start=1):
            if x == -1:
                Jp = j
        if total != short[Jp]:
            ok = False
    return direct, ok


def _pullback(bases, weights, F) -> bool:
    """Pull back along ``t_i -> t^(w_i - w_(i-1))`` and compare with the single grading.

    Degree d of the pullback is the sum of E~_m over ``a.m <= d``; it should
    equal ``F^(w_0 - d)``.
    """
    a = [int(weights[i] - weights[i - 1]) for i in range(1, len(weights))]
    p = len(a)
    span = int(weights[-1] - weights[0])
    for d in range(-span - 2, 3):
        spaces = []
        bounds = [range(-1, (d + sum(a)) // ai + 2) for ai in a]
        for m in product(*bounds):
            if sum(x * y for x, y in zip(a, m)) <= d:
                spaces.append(multi_space(bases, m))
        got = _dim_sum(*spaces) if spaces else 0
        want = F(weights[0] - d)
        if got != len(want):
            return False
        if spaces and not all(_contained(S, want) for S in spaces):
            return False
    return True
