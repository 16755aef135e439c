"""Finite presentations of degeneration fans.

A ``FormalFan`` is the functor on integral simplicial cones determined by a
finite list of rational cones ``K_a`` in R^N: its n-cones are the injective
integer N-by-n matrices whose columns all lie in one ``K_a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from . import _linalg as la
from .cones import (
    ConeMorphism,
    Fan,
    RationalCone,
    cone_from_halfspaces,
    faces,
    is_classical_fan,
    standard_cone,
)
from .errors import DimensionMismatch, NotSurjective, TooLarge, ZeroVector

#: Supports are subsets of {1..n}; bound on n for exhaustive enumeration.
MAX_COORDS = 16


@dataclass(eq=False)
class FormalFan:
    ambient_dim: int
    pieces: list
    classical_fan_certified: bool = False

    def __post_init__(self):
        for K in self.pieces:
            if K.ambient_dim != self.ambient_dim:
                raise DimensionMismatch("piece has the wrong ambient dimension")

    @classmethod
    def from_cones(cls, cones, certify=True) -> FormalFan:
        cones = list(cones)
        n = cones[0].ambient_dim
        F = cls(n, cones)
        if certify:
            F.classical_fan_certified = certify_classical(F)
        return F

    def is_empty(self) -> bool:
        return all(K.is_zero() for K in self.pieces)

    def rays(self) -> list:
        """Distinct extreme rays of the pieces: the vertices of the projective realization."""
        out = []
        for K in self.pieces:
            if K.is_strictly_convex():
                for g in K.generators:
                    if g not in out and _is_extreme(K, g):
                        out.append(g)
        return sorted(out)


def _is_extreme(K: RationalCone, g) -> bool:
    tight = [h for h in K.inequalities if la.dot(h, g) == 0]
    on = [v for v in K.generators if all(la.dot(h, v) == 0 for h in tight)]
    return la.rank(on) == 1


def certify_classical(F: FormalFan) -> bool:
    closure = Fan(F.ambient_dim, list(F.pieces)).face_closure()
    return is_classical_fan(closure)


def standard_fan(n: int) -> FormalFan:
    """The representable fan of [n]: the positive orthant."""
    return FormalFan(n, [standard_cone(n)], classical_fan_certified=True)


def fan_cones(F: FormalFan, n: int, M) -> bool:
    """Decide whether the N-by-n integer matrix ``M`` is an element of F_n."""
    M = [list(row) for row in M]
    if len(M) != F.ambient_dim or any(len(row) != n for row in M):
        raise DimensionMismatch(f"expected a {F.ambient_dim}x{n} matrix")
    cols = [tuple(c) for c in zip(*M)]
    if any(all(x == 0 for x in c) for c in cols):
        return False
    if la.rank(M) != n:
        return False
    return any(all(K.contains(c) for c in cols) for K in F.pieces)


def realization_contains(F: FormalFan, x) -> bool:
    if len(x) != F.ambient_dim:
        raise DimensionMismatch("point has the wrong dimension")
    return any(K.contains(x) for K in F.pieces)


def preimage(K: RationalCone, A) -> RationalCone:
    """``{y : A y in K}`` for an N-by-k matrix ``A``."""
    A = la.frac_matrix(A)
    k = len(A[0])
    ineqs = [[la.dot(h, col) for col in zip(*A)] for h in K.inequalities]
    eqs = [[la.dot(e, col) for col in zip(*A)] for e in K.equations]
    return cone_from_halfspaces(k, ineqs, eqs)


def restrict(F: FormalFan, phi) -> FormalFan:
    """Pull back along ``phi`` (N-by-k): pieces ``phi^-1(K) ∩ R^k_{>=0}``.

    Functoriality ``restrict(restrict(F, a), b) == restrict(F, a b)`` holds
    when ``b`` has nonnegative entries.
    """
    M = phi.matrix if isinstance(phi, ConeMorphism) else tuple(tuple(r) for r in phi)
    if len(M) != F.ambient_dim:
        raise DimensionMismatch("morphism target does not match the fan")
    k = len(M[0])
    if la.rank([list(r) for r in M]) != k:
        raise ValueError("restriction map must be injective")
    orth = standard_cone(k)
    pieces = []
    for K in F.pieces:
        P = preimage(K, M)
        ineqs = list(P.inequalities) + list(orth.inequalities)
        Q = cone_from_halfspaces(k, ineqs, P.equations)
        if not Q.is_zero() and not any(Q.equals(R) for R in pieces):
            pieces.append(Q)
    return FormalFan(k, pieces)


def toric_degeneration_fan(sigma: Fan, pi) -> FormalFan:
    """Pieces ``pi^-1(sigma_i)`` for the N'-by-N lattice map ``pi`` of full row rank."""
    pi = [list(row) for row in pi]
    if len(pi) != sigma.ambient_dim:
        raise DimensionMismatch("pi must have one row per coordinate of the fan")
    if la.rank(pi) != len(pi):
        raise NotSurjective("pi is not of full row rank")
    N = len(pi[0])
    pieces = []
    for s in sigma.cones:
        P = preimage(s, pi)
        if not any(P.equals(Q) for Q in pieces):
            pieces.append(P)
    F = FormalFan(N, pieces)
    F.classical_fan_certified = certify_classical(F)
    return F


def fans_equal(F: FormalFan, G: FormalFan, probes=()) -> bool:
    """Extensional equality: generators of each lie in the other, plus extra probes."""
    if F.ambient_dim != G.ambient_dim:
        return False
    for A, B in ((F, G), (G, F)):
        for K in A.pieces:
            for g in K.generators:
                if not realization_contains(B, g):
                    return False
            if not K.is_zero() and not realization_contains(B, K.interior_point()):
                return False
    return all(realization_contains(F, p) == realization_contains(G, p) for p in probes)


def proj_points_equal(r1, r2) -> bool:
    r1 = la.frac_vector(r1)
    r2 = la.frac_vector(r2)
    if all(x == 0 for x in r1) or all(x == 0 for x in r2):
        raise ZeroVector("projective points must be nonzero")
    if len(r1) != len(r2):
        return False
    return la.primitive(r1) == la.primitive(r2)


# -- torus-action models ------------------------------------------------


@dataclass(eq=False)
class DegenerationModel:
    """Torus model on A^n: row i of ``weights`` is the character of coordinate i.

    Supports are frozensets of 1-based coordinate indices; ``excluded``
    lists supports removed from the space (``{frozenset()}`` punctures the
    origin).
    """

    weights: list
    excluded: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        self.weights = [tuple(int(x) for x in row) for row in self.weights]
        if not self.weights:
            raise ValueError("model needs at least one coordinate")
        k = len(self.weights[0])
        if any(len(r) != k for r in self.weights):
            raise DimensionMismatch("weight rows have different lengths")
        if self.n > MAX_COORDS:
            raise TooLarge(f"{self.n} coordinates exceeds the bound {MAX_COORDS}")
        self.excluded = frozenset(frozenset(s) for s in self.excluded)

    @classmethod
    def punctured(cls, weights) -> DegenerationModel:
        return cls(weights, frozenset([frozenset()]))

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def k(self) -> int:
        return len(self.weights[0])

    def allowed(self, S) -> bool:
        return frozenset(S) not in self.excluded

    def supports(self) -> list:
        """Allowed supports, ordered by size then lexicographically."""
        idx = range(1, self.n + 1)
        out = []
        for m in range(self.n + 1):
            for c in combinations(idx, m):
                if self.allowed(c):
                    out.append(frozenset(c))
        return out

    def limit_support(self, S, lam) -> frozenset:
        """Coordinates of S that survive in the limit along ``lam``."""
        return frozenset(i for i in S if la.dot(self.weights[i - 1], lam) == 0)


def admissible_cone(D: DegenerationModel, S) -> RationalCone:
    """One-parameter subgroups whose limit exists at a point of support ``S``."""
    rows = [D.weights[i - 1] for i in sorted(S)]
    return cone_from_halfspaces(D.k, rows, ())


def admissible_fan(D: DegenerationModel, S) -> FormalFan:
    K = admissible_cone(D, S)
    return FormalFan(D.k, [K], classical_fan_certified=True)


def realization_faces(F: FormalFan) -> list:
    out = []
    for K in F.pieces:
        for X in faces(K):
            if not any(X.equals(Y) for Y in out):
                out.append(X)
    return out
