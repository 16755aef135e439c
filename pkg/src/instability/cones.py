"""Exact rational polyhedral cones.

A cone is stored by its generators (primitive integer rays). The halfspace
description is computed on first use and cached; every predicate works over
``Fraction`` so membership and face tests are exact certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product

from . import _linalg as la
from .errors import DimensionMismatch, NotStrictlyConvex, TooLarge, ZeroVector

#: Default ceiling on the ambient dimension; callers may raise it.
MAX_DIM = 8


def canonicalize_ray(v) -> tuple:
    """Divide an integer vector by the gcd of its entries.

    >>> canonicalize_ray((-3, 6, 9))
    (-1, 2, 3)
    """
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        raise ZeroVector("cannot canonicalize the zero vector")
    return la.primitive(v)


def _canonical_functional(h, annihilator_rev):
    """Reduce ``h`` modulo the annihilator of the span and make it primitive.

    ``annihilator_rev`` is the annihilator in echelon form with pivots taken
    from the trailing coordinates, so the representative keeps the leading
    coordinates wherever possible.
    """
    h = list(h)
    for row, pc in annihilator_rev:
        if h[pc] != 0:
            f = h[pc]
            h = [a - f * b for a, b in zip(h, row)]
    return la.primitive(h)


@dataclass(eq=False)
class RationalCone:
    """Cone of nonnegative rational combinations of integer generators."""

    ambient_dim: int
    generators: tuple = ()
    _facets: list | None = field(default=None, repr=False)

    def __post_init__(self):
        gens = []
        seen = set()
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise DimensionMismatch(
                    f"generator {tuple(g)} has length {len(g)}, expected {self.ambient_dim}"
                )
            if all(Fraction(x) == 0 for x in g):
                continue
            r = canonicalize_ray(g)
            if r not in seen:
                seen.add(r)
                gens.append(r)
        self.generators = tuple(gens)

    # -- linear data ---------------------------------------------------
    @cached_property
    def dim(self) -> int:
        return la.rank(list(self.generators)) if self.generators else 0

    @cached_property
    def span_basis(self):
        return la.row_space_basis(list(self.generators))

    @cached_property
    def _annihilator_rev(self):
        N = self.ambient_dim
        ann = la.nullspace(list(self.generators), N)
        if not ann:
            return []
        rev = [list(reversed(r)) for r in ann]
        R, piv = la.rref(rev)
        return [(list(reversed(row)), N - 1 - p) for row, p in zip(R, piv)]

    @cached_property
    def equations(self) -> list:
        """Primitive integer functionals cutting out the linear span."""
        return sorted(la.primitive(row) for row, _ in self._annihilator_rev)

    @cached_property
    def inequalities(self) -> list:
        """Irredundant facet functionals ``h`` with ``h >= 0`` on the cone."""
        if self._facets is not None:
            return self._facets
        d = self.dim
        if d == 0:
            return []
        gens = [la.frac_vector(g) for g in self.generators]
        S = self.span_basis
        found = set()
        for sub in combinations(range(len(gens)), d - 1):
            # functional h = sum c_j S_j vanishing on the chosen generators
            system = [[la.dot(gens[i], s) for s in S] for i in sub]
            ker = la.nullspace(system, d) if system else la.nullspace([], d)
            if len(ker) != 1:
                continue
            h = [sum((c * s[k] for c, s in zip(ker[0], S)), Fraction(0))
                 for k in range(self.ambient_dim)]
            vals = [la.dot(h, g) for g in gens]
            if all(v >= 0 for v in vals):
                pass
            elif all(v <= 0 for v in vals):
                h = [-x for x in h]
            else:
                continue
            found.add(_canonical_functional(h, self._annihilator_rev))
        return sorted(found)

    @cached_property
    def lineality_dim(self) -> int:
        if not self.generators:
            return 0
        rows = [list(h) for h in self.inequalities] + [list(e) for e in self.equations]
        return len(la.nullspace(rows, self.ambient_dim)) if rows else self.ambient_dim

    # -- predicates ------------------------------------------------------
    def is_strictly_convex(self) -> bool:
        return self.lineality_dim == 0

    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dim

    def is_zero(self) -> bool:
        return not self.generators

    def separating_functional(self, x):
        """A functional violated by ``x`` (negative value), or None if ``x`` is in the cone."""
        if len(x) != self.ambient_dim:
            raise DimensionMismatch(f"point of length {len(x)} in a cone of dim {self.ambient_dim}")
        x = la.frac_vector(x)
        for e in self.equations:
            v = la.dot(e, x)
            if v > 0:
                return tuple(-a for a in e)
            if v < 0:
                return e
        for h in self.inequalities:
            if la.dot(h, x) < 0:
                return h
        return None

    def contains(self, x) -> bool:
        return self.separating_functional(x) is None

    def contains_cone(self, other: RationalCone) -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: RationalCone) -> bool:
        return (self.ambient_dim == other.ambient_dim
                and self.contains_cone(other) and other.contains_cone(self))

    def interior_point(self):
        """Sum of generators: a point of the relative interior."""
        x = [0] * self.ambient_dim
        for g in self.generators:
            x = [a + b for a, b in zip(x, g)]
        return tuple(x)

    def __repr__(self):
        return f"cone{self.generators}"


def cone(*generators) -> RationalCone:
    """Convenience constructor: ``cone((1, 0), (0, 1))``."""
    if not generators:
        raise ValueError("use RationalCone(dim) for the zero cone")
    return RationalCone(len(generators[0]), tuple(tuple(g) for g in generators))


def zero_cone(n: int) -> RationalCone:
    return RationalCone(n, ())


def whole_space(n: int) -> RationalCone:
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        gens.append(tuple(e))
        gens.append(tuple(-x for x in e))
    return RationalCone(n, tuple(gens))


def standard_cone(n: int) -> RationalCone:
    return RationalCone(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def cone_contains(C: RationalCone, x) -> bool:
    return C.contains(x)


def cone_facets(C: RationalCone) -> list:
    """Facet functionals, followed by the span equations as opposite pairs."""
    out = list(C.inequalities)
    for e in C.equations:
        out.append(tuple(e))
        out.append(tuple(-a for a in e))
    return out


def cone_from_halfspaces(n: int, inequalities=(), equations=()) -> RationalCone:
    """Generators of ``{x : h(x) >= 0, e(x) = 0}`` by exact extreme-ray enumeration."""
    ineqs = sorted({la.primitive(h) for h in inequalities if any(a != 0 for a in h)})
    eqs = [list(e) for e in equations if any(a != 0 for a in e)]
    lineality = la.nullspace([list(h) for h in ineqs] + eqs, n)
    base = eqs + lineality
    base_rank = la.rank(base) if base else 0
    need = n - 1 - base_rank  # active inequalities that pin down a ray
    gens = []
    if base_rank < n:
        if need < 0:
            need = 0
        for sub in combinations(range(len(ineqs)), need):
            rows = base + [list(ineqs[i]) for i in sub]
            ker = la.nullspace(rows, n)
            if len(ker) != 1:
                continue
            r = ker[0]
            for cand in (r, [-a for a in r]):
                if all(la.dot(h, cand) >= 0 for h in ineqs):
                    gens.append(la.primitive(cand))
                    break
    for v in lineality:
        p = la.primitive(v)
        gens.append(p)
        gens.append(tuple(-a for a in p))
    return RationalCone(n, tuple(sorted(set(gens))))


def intersect(C1: RationalCone, C2: RationalCone) -> RationalCone:
    if C1.ambient_dim != C2.ambient_dim:
        raise DimensionMismatch("cones live in different ambient spaces")
    n = C1.ambient_dim
    return cone_from_halfspaces(
        n,
        list(C1.inequalities) + list(C2.inequalities),
        list(C1.equations) + list(C2.equations),
    )


def faces(C: RationalCone) -> list:
    """All faces of ``C`` (including ``C`` and the minimal face)."""
    gens = C.generators
    start = frozenset(range(len(gens)))
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for h in C.inequalities:
            nxt = frozenset(i for i in cur if la.dot(h, gens[i]) == 0)
            if nxt != cur and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    out = [RationalCone(C.ambient_dim, tuple(gens[i] for i in sorted(s))) for s in seen]
    out.sort(key=lambda K: (K.dim, K.generators))
    return out


def is_face(F: RationalCone, C: RationalCone) -> bool:
    """True iff ``F`` is a face of ``C``."""
    if not C.contains_cone(F):
        return False
    tight = [h for h in C.inequalities if all(la.dot(h, g) == 0 for g in F.generators)]
    smallest = [g for g in C.generators if all(la.dot(h, g) == 0 for h in tight)]
    return F.contains_cone(RationalCone(C.ambient_dim, tuple(smallest)))


def is_classical_fan(cones) -> bool:
    cones = list(cones)
    return first_fan_violation(cones) is None


def first_fan_violation(cones):
    """First pair ``(i, j)`` whose intersection is not a face of both, else None."""
    for i, j in combinations(range(len(cones)), 2):
        A, B = cones[i], cones[j]
        if A.ambient_dim != B.ambient_dim:
            raise DimensionMismatch("fan cones live in different ambient spaces")
        X = intersect(A, B)
        if not (is_face(X, A) and is_face(X, B)):
            return (i, j)
    return None


def _span_functional(basis, on, positive_at, n):
    """Functional in span(basis) vanishing on ``on`` and positive at ``positive_at``."""
    d = len(basis)
    system = [[la.dot(la.frac_vector(g), s) for s in basis] for g in on]
    ker = la.nullspace(system, d) if system else la.nullspace([], d)
    c = ker[0]
    h = [sum((cj * s[k] for cj, s in zip(c, basis)), Fraction(0)) for k in range(n)]
    if la.dot(h, positive_at) < 0:
        h = [-x for x in h]
    return h


def simplicial_subdivision(C: RationalCone) -> list:
    """Placing triangulation in generator order; interior generators are
    inserted by stellar subdivision so every generator is used as a ray."""
    if not C.is_strictly_convex():
        raise NotStrictlyConvex(f"{C!r} contains a line")
    if C.is_simplicial():
        return [C]
    n = C.ambient_dim
    gens = [la.frac_vector(g) for g in C.generators]
    simplices: list[tuple] = []
    placed: list[int] = []
    for idx, p in enumerate(gens):
        if not placed:
            simplices = [(idx,)]
            placed.append(idx)
            continue
        cur = [gens[i] for i in placed]
        if not la.contains_vector(cur, p):
            simplices = [s + (idx,) for s in simplices]
        else:
            basis = la.row_space_basis(cur)
            K = RationalCone(n, tuple(C.generators[i] for i in placed))
            if K.contains(p):
                new = []
                for s in simplices:
                    coeffs = la.solve_any(la.transpose([gens[i] for i in s]), p)
                    if all(c >= 0 for c in coeffs):
                        support = [v for v, c in zip(s, coeffs) if c > 0]
                        for v in support:
                            new.append(tuple(u for u in s if u != v) + (idx,))
                    else:
                        new.append(s)
                simplices = new
            else:
                new = list(simplices)
                for s in simplices:
                    for v in s:
                        tau = [u for u in s if u != v]
                        h = _span_functional(basis, [gens[u] for u in tau], gens[v], n)
                        if la.dot(h, p) < 0 and all(la.dot(h, g) >= 0 for g in cur):
                            new.append(tuple(tau) + (idx,))
                simplices = new
        placed.append(idx)
    out = []
    for s in simplices:
        out.append(RationalCone(n, tuple(C.generators[i] for i in sorted(s))))
    return out


def pointed_pieces(C: RationalCone) -> list:
    """Cover ``C`` by strictly convex cones: itself, or its orthant slices."""
    if C.is_strictly_convex():
        return [C]
    n = C.ambient_dim
    out = []
    for signs in product((1, -1), repeat=n):
        orth = [[s if i == j else 0 for j in range(n)] for i, s in enumerate(signs)]
        P = cone_from_halfspaces(n, list(C.inequalities) + orth, C.equations)
        if not P.is_zero() and not any(P.equals(Q) for Q in out):
            out.append(P)
    # slices lying inside another slice add nothing
    return [P for P in out if not any(Q is not P and Q.contains_cone(P) for Q in out)]


@dataclass(frozen=True)
class ConeMorphism:
    """Integral map of simplicial cones ``[k] -> [n]``: an n-by-k matrix."""

    matrix: tuple

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))

    @property
    def shape(self):
        return len(self.matrix), (len(self.matrix[0]) if self.matrix else 0)

    def columns(self):
        return [tuple(col) for col in zip(*self.matrix)]

    def compose(self, other: ConeMorphism) -> ConeMorphism:
        """``self . other``."""
        return ConeMorphism(tuple(tuple(int(x) for x in row)
                                  for row in la.matmul(self.matrix, other.matrix)))

    def is_valid(self) -> bool:
        n, k = self.shape
        return morphism_check(self.matrix, k, n)


def morphism_check(M, k: int, n: int) -> bool:
    """Nonnegative entries and rank ``k`` (injective on R^k)."""
    M = [list(row) for row in M]
    if len(M) != n or any(len(row) != k for row in M):
        raise DimensionMismatch(f"expected a {n}x{k} matrix")
    if any(x < 0 for row in M for x in row):
        return False
    return la.rank(M) == k


@dataclass(eq=False)
class Fan:
    ambient_dim: int
    cones: list

    def __post_init__(self):
        if self.ambient_dim > MAX_DIM:
            raise TooLarge(f"ambient dimension {self.ambient_dim} exceeds {MAX_DIM}")
        kept = []
        for C in self.cones:
            if C.ambient_dim != self.ambient_dim:
                raise DimensionMismatch("fan cone has the wrong ambient dimension")
            if not any(C.equals(K) for K in kept):
                kept.append(C)
        self.cones = kept

    def maximal_cones(self) -> list:
        return [C for C in self.cones
                if not any(K is not C and K.contains_cone(C) and not C.contains_cone(K)
                           for K in self.cones)]

    def contains(self, x) -> bool:
        return any(C.contains(x) for C in self.cones)

    def face_closure(self) -> list:
        out = []
        for C in self.cones:
            for F in faces(C):
                if not any(F.equals(K) for K in out):
                    out.append(F)
        return out


def complete_fan_1d() -> Fan:
    """Fan of the projective line: the two half-lines."""
    return Fan(1, [cone((1,)), cone((-1,))])
