"""Finite subobject lattices with an additive central charge.

Elements are named by strings; ``"0"`` and ``"E"`` are the bottom and top by
default.  Charges are pairs ``(re, im)`` of rationals.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..errors import NotATorsionTheory, NotValid, OutOfRange, TooLarge

MAX_SIZE = 20


def charge(z):
    re, im = z
    return (Fraction(re), Fraction(im))


def zsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def zadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def phase_key(z):
    """Key increasing with the phase in (0, 1]; torsion and 0 get phase 1.

    Upper half plane: ``(0, -re/im)`` since ``cot(pi phi) = re/im``.
    """
    re, im = charge(z)
    if im < 0 or (im == 0 and re > 0):
        raise OutOfRange(f"{re} + {im}i is outside H u R_<=0")
    if im == 0:
        return (1, Fraction(0))
    return (0, -re / im)


def phase(z) -> float:
    """Float phase, for display only."""
    import math

    re, im = charge(z)
    phase_key(z)
    if im == 0:
        return 1.0
    return math.atan2(float(im), float(re)) / math.pi


class SubobjectLattice:
    """Poset given by ``leq`` pairs (transitively closed here) plus charges."""

    def __init__(self, elements, leq, Z, bottom="0", top="E", max_size=MAX_SIZE):
        self.elements = list(elements)
        if len(self.elements) > max_size:
            raise TooLarge(f"lattice has {len(self.elements)} elements > {max_size}")
        if len(set(self.elements)) != len(self.elements):
            raise NotValid("duplicate element names")
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.bottom, self.top = bottom, top
        n = len(self.elements)
        le = [[i == j for j in range(n)] for i in range(n)]
        for a, b in leq:
            le[self.index[a]][self.index[b]] = True
        for k in range(n):
            for i in range(n):
                if le[i][k]:
                    for j in range(n):
                        if le[k][j]:
                            le[i][j] = True
        self._le = le
        self.Z = {e: (Fraction(0), Fraction(0)) for e in self.elements}
        for e, z in Z.items():
            self.Z[e] = charge(z)
        self.Z[bottom] = (Fraction(0), Fraction(0))
        self._meet = self._join = None

    def __len__(self):
        return len(self.elements)

    def leq(self, a, b) -> bool:
        return self._le[self.index[a]][self.index[b]]

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def interval(self, a, b) -> list:
        return [x for x in self.elements if self.leq(a, x) and self.leq(x, b)]

    def _bound(self, a, b, upper: bool):
        if upper:
            cands = [x for x in self.elements if self.leq(a, x) and self.leq(b, x)]
            best = [x for x in cands if all(self.leq(x, y) for y in cands)]
        else:
            cands = [x for x in self.elements if self.leq(x, a) and self.leq(x, b)]
            best = [x for x in cands if all(self.leq(y, x) for y in cands)]
        return best[0] if len(best) == 1 else None

    def _tables(self):
        if self._join is None:
            self._join, self._meet = {}, {}
            for a, b in product(self.elements, repeat=2):
                self._join[a, b] = self._bound(a, b, True)
                self._meet[a, b] = self._bound(a, b, False)

    def join(self, a, b):
        self._tables()
        return self._join[a, b]

    def meet(self, a, b):
        self._tables()
        return self._meet[a, b]

    def quotient_charge(self, a, b):
        """Charge of the subquotient b / a."""
        return zsub(self.Z[b], self.Z[a])

    def rank(self, a) -> Fraction:
        return self.Z[a][1]

    def maximal_chains(self, lo=None, hi=None):
        """All maximal chains from lo to hi, as lists ``[lo, ..., hi]``."""
        lo = self.bottom if lo is None else lo
        hi = self.top if hi is None else hi
        covers = {x: [y for y in self.elements if self.lt(x, y) and self.leq(y, hi)
                      and not any(self.lt(x, z) and self.lt(z, y) for z in self.elements)]
                  for x in self.interval(lo, hi)}
        out = []

        def walk(path):
            x = path[-1]
            if x == hi:
                out.append(list(path))
                return
            for y in covers[x]:
                path.append(y)
                walk(path)
                path.pop()

        walk([lo])
        return out


def validate_lattice(L: SubobjectLattice):
    """``(ok, violations)``; each violation is a short tagged tuple."""
    v = []
    els = L.elements
    if L.bottom not in L.index or L.top not in L.index:
        return False, [("missing-bounds",)]
    for a, b in product(els, repeat=2):
        if a != b and L.leq(a, b) and L.leq(b, a):
            v.append(("not-antisymmetric", a, b))
    for x in els:
        if not L.leq(L.bottom, x) or not L.leq(x, L.top):
            v.append(("unbounded", x))
    if v:
        return False, v
    for a, b in product(els, repeat=2):
        if L.join(a, b) is None:
            v.append(("no-join", a, b))
        if L.meet(a, b) is None:
            v.append(("no-meet", a, b))
    if v:
        return False, v
    for a, b, c in product(els, repeat=3):
        if L.leq(a, c):
            lhs = L.join(a, L.meet(b, c))
            rhs = L.meet(L.join(a, b), c)
            if lhs != rhs:
                v.append(("not-modular", a, b, c))
    for a, b in product(els, repeat=2):
        j, m = L.join(a, b), L.meet(a, b)
        if zadd(L.Z[j], L.Z[m]) != zadd(L.Z[a], L.Z[b]):
            v.append(("not-additive", a, b))
    for a, b in product(els, repeat=2):
        if L.lt(a, b):
            re, im = L.quotient_charge(a, b)
            if im < 0 or (im == 0 and re > 0):
                v.append(("charge-out-of-range", a, b))
            elif re == 0 and im == 0:
                v.append(("zero-charge", a, b))
    return not v, v


def torsion_elements(L: SubobjectLattice) -> list:
    return [x for x in L.elements if L.Z[x][1] == 0]


def max_torsion(L: SubobjectLattice):
    """The unique maximal element with ``Im Z = 0``."""
    tors = torsion_elements(L)
    t = L.bottom
    for x in tors:
        j = L.join(t, x)
        if j is None or L.Z[j][1] != 0:
            raise NotATorsionTheory("join of torsion elements is not torsion", (t, x))
        t = j
    return t


def is_semistable(L: SubobjectLattice, lo=None, hi=None) -> bool:
    """No a with lo < a < hi has a phase above that of hi / lo."""
    lo = L.bottom if lo is None else lo
    hi = L.top if hi is None else hi
    top = phase_key(L.quotient_charge(lo, hi))
    for a in L.interval(lo, hi):
        if a not in (lo, hi) and phase_key(L.quotient_charge(lo, a)) > top:
            return False
    return True


# -- small generators used by tests and the CLI --------------------------


def chain_lattice(charges) -> SubobjectLattice:
    """0 < F1 < ... < Fk = E with successive quotient charges ``charges`` (bottom first)."""
    names = ["0"] + [f"F{i}" for i in range(1, len(charges))] + ["E"]
    Z, acc = {}, (Fraction(0), Fraction(0))
    for name, z in zip(names[1:], charges):
        acc = zadd(acc, charge(z))
        Z[name] = acc
    leq = list(zip(names, names[1:]))
    return SubobjectLattice(names, leq, Z)


def boolean_lattice(charges) -> SubobjectLattice:
    """Subsets of a direct sum of simple summands with additive charges."""
    k = len(charges)
    subsets = list(product((0, 1), repeat=k))

    def name(s):
        if not any(s):
            return "0"
        if all(s):
            return "E"
        return "S" + "".join(str(i + 1) for i in range(k) if s[i])

    Z = {}
    for s in subsets:
        z = (Fraction(0), Fraction(0))
        for i in range(k):
            if s[i]:
                z = zadd(z, charge(charges[i]))
        Z[name(s)] = z
    leq = [(name(a), name(b)) for a in subsets for b in subsets
           if all(x <= y for x, y in zip(a, b))]
    return SubobjectLattice([name(s) for s in subsets], leq, Z)


def to_json(L: SubobjectLattice) -> dict:
    covers = []
    for a in L.elements:
        for b in L.elements:
            if L.lt(a, b) and not any(L.lt(a, c) and L.lt(c, b) for c in L.elements):
                covers.append([a, b])
    return {
        "elements": list(L.elements),
        "leq": covers,
        "Z": {e: [str(L.Z[e][0]), str(L.Z[e][1])] for e in L.elements if e != L.bottom},
    }


def from_json(obj) -> SubobjectLattice:
    return SubobjectLattice(
        obj["elements"],
        [tuple(p) for p in obj.get("leq", [])],
        {k: tuple(v) for k, v in obj.get("Z", {}).items()},
        bottom=obj.get("bottom", "0"),
        top=obj.get("top", "E"),
    )
