"""Random valid lattices with additive charges, for oracle runs and fuzzing."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .lattice import SubobjectLattice, boolean_lattice, chain_lattice, zadd


def random_charge(rng: random.Random, torsion=False):
    if torsion:
        return (Fraction(-rng.randint(1, 3)), Fraction(0))
    return (Fraction(rng.randint(-4, 4)), Fraction(rng.randint(1, 4)))


def product_of_chains(c1, c2) -> SubobjectLattice:
    """Sub-lattice of a direct sum of two uniserial objects: pairs (i, j)."""
    a, b = len(c1), len(c2)

    def name(i, j):
        if i == j == 0:
            return "0"
        if i == a and j == b:
            return "E"
        return f"P{i}_{j}"

    def z(i, j):
        acc = (Fraction(0), Fraction(0))
        for k in range(i):
            acc = zadd(acc, c1[k])
        for k in range(j):
            acc = zadd(acc, c2[k])
        return acc

    pts = list(product(range(a + 1), range(b + 1)))
    leq = [(name(*p), name(*q)) for p in pts for q in pts if p[0] <= q[0] and p[1] <= q[1]]
    return SubobjectLattice([name(*p) for p in pts], leq, {name(*p): z(*p) for p in pts})


def diamond(k: int, zE) -> SubobjectLattice:
    """0 < k lines < E, as for the subspaces of a plane; each line has charge Z(E)/2."""
    half = (Fraction(zE[0]) / 2, Fraction(zE[1]) / 2)
    lines = [f"L{i}" for i in range(1, k + 1)]
    Z = {l: half for l in lines}
    Z["E"] = (Fraction(zE[0]), Fraction(zE[1]))
    leq = [("0", l) for l in lines] + [(l, "E") for l in lines]
    return SubobjectLattice(["0"] + lines + ["E"], leq, Z)


def downset_lattice(n: int, relations, charges, max_size: int = 20):
    """Down-sets of the poset on range(n) generated by ``relations`` (a < b).

    Returns None when there are more than ``max_size`` down-sets.
    """
    below = {i: {i} for i in range(n)}
    changed = True
    while changed:
        changed = False
        for a, b in relations:
            new = below[b] | below[a]
            if new != below[b]:
                below[b] = new
                changed = True
    downs = []
    for mask in range(1 << n):
        s = {i for i in range(n) if mask >> i & 1}
        if all(below[i] <= s for i in s):
            downs.append(frozenset(s))
    if len(downs) > max_size:
        return None

    def name(s):
        if not s:
            return "0"
        if len(s) == n:
            return "E"
        return "D" + "".join(str(i) for i in sorted(s))

    Z = {}
    for s in downs:
        acc = (Fraction(0), Fraction(0))
        for i in s:
            acc = zadd(acc, charges[i])
        Z[name(s)] = acc
    leq = [(name(s), name(t)) for s in downs for t in downs if s <= t]
    return SubobjectLattice([name(s) for s in downs], leq, Z)


def random_lattice(rng: random.Random, max_size: int = 12) -> SubobjectLattice:
    kind = rng.choice(["chain", "product", "boolean", "diamond", "downset", "downset"])
    tors = rng.random() < 0.2
    if kind == "chain":
        k = rng.randint(1, min(6, max_size - 1))
        cs = [random_charge(rng) for _ in range(k)]
        if tors:
            cs[rng.randrange(k)] = random_charge(rng, True)
        return chain_lattice(cs)
    if kind == "product":
        while True:
            a, b = rng.randint(1, 4), rng.randint(1, 4)
            if (a + 1) * (b + 1) <= max_size:
                break
        c1 = [random_charge(rng) for _ in range(a)]
        c2 = [random_charge(rng) for _ in range(b)]
        if tors:
            c1[0] = random_charge(rng, True)
        return product_of_chains(c1, c2)
    if kind == "boolean":
        k = rng.randint(2, 3)
        cs = [random_charge(rng) for _ in range(k)]
        if tors:
            cs[0] = random_charge(rng, True)
        return boolean_lattice(cs)
    if kind == "diamond":
        return diamond(rng.randint(3, min(5, max_size - 2)), random_charge(rng))
    while True:
        n = rng.randint(2, 5)
        rels = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < 0.4]
        cs = [random_charge(rng) for _ in range(n)]
        if tors:
            cs[0] = random_charge(rng, True)
        L = downset_lattice(n, rels, cs, max_size)
        if L is not None:
            return L
