"""Flag complexes of subspaces of F_q^n: the spherical building of SL_n(F_q).

Subspaces are stored as reduced row echelon matrices over F_q (tuples of
row tuples), which is a canonical form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import TooLarge

MAX_FIELD_POINTS = 2 ** 16


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def rref_mod(rows, q):
    """Reduced row echelon form over F_q with zero rows dropped."""
    M = [[x % q for x in r] for r in rows]
    if not M:
        return ()
    n = len(M[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, q)
        M[r] = [x * inv % q for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [(a - f * b) % q for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return tuple(tuple(row) for row in M[:r])


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def complete_flag_count(n: int, q: int) -> int:
    """``[n]_q! = prod_k (q^k - 1)/(q - 1)``."""
    out = 1
    for k in range(1, n + 1):
        out *= (q ** k - 1) // (q - 1)
    return out


def _check_bounds(n, q, max_points=MAX_FIELD_POINTS):
    if not _is_prime(q):
        raise ValueError(f"q = {q} must be prime")
    if q ** n > max_points:
        raise TooLarge(f"q^n = {q ** n} exceeds the bound {max_points}")


def enumerate_subspaces(n: int, q: int, k: int, max_points=MAX_FIELD_POINTS) -> list:
    """All k-dimensional subspaces, by pivot pattern and free entries."""
    _check_bounds(n, q, max_points)
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    out = []
    for piv in combinations(range(n), k):
        free = [(i, c) for i, p in enumerate(piv) for c in range(p + 1, n) if c not in piv]
        for vals in product(range(q), repeat=len(free)):
            M = [[0] * n for _ in range(k)]
            for i, p in enumerate(piv):
                M[i][p] = 1
            for (i, c), v in zip(free, vals):
                M[i][c] = v
            out.append(tuple(tuple(r) for r in M))
    return out


def contains(U, V, q) -> bool:
    """U subset of V (both echelon bases)."""
    if len(U) > len(V):
        return False
    return len(rref_mod(list(V) + list(U), q)) == len(V)


@dataclass
class FlagComplex:
    n: int
    q: int
    vertices: list
    simplices: list = field(default_factory=list)

    @property
    def f_vector(self) -> list:
        top = max((len(s) for s in self.simplices), default=0)
        f = [0] * top
        for s in self.simplices:
            f[len(s) - 1] += 1
        return f

    def maximal_simplices(self) -> list:
        return [s for s in self.simplices if len(s) == self.n - 1]

    def dim_of(self, v) -> int:
        return len(self.vertices[v])


def building_complex(n: int, q: int, max_points=MAX_FIELD_POINTS) -> FlagComplex:
    if n < 2:
        raise ValueError("need n >= 2")
    _check_bounds(n, q, max_points)
    verts = [U for k in range(1, n) for U in enumerate_subspaces(n, q, k, max_points)]
    idx_by_dim = {}
    for i, U in enumerate(verts):
        idx_by_dim.setdefault(len(U), []).append(i)
    up = {i: [j for j in range(len(verts)) if len(verts[j]) > len(verts[i])
              and contains(verts[i], verts[j], q)] for i in range(len(verts))}
    simplices = []

    def grow(chain):
        simplices.append(tuple(chain))
        for j in up[chain[-1]]:
            chain.append(j)
            grow(chain)
            chain.pop()

    for i in range(len(verts)):
        grow([i])
    simplices.sort(key=lambda s: (len(s), s))
    return FlagComplex(n, q, verts, simplices)


# -- an independent count of complete flags -----------------------------------


def _span_set(vectors, q, n):
    """All vectors of the span, as a frozenset (no echelon forms involved)."""
    pts = {tuple([0] * n)}
    for v in vectors:
        pts = {tuple((a + c * b) % q for a, b in zip(p, v)) for p in pts for c in range(q)}
    return frozenset(pts)


def complete_flags_by_sets(n: int, q: int) -> list:
    """Complete flags as tuples of point sets, built one vector at a time."""
    _check_bounds(n, q)
    allv = [v for v in product(range(q), repeat=n) if any(v)]
    flags = set()

    def extend(chain):
        if len(chain) == n - 1:
            flags.add(tuple(chain))
            return
        cur = chain[-1] if chain else frozenset([tuple([0] * n)])
        nxt = set()
        for v in allv:
            if v not in cur:
                nxt.add(frozenset(_span_set([v], q, n) | cur) if not chain else
                        _join_sets(cur, v, q, n))
        for S in nxt:
            chain.append(S)
            extend(chain)
            chain.pop()

    extend([])
    return sorted(flags, key=lambda f: [sorted(S) for S in f])


def _join_sets(S, v, q, n):
    return frozenset(tuple((a + c * b) % q for a, b in zip(p, v)) for p in S for c in range(q))


def _set_to_echelon(S, q):
    return rref_mod([list(v) for v in S if any(v)], q)


def building_stats(C: FlagComplex) -> dict:
    n, q = C.n, C.q
    f = C.f_vector
    chi = sum((-1) ** i * x for i, x in enumerate(f))
    maximal = [s for s in C.simplices
               if not any(len(t) == len(s) + 1 and set(s) <= set(t) for t in C.simplices)]
    pure = all(len(s) == n - 1 for s in maximal)
    colors = {}
    for U in C.vertices:
        colors[len(U)] = colors.get(len(U), 0) + 1
    colors_ok = all(colors.get(k, 0) == gaussian_binomial(n, k, q) for k in range(1, n))
    chambers = C.maximal_simplices()
    indep = complete_flags_by_sets(n, q) if q ** n <= 4096 else None
    match = None
    if indep is not None:
        as_ech = {tuple(_set_to_echelon(S, q) for S in flag) for flag in indep}
        ours = {tuple(C.vertices[i] for i in s) for s in chambers}
        match = as_ech == ours
    thick = None
    if n >= 3:
        counts = {}
        for s in chambers:
            for drop in range(len(s)):
                face = s[:drop] + s[drop + 1:]
                counts[face] = counts.get(face, 0) + 1
        thick = set(counts.values()) == {q + 1}
    return {
        "n": n,
        "q": q,
        "f_vector": f,
        "euler_characteristic": chi,
        "dimension": len(f) - 1,
        "pure": pure,
        "color_classes": {str(k): v for k, v in sorted(colors.items())},
        "color_classes_match_gaussian": colors_ok,
        "chambers": len(chambers),
        "flag_formula": complete_flag_count(n, q),
        "independent_flags": None if indep is None else len(indep),
        "chambers_match_independent": match,
        "thickness_q_plus_1": thick,
    }


# -- export -------------------------------------------------------------------


def vertex_label(U) -> str:
    return "[" + ";".join("".join(str(x) for x in r) for r in U) + "]"


def to_dot(C: FlagComplex) -> str:
    lines = ["graph building {"]
    for i, U in enumerate(C.vertices):
        lines.append(f'  v{i} [label="{vertex_label(U)}", dim={len(U)}];')
    for s in C.simplices:
        if len(s) == 2:
            lines.append(f"  v{s[0]} -- v{s[1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_off(C: FlagComplex) -> str:
    """OFF with vertices placed on circles by dimension and one face per chamber."""
    by_dim = {}
    for i, U in enumerate(C.vertices):
        by_dim.setdefault(len(U), []).append(i)
    coords = {}
    for k, ids in by_dim.items():
        for j, i in enumerate(ids):
            t = 2 * math.pi * j / len(ids)
            coords[i] = (math.cos(t) * k, math.sin(t) * k, float(k))
    faces = C.maximal_simplices()
    out = ["OFF", f"{len(C.vertices)} {len(faces)} 0"]
    for i in range(len(C.vertices)):
        out.append("{:.6f} {:.6f} {:.6f}".format(*coords[i]))
    for s in faces:
        out.append(" ".join([str(len(s))] + [str(i) for i in s]))
    return "\n".join(out) + "\n"


def stats_json(C: FlagComplex) -> str:
    return json.dumps(building_stats(C), indent=2, sort_keys=True) + "\n"
