"""Greedy HN filtrations on subobject lattices and the brute-force maximizer.

Chains are listed bottom to top, ``[0, E_p, ..., E_2, E]``.  The graded
pieces are indexed from the top, ``gr_j = E_j / E_{j+1}``, so phases
increase with j and weights must too.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import AmbiguousMaxDestabilizer, NotValid
from ..invariants import MuValue, compare_mu
from .lattice import (
    SubobjectLattice,
    is_semistable,
    max_torsion,
    phase_key,
    validate_lattice,
)
from .rdw import Polygon, pava_max

UNSTABLE = "Unstable"
SEMISTABLE = "Semistable"


@dataclass
class HNResult:
    chain: list
    pieces: list
    weights: list
    value: MuValue
    status: str
    unique: bool = True
    alternatives: list = field(default_factory=list)

    def summary(self) -> str:
        ch = " < ".join(self.chain)
        return f"{self.status}: {ch}; mu = {self.value}"


def _pieces(L: SubobjectLattice, chain) -> list:
    """``(r_j, d_j)`` of gr_j, j = 1 at the top."""
    out = []
    for lo, hi in reversed(list(zip(chain, chain[1:]))):
        re, im = L.quotient_charge(lo, hi)
        out.append((im, -re))
    return out


def _evaluate(L: SubobjectLattice, chain):
    pieces = _pieces(L, chain)
    weights, value, blocks = pava_max(pieces)
    return pieces, weights, value, blocks


def _status(value: MuValue) -> str:
    return UNSTABLE if value.sign > 0 else SEMISTABLE


def _check(L, validate):
    if validate:
        ok, v = validate_lattice(L)
        if not ok:
            raise NotValid("lattice fails validation", v)


def hn_filtration(L: SubobjectLattice, validate=True) -> HNResult:
    """Successive maximal destabilizing subobjects of the quotients."""
    _check(L, validate)
    cur = L.bottom
    chain = [cur]
    while cur != L.top:
        cands = [a for a in L.interval(cur, L.top) if a != cur]
        keyed = {a: (phase_key(L.quotient_charge(cur, a)), L.quotient_charge(cur, a)[1])
                 for a in cands}
        best = max(keyed.values())
        ties = [a for a in cands if keyed[a] == best]
        tops = [a for a in ties if not any(L.lt(a, b) for b in ties)]
        if len(tops) != 1:
            raise AmbiguousMaxDestabilizer("no unique maximal destabilizer", tops)
        nxt = tops[0]
        if not is_semistable(L, cur, nxt):
            raise NotValid("greedy step produced a non-semistable piece", [(cur, nxt)])
        chain.append(nxt)
        cur = nxt
    pieces, weights, value, _ = _evaluate(L, chain)
    if len(chain) == 2:
        return HNResult(chain, pieces, [0], MuValue(0, 1), SEMISTABLE)
    return HNResult(chain, pieces, weights, value, _status(value))


def _coarsen(chain, blocks) -> list:
    """Keep only the chain elements at block boundaries of the PAVA result."""
    m = len(chain) - 1
    keep = {chain[0]}
    for b in blocks:
        i = b[2][0]  # first (topmost) piece index of the block
        keep.add(chain[m - i])
    return [x for x in chain if x in keep]


def brute_force_max(L: SubobjectLattice, validate=True) -> HNResult:
    """Maximize mu over every maximal chain above the maximal torsion element."""
    _check(L, validate)
    T = max_torsion(L)
    best, best_chains = None, []
    for ch in L.maximal_chains(T, L.top):
        pieces, weights, value, blocks = _evaluate(L, ch) if len(ch) > 1 else ([], [], MuValue(0, 1), [])
        coarse = _coarsen(ch, blocks) if len(ch) > 1 else ch
        if best is None or compare_mu(value, best) > 0:
            best, best_chains = value, [coarse]
        elif compare_mu(value, best) == 0 and coarse not in best_chains:
            best_chains.append(coarse)
    E = L.top
    rank_E = L.Z[E][1]
    if best is None or best.sign <= 0:
        best_chains = [[T, E]] if T != E else [[E]]
        best = MuValue(0, 1)
    prefix = [L.bottom] if T != L.bottom else []
    chains = [prefix + c for c in best_chains]
    chains = [c if len(c) > 1 else [L.bottom, E] for c in chains]
    chain = chains[0]
    if T != L.bottom and rank_E > 0:
        value = MuValue(1, 0)
    else:
        value = best
    pieces, weights, _, _ = _evaluate(L, chain)
    if len(chain) == 2:
        weights = [0]
    return HNResult(chain, pieces, weights, value, _status(value),
                    unique=len(chains) == 1, alternatives=chains[1:])


def check_containment(L: SubobjectLattice, hn: HNResult = None):
    """Every charge lies in the polygon of the HN pieces: ``(ok, witness)``."""
    hn = hn or hn_filtration(L)
    P = Polygon(hn.pieces)
    for a in L.elements:
        z = L.Z[a]
        if not P.contains(z):
            return False, a
    return True, None
