"""Stratifications of torus models on affine space by optimal destabilizers.

A point of A^n is recorded by its support S.  Its admissible one-parameter
subgroups form the cone ``A_i . lam >= 0 (i in S)``; the limit along lam has
support ``{i in S : A_i . lam = 0}``, which must be allowed by the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formalfan import DegenerationModel, admissible_cone
from .invariants import MuValue, NumericalInvariant
from .kempf import SEMISTABLE, DestabResult, maximize_on_fan


def fmt_support(S) -> str:
    return "{" + ",".join(str(i) for i in sorted(S)) + "}"


def _support_key(S):
    return (len(S), sorted(S))


@dataclass
class Stratum:
    mu: MuValue
    ray: tuple
    limit_support: frozenset
    members: list = field(default_factory=list)

    def label(self) -> str:
        ray = ",".join(str(x) for x in self.ray)
        return f"mu^2={self.mu.squared()} ray=({ray}) limit={fmt_support(self.limit_support)}"


@dataclass
class ThetaStratification:
    strata: list
    semistable: list
    results: dict = field(default_factory=dict)

    def stratum_of(self, S):
        S = frozenset(S)
        for i, st in enumerate(self.strata):
            if S in st.members:
                return i
        return None

    def unstable_supports(self) -> list:
        return [S for st in self.strata for S in st.members]

    def levels(self) -> list:
        out = []
        for st in self.strata:
            if not out or out[-1] != st.mu:
                out.append(st.mu)
        return out


class _Limit:
    def __init__(self, D: DegenerationModel, S):
        self.D, self.S = D, S

    def __call__(self, ray) -> bool:
        return self.D.allowed(self.D.limit_support(self.S, ray))


def best_destabilizer(D: DegenerationModel, S, inv: NumericalInvariant) -> DestabResult:
    """Maximize mu over rays at S whose limit point stays in the model."""
    S = frozenset(S)
    K = admissible_cone(D, S)

    class _One:
        pieces = [K]

    return maximize_on_fan(inv, _One, accept=_Limit(D, S))


def build_stratification(D: DegenerationModel, inv: NumericalInvariant) -> ThetaStratification:
    groups = {}
    semistable = []
    results = {}
    for S in D.supports():
        res = best_destabilizer(D, S, inv)
        results[S] = res
        if res.status == SEMISTABLE:
            semistable.append(S)
            continue
        ray = res.argmax_rays[0]
        key = (res.value.key(), ray, tuple(sorted(D.limit_support(S, ray))))
        if key not in groups:
            groups[key] = Stratum(res.value, ray, D.limit_support(S, ray))
        groups[key].members.append(S)
    order = sorted(groups, key=lambda k: (_neg(k[0]), k[1], k[2]))
    strata = [groups[k] for k in order]
    return ThetaStratification(strata, semistable, results)


def _neg(key):
    return (-key[0], -key[1])


def check_closedness(D: DegenerationModel, strat: ThetaStratification):
    """``(True, None)`` or ``(False, (S, S'))`` with S' a missing specialization of S."""
    allowed = D.supports()
    for c in strat.levels():
        upper = [S for st in strat.strata if st.mu >= c for S in st.members]
        uset = set(upper)
        for S in sorted(upper, key=_support_key):
            for T in allowed:
                if T <= S and T not in uset:
                    return False, (S, T)
    return True, None


def check_uniqueness(D: DegenerationModel, strat: ThetaStratification):
    """``("strict", [])`` or ``("weak", offending supports)``."""
    bad = [S for S, r in strat.results.items() if r.unstable and not r.unique]
    bad.sort(key=_support_key)
    return ("weak", bad) if bad else ("strict", [])


def restrict_to_level(D: DegenerationModel, strat: ThetaStratification, c: MuValue):
    """The model with every support of mu-value above c removed."""
    drop = {S for st in strat.strata if st.mu > c for S in st.members}
    return DegenerationModel(D.weights, D.excluded | drop)


# -- Hasse diagram ---------------------------------------------------------


def export_hasse(strat: ThetaStratification, D: DegenerationModel = None) -> dict:
    """Nodes are strata plus the semistable block; edges cover the mu order.

    With a model, a failed closure check adds an annotated edge from the
    stratum of S to the node holding its missing specialization S'.
    """
    nodes = [{"id": f"s{i}", "label": st.label(),
              "members": [sorted(S) for S in st.members]} for i, st in enumerate(strat.strata)]
    nodes.append({"id": "ss", "label": "semistable",
                  "members": [sorted(S) for S in strat.semistable]})
    levels = strat.levels()
    by_level = [[f"s{i}" for i, st in enumerate(strat.strata) if st.mu == c] for c in levels]
    by_level.append(["ss"])
    edges = []
    for upper, lower in zip(by_level, by_level[1:]):
        for a in upper:
            for b in lower:
                edges.append({"from": a, "to": b, "kind": "cover"})
    if D is not None:
        ok, wit = check_closedness(D, strat)
        if not ok:
            S, T = wit
            i, j = strat.stratum_of(S), strat.stratum_of(T)
            edges.append({"from": f"s{i}", "to": "ss" if j is None else f"s{j}",
                          "kind": "closure-violation",
                          "witness": [sorted(S), sorted(T)]})
    return {"nodes": nodes, "edges": edges}


def hasse_to_dot(h: dict) -> str:
    lines = ["digraph strata {", "  rankdir=TB;"]
    for n in h["nodes"]:
        mem = " ".join(fmt_support(S) for S in n["members"])
        lines.append(f'  {n["id"]} [label="{n["label"]}\\n{mem}"];')
    for e in h["edges"]:
        if e["kind"] == "cover":
            lines.append(f'  {e["from"]} -> {e["to"]};')
        else:
            S, T = e["witness"]
            lines.append(f'  {e["from"]} -> {e["to"]} [style=dashed, color=red, '
                         f'label="not closed: {fmt_support(S)} -> {fmt_support(T)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
