"""Command line front end: ``instability <verb> ...``.

Exit status is 0 on success, 2 on invalid input and 3 when a resource
bound is exceeded.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import cones as _cones
from . import io as fio
from .building import building_complex, building_stats, to_dot, to_off
from .errors import InstabilityError, ResourceBoundError, SchemaError, UnsupportedFormat
from .formalfan import toric_degeneration_fan
from .futaki import futaki_classes, futaki_fit, normalized_futaki_exact, twist
from .hn.filtration import brute_force_max, check_containment, hn_filtration
from .hn.lattice import SubobjectLattice, to_json as lattice_to_json
from .hn.random_models import random_lattice
from .hn.rdw import mu_rdw, pava_max, pol
from .invariants import NumericalInvariant, PLClass, PQClass
from .kempf import maximize_on_fan
from .stratify import (
    build_stratification,
    check_closedness,
    check_uniqueness,
    export_hasse,
    fmt_support,
    hasse_to_dot,
)

DEFAULT_SEED = 0


def _formats(p, *extra):
    p.add_argument("--max-dim", type=int, default=_cones.MAX_DIM, help="bound on lattice rank")
    p.add_argument("--max-size", type=int, default=None, help="bound on lattice size / field points")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random inputs")
    p.add_argument("--json", action="store_true", help="JSON output")
    p.add_argument("--dot", action="store_true", help="Graphviz DOT output")
    p.add_argument("--csv", action="store_true", help="CSV output")
    for e in extra:
        p.add_argument(f"--{e}", action="store_true", help=f"{e.upper()} output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="instability", description="Exact instability computations.")
    sub = ap.add_subparsers(dest="verb", required=True)

    fan = sub.add_parser("fan", help="fan checks and toric degeneration fans")
    fsub = fan.add_subparsers(dest="action", required=True)
    p = fsub.add_parser("check", help="is a cone collection a classical fan")
    p.add_argument("file", help='fan JSON {"dim": N, "cones": [...]}')
    _formats(p)
    p = fsub.add_parser("deg", help="degeneration fan of a toric map")
    p.add_argument("--toric", action="store_true", required=True)
    p.add_argument("file", help="fan JSON of the target")
    p.add_argument("--pi", default="identity", help='lattice map rows "a,b;c,d" (default identity)')
    _formats(p)

    k = sub.add_parser("kempf", help="optimal destabilizers")
    ksub = k.add_subparsers(dest="action", required=True)
    p = ksub.add_parser("solve", help="maximize mu = l / sqrt(b) over a fan")
    p.add_argument("--fan", required=True, help="fan JSON")
    p.add_argument("--l", required=True, help='linear form "1,2" or class JSON file')
    p.add_argument("--b", default="identity", help='"identity", rows "2,1;1,2" or class JSON file')
    _formats(p)

    p = sub.add_parser("stratify", help="stratification of a torus model")
    p.add_argument("--model", required=True, help="model JSON (may carry 'l' and 'b')")
    p.add_argument("--l", default=None, help="overrides the model's l")
    p.add_argument("--b", default=None, help="overrides the model's b")
    _formats(p)

    hn = sub.add_parser("hn", help="Harder-Narasimhan filtrations")
    hsub = hn.add_subparsers(dest="action", required=True)
    p = hsub.add_parser("run", help="HN filtration of a lattice")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lattice", help="lattice JSON")
    g.add_argument("--random", action="store_true", help="a random lattice from --seed")
    p.add_argument("--brute", action="store_true", help="also run the brute-force maximizer")
    _formats(p)
    p = hsub.add_parser("polygon", help="HN polygon of pieces")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pieces", help='"r,d;r,d;..."')
    g.add_argument("--rdw", help="RDW CSV file (rows r,d,w)")
    _formats(p)

    p = sub.add_parser("building", help="spherical building of SL_n(F_q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _formats(p, "off")

    p = sub.add_parser("futaki", help="Futaki invariant from weight data")
    p.add_argument("--samples", required=True, help="CSV rows n,dim,wsum,wsqsum")
    p.add_argument("--r", type=int, default=1, help="dimension of the fiber (default 1)")
    p.add_argument("--twist", default=None, help="apply a twist by m before reporting")
    _formats(p)
    return ap


def _fmt(args, allowed=("text",)):
    chosen = [f for f in ("json", "dot", "csv", "off") if getattr(args, f, False)]
    if len(chosen) > 1:
        raise UnsupportedFormat("choose at most one output format")
    f = chosen[0] if chosen else "text"
    if f not in allowed:
        raise UnsupportedFormat(f"--{f} is not available for this command "
                                f"(available: {', '.join(a for a in allowed if a != 'text') or 'none'})")
    return f


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# -- verbs ---------------------------------------------------------------


def cmd_fan_check(args, out):
    f = _fmt(args, ("text", "json"))
    F = fio.fan_from_json(fio.load_json(args.file))
    viol = _cones.first_fan_violation(F.cones)
    if f == "json":
        out.write(fio.dumps({"classical": viol is None,
                             "violation": None if viol is None else list(viol)}))
    elif viol is None:
        out.write(f"classical fan: yes ({len(F.cones)} cones)\n")
    else:
        out.write(f"classical fan: no; cones {viol[0]} and {viol[1]} "
                  "meet outside a common face\n")


def cmd_fan_deg(args, out):
    f = _fmt(args, ("text", "json"))
    F = fio.fan_from_json(fio.load_json(args.file))
    pi = fio.parse_matrix(args.pi, F.ambient_dim)
    D = toric_degeneration_fan(F, pi)
    if f == "json":
        out.write(fio.dumps(fio.fan_to_json(D)))
        return
    out.write(f"degeneration fan in dimension {D.ambient_dim}, {len(D.pieces)} pieces, "
              f"classical: {'yes' if D.classical_fan_certified else 'no'}\n")
    for i, K in enumerate(D.pieces):
        out.write(f"  {i}: " + " ".join(_vec(g) for g in K.generators) + "\n")


def _class_arg(text, n, degree):
    if text.endswith(".json"):
        return fio.class_from_json(fio.load_json(text))
    if degree == 1:
        return PLClass.linear(fio.parse_vector(text))
    return PQClass.quadratic(fio.parse_matrix(text, n))


def cmd_kempf_solve(args, out):
    f = _fmt(args, ("text", "json"))
    F = fio.fan_from_json(fio.load_json(args.fan))
    n = F.ambient_dim
    inv = NumericalInvariant(_class_arg(args.l, n, 1), _class_arg(args.b, n, 2))
    res = maximize_on_fan(inv, F)
    if f == "json":
        out.write(fio.dumps(fio.destab_to_json(res)))
    else:
        out.write(res.summary() + "\n")


def cmd_stratify(args, out):
    f = _fmt(args, ("text", "json", "dot", "csv"))
    obj = fio.load_json(args.model)
    D = fio.model_from_json(obj)
    spec = {k: obj[k] for k in ("l", "b") if k in obj}
    if args.l is not None:
        spec["l"] = [str(x) for x in fio.parse_vector(args.l)]
    if args.b is not None:
        spec["b"] = "identity" if args.b == "identity" else [
            [str(x) for x in r] for r in fio.parse_matrix(args.b, D.k)]
    if "l" not in spec:
        raise SchemaError("stratify: give 'l' in the model file or with --l")
    inv = fio.invariant_from_json(spec, D.k)
    strat = build_stratification(D, inv)
    closed, wit = check_closedness(D, strat)
    uniq, _ = check_uniqueness(D, strat)
    if f == "json":
        out.write(fio.dumps(fio.stratification_to_json(strat, closed, wit, uniq)))
    elif f == "dot":
        out.write(hasse_to_dot(export_hasse(strat, D)))
    elif f == "csv":
        out.write(fio.strata_csv(strat))
    else:
        for i, st in enumerate(strat.strata):
            mem = " ".join(fmt_support(S) for S in st.members)
            out.write(f"stratum {i}: mu = {st.mu}, ray {_vec(st.ray)}, "
                      f"limit {fmt_support(st.limit_support)}: {mem}\n")
        out.write("semistable: " + " ".join(fmt_support(S) for S in strat.semistable) + "\n")
        line = "closed: yes" if closed else \
            f"closed: no, witness ({fmt_support(wit[0])}, {fmt_support(wit[1])})"
        out.write(line + f"\nuniqueness: {uniq}\n")


def _lattice(args):
    size = args.max_size or 20
    if args.random:
        return random_lattice(random.Random(args.seed), max_size=min(size, 12))
    obj = fio.load_json(args.lattice)
    for key in ("elements", "leq"):
        if key not in obj:
            raise SchemaError(f"lattice: missing key {key!r}")
    return SubobjectLattice(obj["elements"], [tuple(p) for p in obj["leq"]],
                            {k: tuple(v) for k, v in obj.get("Z", {}).items()},
                            bottom=obj.get("bottom", "0"), top=obj.get("top", "E"),
                            max_size=size)


def _lattice_dot(L, chain) -> str:
    on = set(chain)
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for a in L.elements:
        re, im = L.Z[a]
        style = ", style=bold" if a in on else ""
        lines.append(f'  "{a}" [label="{a}\\nZ={re}+{im}i"{style}];')
    for a in L.elements:
        for b in L.elements:
            if L.lt(a, b) and not any(L.lt(a, c) and L.lt(c, b) for c in L.elements):
                lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_hn_run(args, out):
    f = _fmt(args, ("text", "json", "dot"))
    L = _lattice(args)
    res = hn_filtration(L)
    ok, wit = check_containment(L, res)
    brute = brute_force_max(L) if args.brute else None
    if f == "json":
        obj = fio.hn_to_json(res)
        obj["containment"] = ok
        if wit is not None:
            obj["containment_witness"] = wit
        if args.random:
            obj["lattice"] = lattice_to_json(L)
        if brute is not None:
            obj["brute_force"] = fio.hn_to_json(brute)
            obj["agree"] = brute.chain == res.chain and brute.value == res.value
        out.write(fio.dumps(obj))
    elif f == "dot":
        out.write(_lattice_dot(L, res.chain))
    else:
        out.write(res.summary() + "\n")
        out.write("pieces (r,d) from the top: " + " ".join(_vec(p) for p in res.pieces) + "\n")
        out.write(f"containment: {'yes' if ok else 'no, ' + str(wit)}\n")
        if brute is not None:
            agree = brute.chain == res.chain and brute.value == res.value
            out.write(f"brute force: {brute.summary()} ({'agrees' if agree else 'DISAGREES'})\n")


def cmd_hn_polygon(args, out):
    f = _fmt(args, ("text", "json", "csv"))
    if args.pieces:
        pieces, weights = fio.parse_pieces(args.pieces), None
    else:
        rows = fio.read_rdw_csv(args.rdw)
        pieces, weights = [(r, d) for r, d, _ in rows], rows
    P = pol(pieces)
    if f == "json":
        obj = {"breakpoints": [[fio.q(x), fio.q(y)] for x, y in P.breakpoints()],
               "R": fio.q(P.R), "D": fio.q(P.D)}
        if weights is not None:
            obj["mu"] = fio.mu_to_json(mu_rdw(weights))
        out.write(fio.dumps(obj))
        return
    out.write(P.to_csv())
    if f == "text" and weights is not None:
        _, best, _ = pava_max(pieces)
        out.write(f"# mu of the given weights: {mu_rdw(weights)}; best over weights: {best}\n")


def cmd_building(args, out):
    f = _fmt(args, ("text", "json", "dot", "off"))
    kw = {} if args.max_size is None else {"max_points": args.max_size}
    C = building_complex(args.n, args.q, **kw)
    st = building_stats(C)
    if f == "json":
        out.write(fio.dumps(st))
    elif f == "dot":
        out.write(to_dot(C))
    elif f == "off":
        out.write(to_off(C))
    else:
        out.write("f-vector: " + ", ".join(str(x) for x in st["f_vector"]) + "\n")
        out.write(f"Euler characteristic: {st['euler_characteristic']}\n")
        out.write(f"pure of dimension {st['dimension']}: {'yes' if st['pure'] else 'no'}\n")
        out.write(f"chambers: {st['chambers']} (flag count {st['flag_formula']})\n")
        if st["chambers_match_independent"] is not None:
            out.write("chambers match independent flag enumeration: "
                      f"{'yes' if st['chambers_match_independent'] else 'no'}\n")
        if st["thickness_q_plus_1"] is not None:
            out.write(f"thickness q+1: {'yes' if st['thickness_q_plus_1'] else 'no'}\n")


def cmd_futaki(args, out):
    f = _fmt(args, ("text", "json"))
    c = futaki_fit(fio.read_futaki_csv(args.samples), args.r)
    if args.twist is not None:
        c = twist(c, fio.parse_q(args.twist, "--twist"))
    l, b = futaki_classes(c)
    nf = normalized_futaki_exact(c)
    names = ("a0", "a1", "d0", "d1", "q0", "q1")
    if f == "json":
        obj = {k: fio.q(v) for k, v in zip(names, c.astuple())}
        obj.update({"r": c.r, "l": fio.q(l), "b": fio.q(b), "normalized": fio.mu_to_json(nf)})
        out.write(fio.dumps(obj))
        return
    out.write("coefficients: " + ", ".join(f"{k}={v}" for k, v in zip(names, c.astuple())) + "\n")
    out.write(f"l = {l}, b = {b}\n")
    out.write(f"normalized invariant: {nf}\n")


DISPATCH = {
    ("fan", "check"): cmd_fan_check,
    ("fan", "deg"): cmd_fan_deg,
    ("kempf", "solve"): cmd_kempf_solve,
    ("stratify", None): cmd_stratify,
    ("hn", "run"): cmd_hn_run,
    ("hn", "polygon"): cmd_hn_polygon,
    ("building", None): cmd_building,
    ("futaki", None): cmd_futaki,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    old = _cones.MAX_DIM
    _cones.MAX_DIM = args.max_dim
    try:
        DISPATCH[(args.verb, getattr(args, "action", None))](args, out)
    except ResourceBoundError as e:
        err.write(f"error: resource bound: {e}\n")
        return 3
    except InstabilityError as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    except (OSError, ValueError, KeyError, TypeError) as e:
        err.write(f"error: {type(e).__name__}: {e}\n")
        return 2
    finally:
        _cones.MAX_DIM = old
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
