"""JSON and CSV formats shared by the command line tool.

Rationals are written as strings ``"p/q"`` (or ``"p"``); readers accept
ints and such strings but reject floats, which would lose exactness.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .cones import Fan, RationalCone, cone
from .errors import SchemaError
from .formalfan import DegenerationModel, FormalFan
from .invariants import MuValue, NumericalInvariant, PLClass, PQClass


def q(x) -> str:
    return str(Fraction(x))


def parse_q(x, where="value") -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(f"{where}: expected an int or a 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(f"{where}: cannot read {x!r} as a rational") from None


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    return obj[key]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: not valid JSON ({e})") from None


# -- vectors and matrices given on the command line ----------------------


def parse_vector(text: str) -> list:
    """``"1,2,-1/2"`` -> list of Fractions."""
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"cannot read vector {text!r}") from None


def parse_matrix(text: str, n=None) -> list:
    """``"identity"`` or rows separated by ``;``: ``"2,1;1,2"``."""
    if text.strip() == "identity":
        if n is None:
            raise SchemaError("'identity' needs a known dimension")
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows = [parse_vector(r) for r in text.split(";")]
    if n is not None and (len(rows) != n or any(len(r) != n for r in rows)):
        raise SchemaError(f"matrix must be {n} by {n}")
    return rows


# -- cones and fans -------------------------------------------------------


def cone_to_json(C: RationalCone) -> dict:
    return {"dim": C.ambient_dim, "generators": [list(map(int, g)) for g in C.generators]}


def cone_from_json(obj, dim=None) -> RationalCone:
    gens = _need(obj, "generators", "cone")
    n = obj.get("dim", dim)
    if not isinstance(gens, list) or any(not isinstance(g, list) for g in gens):
        raise SchemaError("cone: 'generators' must be a list of integer lists")
    for g in gens:
        if any(isinstance(x, (float, bool)) or not isinstance(x, int) for x in g):
            raise SchemaError(f"cone: generator {g} must have integer entries")
    if not gens:
        from .cones import zero_cone

        if n is None:
            raise SchemaError("cone: an empty cone needs 'dim'")
        return zero_cone(n)
    if n is not None and any(len(g) != n for g in gens):
        raise SchemaError(f"cone: generators must have length {n}")
    return cone(*gens)


def fan_to_json(F) -> dict:
    cones = F.cones if isinstance(F, Fan) else F.pieces
    out = {"dim": F.ambient_dim, "cones": [cone_to_json(C) for C in cones]}
    if isinstance(F, FormalFan):
        out["classical"] = bool(F.classical_fan_certified)
    return out


def fan_from_json(obj) -> Fan:
    n = _need(obj, "dim", "fan")
    cones = _need(obj, "cones", "fan")
    return Fan(n, [cone_from_json(c, n) for c in cones])


def formalfan_from_json(obj) -> FormalFan:
    n = _need(obj, "dim", "fan")
    pieces = [cone_from_json(c, n) for c in _need(obj, "cones", "fan")]
    return FormalFan(n, pieces, bool(obj.get("classical", False)))


# -- degeneration models and invariants ----------------------------------


def model_to_json(D: DegenerationModel) -> dict:
    ex = sorted((sorted(S) for S in D.excluded), key=lambda s: (len(s), s))
    return {"weights": [list(r) for r in D.weights],
            "excluded_supports": ex if ex else "none"}


def model_from_json(obj) -> DegenerationModel:
    w = _need(obj, "weights", "model")
    ex = obj.get("excluded_supports", "none")
    if ex == "none":
        excluded = []
    elif ex == "punctured":
        excluded = [[]]
    elif isinstance(ex, list):
        excluded = ex
    else:
        raise SchemaError("model: 'excluded_supports' must be a list, 'none' or 'punctured'")
    n = len(w)
    for S in excluded:
        if any(not isinstance(i, int) or not 1 <= i <= n for i in S):
            raise SchemaError(f"model: support {S} must use indices 1..{n}")
    return DegenerationModel(w, frozenset(frozenset(S) for S in excluded))


def class_from_json(obj):
    """``{"fan": fan, "linear": [...]}`` or ``{"fan": fan, "quadratic": [...]}``."""
    F = fan_from_json(_need(obj, "fan", "class"))
    if "linear" in obj:
        return PLClass(F, [[parse_q(x, "linear") for x in row] for row in obj["linear"]])
    if "quadratic" in obj:
        return PQClass(F, [[[parse_q(x, "quadratic") for x in r] for r in M]
                           for M in obj["quadratic"]])
    raise SchemaError("class: need 'linear' or 'quadratic'")


def class_to_json(c) -> dict:
    out = {"fan": fan_to_json(c.fan)}
    if isinstance(c, PLClass):
        out["linear"] = [[q(x) for x in d] for d in c.per_cone]
    else:
        out["quadratic"] = [[[q(x) for x in r] for r in d] for d in c.per_cone]
    return out


def invariant_from_json(obj, n: int) -> NumericalInvariant:
    """``{"l": [..] | class, "b": "identity" | [[..]] | class}``."""
    l = _need(obj, "l", "invariant")
    b = obj.get("b", "identity")
    if isinstance(l, dict):
        lc = class_from_json(l)
    else:
        lc = PLClass.linear([parse_q(x, "l") for x in l])
    if isinstance(b, dict):
        bc = class_from_json(b)
    elif b == "identity":
        bc = PQClass.quadratic(parse_matrix("identity", n))
    else:
        bc = PQClass.quadratic([[parse_q(x, "b") for x in r] for r in b])
    return NumericalInvariant(lc, bc)


# -- results ------------------------------------------------------------


def mu_to_json(m: MuValue) -> dict:
    if m.B == 0:
        # JSON has no infinities; the display value is a string then
        return {"L": q(m.L), "B": q(m.B), "float": str(m)}
    return {"L": q(m.L), "B": q(m.B), "float": m.float_view}


def mu_from_json(obj) -> MuValue:
    return MuValue(parse_q(_need(obj, "L", "mu")), parse_q(_need(obj, "B", "mu")))


def destab_to_json(r) -> dict:
    return {
        "status": r.status,
        "mu": None if r.value is None else mu_to_json(r.value),
        "rays": [list(map(int, x)) for x in r.argmax_rays],
        "unique": r.unique,
    }


def stratification_to_json(strat, closed: bool, witness, uniqueness: str) -> dict:
    out = {
        "strata": [{"mu": mu_to_json(st.mu), "ray": list(map(int, st.ray)),
                    "limit": sorted(st.limit_support),
                    "members": [sorted(S) for S in st.members]} for st in strat.strata],
        "semistable": [sorted(S) for S in strat.semistable],
        "closed": closed,
        "uniqueness": uniqueness,
    }
    if witness is not None:
        out["witness"] = [sorted(witness[0]), sorted(witness[1])]
    return out


def strata_csv(strat) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["stratum", "L", "B", "mu_squared", "ray", "limit", "members"])
    for i, st in enumerate(strat.strata):
        wr.writerow([i, q(st.mu.L), q(st.mu.B), q(st.mu.squared()),
                     " ".join(map(str, st.ray)), " ".join(map(str, sorted(st.limit_support))),
                     " ".join("{" + ",".join(map(str, sorted(S))) + "}" for S in st.members)])
    return buf.getvalue()


def hn_to_json(res) -> dict:
    return {
        "chain": list(res.chain),
        "pieces": [[q(r), q(d)] for r, d in res.pieces],
        "weights": [None if w is None else q(w) for w in res.weights],
        "mu": mu_to_json(res.value),
        "status": res.status,
        "unique": res.unique,
    }


# -- CSV inputs ---------------------------------------------------------


def _read_rows(path, ncols, header):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if rows and [c.strip() for c in rows[0]] == header:
        rows = rows[1:]
    out = []
    for k, r in enumerate(rows, start=1):
        if len(r) != ncols:
            raise SchemaError(f"{path} row {k}: expected {ncols} columns {','.join(header)}")
        out.append([parse_q(c.strip(), f"{path} row {k}") for c in r])
    return out


def read_futaki_csv(path) -> list:
    return _read_rows(path, 4, ["n", "dim", "wsum", "wsqsum"])


def read_rdw_csv(path) -> list:
    return _read_rows(path, 3, ["r", "d", "w"])


def parse_pieces(text: str) -> list:
    """``"1,0;1,2"`` -> [(r, d), ...]."""
    out = []
    for part in text.split(";"):
        v = parse_vector(part)
        if len(v) != 2:
            raise SchemaError(f"piece {part!r} must be 'r,d'")
        out.append(tuple(v))
    return out
