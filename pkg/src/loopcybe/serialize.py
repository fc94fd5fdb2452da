"""JSON schemas for the package's exchange formats.

All numerics serialize as exact fraction strings "p/q" (or "p" when the
denominator is 1); payloads carry no timestamps and all lists are sorted
so identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .bd import BDQuadruple, D_INDEX
from .chevalley import ChevalleyAlgebra
from .loop import LoopElement, SigmaType, TwistedLoopAlgebra
from .scalars import frac_str, parse_frac
from .tensors import Laurent2, TwoPointTensor

Q = Fraction


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ------------------------------------------------------------ structure table


def structure_table_json(alg: ChevalleyAlgebra) -> dict:
    constants = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            br = alg.bracket_basis(i, j)
            if br:
                constants.append({"i": i, "j": j,
                                  "coeffs": {str(k): frac_str(v) for k, v in sorted(br.items())}})
    return {
        "type": str(alg.rs.cartan_type),
        "roots": [list(r) for r in alg.rs.all_roots],
        "labels": [alg.basis_label(i) for i in range(alg.dim)],
        "constants": constants,
        "killing_gram": [[frac_str(x) for x in row] for row in alg.killing_gram],
    }


# ------------------------------------------------------------------ sigma etc.


def sigma_json(sigma: SigmaType) -> dict:
    return {"type": str(sigma.cartan_type),
            "nu_perm": list(sigma.nu) if sigma.nu else None,
            "s": list(sigma.s)}


def sigma_from_json(data: dict) -> SigmaType:
    return SigmaType.make(data["type"], data["s"], data.get("nu_perm"))


def loop_element_json(f: LoopElement) -> list:
    out = []
    for (sid, k), c in sorted(f.terms.items()):
        q = Q(c)
        out.append({"k": k, "basis": sid, "num": q.numerator, "den": q.denominator})
    return out


def loop_element_from_json(L: TwistedLoopAlgebra, data: list) -> LoopElement:
    terms = {}
    for item in data:
        terms[(int(item["basis"]), int(item["k"]))] = Q(item["num"], item["den"])
    return L.element(terms)


# ------------------------------------------------------------------- tensors


def two_point_json(r: TwoPointTensor) -> dict:
    poly = [{"dx": dx, "dy": dy, "i": i, "j": j, "val": frac_str(c)}
            for (dx, dy, i, j), c in sorted(r.poly.items())]
    pole = [{"k": k, "i": i, "j": j, "val": frac_str(c)}
            for k, pk in enumerate(r.pole_num) for (i, j), c in sorted(pk.items())]
    return {"m": r.m, "poly": poly, "pole": pole}


def two_point_from_json(L: TwistedLoopAlgebra, data: dict) -> TwoPointTensor:
    if data["m"] != L.m:
        raise ValueError("tensor order %s does not match the algebra (m = %d)"
                         % (data["m"], L.m))
    poly = {(t["dx"], t["dy"], t["i"], t["j"]): parse_frac(t["val"]) for t in data["poly"]}
    pole = [dict() for _ in range(L.m)]
    for t in data["pole"]:
        pole[t["k"]][(t["i"], t["j"])] = parse_frac(t["val"])
    return TwoPointTensor(L, poly, pole)


# ----------------------------------------------------------------- quadruples


def _th_key_json(a: int):
    return "d" if a == D_INDEX else a + 1


def _th_key_parse(x) -> int:
    if x == "d":
        return D_INDEX
    return int(x) - 1


def quadruple_json(q: BDQuadruple) -> dict:
    return {
        "diagram": sigma_json(q.sigma),
        "gamma1": sorted(q.gamma1),
        "gamma2": sorted(q.gamma2),
        "gamma": {str(a): b for a, b in q.gamma},
        "t_h": [{"i": _th_key_json(a), "j": _th_key_json(b), "val": frac_str(c)}
                for (a, b), c in q.t_h],
    }


def quadruple_from_json(data: dict) -> BDQuadruple:
    sigma = sigma_from_json(data["diagram"])
    t_h = {}
    for item in data.get("t_h", []):
        t_h[(_th_key_parse(item["i"]), _th_key_parse(item["j"]))] = parse_frac(item["val"])
    gamma = {int(a): int(b) for a, b in data.get("gamma", {}).items()}
    return BDQuadruple.make(sigma, data.get("gamma1", []), data.get("gamma2", []),
                            gamma, t_h)


def validation_json(report: dict) -> dict:
    out = {"valid": report["valid"]}
    for key in ("structure", "condition1", "condition2", "condition3"):
        if key in report:
            entry = dict(report[key])
            if key == "condition1":
                entry["violations"] = [
                    {"i": v["i"], "j": v["j"], "got": frac_str(v["got"]),
                     "want": frac_str(v["want"])} for v in entry["violations"]]
            out[key] = entry
    return out


def loop_tensor_json(t: Laurent2) -> list:
    return [{"dx": dx, "dy": dy, "i": i, "j": j, "val": frac_str(c)}
            for (dx, dy, i, j), c in sorted(t.items())]


def loop_tensor_from_json(data: list) -> Laurent2:
    return {(t["dx"], t["dy"], t["i"], t["j"]): parse_frac(t["val"]) for t in data}
