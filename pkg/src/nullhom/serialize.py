"""JSON encoding of maps, matrices, arrow objects, squares, graphs and reports.

Finite-set maps are ``{"dom", "cod", "tab"}``, matrices ``{"p", "rows", "cols", "e"}``
(``e`` is the list of rows), arrow objects ``{"top", "bottom", "a"}``.  Direct sums
are ordered with the ``A0`` summand first.
"""

from __future__ import annotations

import json
from typing import Any

from .arrowcat import ArrMorphism, ArrObject
from .dold_kan import DKIso, NormalizedArrow, RGMorphism, RGObject
from .fincat import FinSetMap
from .matfp import MatFp
from .nullhomotopy import CokernelTriple, NullhomotopyToken
from .report import Report


def encode(x: Any) -> Any:
    """A JSON-ready value; unknown objects fall back to their ``repr``."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return round(x, 6)
    if isinstance(x, FinSetMap):
        return {"dom": x.dom_size, "cod": x.cod_size, "tab": list(x.table)}
    if isinstance(x, MatFp):
        return {"p": x.p, "rows": x.rows, "cols": x.cols, "e": [list(r) for r in x.entries]}
    if isinstance(x, ArrObject):
        return {"top": x.top, "bottom": x.bottom, "a": encode(x.a)}
    if isinstance(x, ArrMorphism):
        return {"source": encode(x.source), "target": encode(x.target), "f": encode(x.f),
                "f0": encode(x.f0)}
    if isinstance(x, NullhomotopyToken):
        return {"tag": x.tag, "payload": encode(x.payload)}
    if isinstance(x, RGObject):
        return {"A1": x.A1_dim, "A0": x.A0_dim, "d": encode(x.d), "c": encode(x.c),
                "i": encode(x.i)}
    if isinstance(x, RGMorphism):
        return {"source": encode(x.source), "target": encode(x.target), "f1": encode(x.f1),
                "f0": encode(x.f0)}
    if isinstance(x, CokernelTriple):
        return {"obj": encode(x.obj), "c": encode(x.c), "gamma": encode(x.gamma)}
    if isinstance(x, NormalizedArrow):
        return {"ker_basis": encode(x.ker_basis), "arrow": encode(x.arrow), "obj": encode(x.obj)}
    if isinstance(x, DKIso):
        return {"delta": encode(x.delta), "forward": encode(x.forward),
                "backward": encode(x.backward), "renormalized": encode(x.renormalized)}
    if isinstance(x, Report):
        return report_dict(x)
    if isinstance(x, dict):
        return {str(k): encode(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [encode(v) for v in x]
    return repr(x)


def report_dict(r: Report, wall_time: float | None = None) -> dict:
    out = {
        "name": r.name,
        "status": r.status,
        "cases": r.cases,
        "params": encode(r.params),
        "witness": encode(r.witness),
        "details": encode(r.details),
    }
    if wall_time is not None:
        out["wall_time"] = round(wall_time, 3)
    return out


def dumps(value: Any) -> str:
    return json.dumps(value, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# decoding, for the shapes above


def decode_map(d: dict) -> FinSetMap:
    return FinSetMap(d["dom"], d["cod"], tuple(d["tab"]))


def decode_matrix(d: dict) -> MatFp:
    return MatFp(d["p"], d["rows"], d["cols"], tuple(tuple(r) for r in d["e"]))


def decode_morphism(d: dict):
    return decode_matrix(d) if "e" in d else decode_map(d)


def decode_arr_object(d: dict) -> ArrObject:
    return ArrObject(d["top"], d["bottom"], decode_morphism(d["a"]))


def decode_square(d: dict) -> ArrMorphism:
    return ArrMorphism(decode_arr_object(d["source"]), decode_arr_object(d["target"]),
                       decode_morphism(d["f"]), decode_morphism(d["f0"]))


def decode_graph(d: dict) -> RGObject:
    return RGObject(d["A1"], d["A0"], decode_matrix(d["d"]), decode_matrix(d["c"]),
                    decode_matrix(d["i"]))
