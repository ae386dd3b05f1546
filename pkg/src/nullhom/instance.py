"""Instance files: named maps, arrow objects, squares, spans, diagonals and graphs.

A file picks a base (``"finset"`` or ``{"mat": {"prime": p}}``) and then names
things.  Wherever a map/matrix or an object is expected, either an inline value
or the name of an earlier-declared one may be given.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import jsonschema

from .arrowcat import ArrMorphism, ArrObject, ArrowCategory
from .dold_kan import RGObject
from .fincat import FinSet, FinSetMap
from .matfp import Mat, MatFp
from .nullhomotopy import DIAGONAL, Token


class InstanceError(ValueError):
    """A file that does not parse, validate, or resolve; ``path`` locates the problem."""

    def __init__(self, message: str, path: str = ""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


_BASE = {
    "oneOf": [
        {"const": "finset"},
        {
            "type": "object",
            "additionalProperties": False,
            "required": ["mat"],
            "properties": {
                "mat": {
                    "type": "object",
                    "additionalProperties": False,
                    "required": ["prime"],
                    "properties": {"prime": {"type": "integer", "minimum": 2}},
                }
            },
        },
    ]
}


def _named(item: dict) -> dict:
    return {"type": "object", "additionalProperties": item}


def _schema(prime: int | None) -> dict:
    nat = {"type": "integer", "minimum": 0}
    if prime is None:
        morphism = {
            "type": "object",
            "additionalProperties": False,
            "required": ["dom", "cod", "tab"],
            "properties": {"dom": nat, "cod": nat, "tab": {"type": "array", "items": nat}},
        }
    else:
        entry = {"type": "integer", "minimum": 0, "maximum": prime - 1}
        morphism = {
            "type": "object",
            "additionalProperties": False,
            "required": ["p", "rows", "cols", "e"],
            "properties": {
                "p": {"const": prime},
                "rows": nat,
                "cols": nat,
                "e": {"type": "array", "items": {"type": "array", "items": entry}},
            },
        }
    ref = {"type": "string"}
    mor = {"oneOf": [ref, morphism]}
    arr_object = {
        "type": "object",
        "additionalProperties": False,
        "required": ["top", "bottom", "a"],
        "properties": {"top": nat, "bottom": nat, "a": mor},
    }
    graph = {
        "type": "object",
        "additionalProperties": False,
        "required": ["A1", "A0", "d", "c", "i"],
        "properties": {"A1": nat, "A0": nat, "d": mor, "c": mor, "i": mor},
    }
    obj = {"oneOf": [ref, arr_object]}
    square = {
        "type": "object",
        "additionalProperties": False,
        "required": ["source", "target", "f", "f0"],
        "properties": {"source": obj, "target": obj, "f": mor, "f0": mor},
    }
    return {
        "type": "object",
        "additionalProperties": False,
        "required": ["base"],
        "properties": {
            "base": _BASE,
            "morphisms": _named(morphism),
            "objects": _named(arr_object),
            "graphs": _named(graph),
            "squares": _named(square),
            "spans": _named({
                "type": "object", "additionalProperties": False, "required": ["left", "right"],
                "properties": {"left": ref, "right": ref},
            }),
            "nullhomotopies": _named({
                "type": "object", "additionalProperties": False, "required": ["on", "payload"],
                "properties": {"on": ref, "payload": mor},
            }),
        },
    }


@dataclass
class Instance:
    base: Any
    morphisms: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    graphs: dict = field(default_factory=dict)
    squares: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)
    nullhomotopies: dict = field(default_factory=dict)

    @property
    def category(self) -> ArrowCategory:
        return ArrowCategory(self.base)

    @property
    def prime(self) -> int | None:
        return getattr(self.base, "p", None)

    def lookup(self, name: str):
        """The named thing, searched in squares, objects, graphs, nullhomotopies, spans, maps."""
        for table in (self.squares, self.objects, self.graphs, self.nullhomotopies, self.spans,
                      self.morphisms):
            if name in table:
                return table[name]
        raise InstanceError(f"no entry named {name!r}", "--name")


def parse_instance(data: bytes | str) -> Instance:
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise InstanceError(f"malformed JSON: {e}") from e
    if not isinstance(raw, dict) or "base" not in raw:
        raise InstanceError("top level must be an object with a 'base'")
    base_raw = raw["base"]
    try:
        jsonschema.validate(base_raw, _BASE)
    except jsonschema.ValidationError as e:
        raise InstanceError(f"schema violation: {e.message}", "base") from e
    prime = None if base_raw == "finset" else base_raw["mat"]["prime"]
    try:
        jsonschema.validate(raw, _schema(prime))
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise InstanceError(f"schema violation: {e.message}", path) from e
    try:
        base = FinSet() if prime is None else Mat(prime)
    except ValueError as e:
        raise InstanceError(str(e), "base/mat/prime") from e
    inst = Instance(base)
    _Resolver(inst).run(raw)
    return inst


class _Resolver:
    def __init__(self, inst: Instance):
        self.inst = inst

    def run(self, raw: dict):
        i = self.inst
        for name, v in raw.get("morphisms", {}).items():
            i.morphisms[name] = self._build(f"morphisms/{name}", self._morphism_value, v)
        for name, v in raw.get("objects", {}).items():
            i.objects[name] = self._build(f"objects/{name}", self._object_value, v)
        for name, v in raw.get("graphs", {}).items():
            i.graphs[name] = self._build(f"graphs/{name}", self._graph_value, v)
        for name, v in raw.get("squares", {}).items():
            i.squares[name] = self._build(f"squares/{name}", self._square_value, v)
        for name, v in raw.get("spans", {}).items():
            i.spans[name] = self._build(f"spans/{name}", self._span_value, v)
        for name, v in raw.get("nullhomotopies", {}).items():
            i.nullhomotopies[name] = self._build(f"nullhomotopies/{name}", self._token_value, v)

    def _build(self, path, fn, v):
        try:
            return fn(v, path)
        except InstanceError:
            raise
        except ValueError as e:
            raise InstanceError(f"invalid value: {e}", path) from e

    def _ref(self, table: dict, name: str, path: str, kind: str):
        if name not in table:
            raise InstanceError(f"dangling reference to {kind} {name!r}", path)
        return table[name]

    def _morphism_value(self, v, path):
        if isinstance(v, str):
            return self._ref(self.inst.morphisms, v, path, "morphism")
        if "tab" in v:
            return FinSetMap(v["dom"], v["cod"], tuple(v["tab"]))
        return MatFp(v["p"], v["rows"], v["cols"], tuple(tuple(r) for r in v["e"]))

    def _object_value(self, v, path):
        if isinstance(v, str):
            return self._ref(self.inst.objects, v, path, "object")
        return ArrObject(v["top"], v["bottom"], self._morphism_value(v["a"], f"{path}/a"))

    def _graph_value(self, v, path):
        if self.inst.prime is None:
            raise InstanceError("reflexive graphs need a matrix base", path)
        m = {k: self._morphism_value(v[k], f"{path}/{k}") for k in ("d", "c", "i")}
        return RGObject(v["A1"], v["A0"], m["d"], m["c"], m["i"])

    def _square_value(self, v, path):
        src = self._object_value(v["source"], f"{path}/source")
        tgt = self._object_value(v["target"], f"{path}/target")
        f = self._morphism_value(v["f"], f"{path}/f")
        f0 = self._morphism_value(v["f0"], f"{path}/f0")
        try:
            return ArrMorphism(src, tgt, f, f0)
        except ValueError as e:
            raise InstanceError(f"square {path.split('/')[-1]!r} is invalid: {e}", path) from e

    def _span_value(self, v, path):
        left = self._ref(self.inst.squares, v["left"], f"{path}/left", "square")
        right = self._ref(self.inst.squares, v["right"], f"{path}/right", "square")
        if left.source != right.source:
            raise InstanceError("span legs start at different objects", path)
        return left, right

    def _token_value(self, v, path):
        sq = self._ref(self.inst.squares, v["on"], f"{path}/on", "square")
        tok = Token(DIAGONAL, self._morphism_value(v["payload"], f"{path}/payload"))
        if not self.inst.category.is_null(sq, tok):
            raise InstanceError(f"payload is not a diagonal of square {v['on']!r}", path)
        return sq, tok
