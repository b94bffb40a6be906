"""Structure files.

A structure file is a JSON document with a top-level ``format_version`` and a
``kind``.  The canonical text form has sorted keys, two-space indentation,
integer vectors on one line and every table row on its own line, and ends
with a newline.  See ``docs/format.md`` for the grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .actions import ActionSet
from .cat1 import Cat1Group, Cat1Morphism
from .core import GroupWithOps, Morphism, OpSignature, elements_of
from .errors import StructureError
from .groupoid import GpdMorphism, InternalGroupoid
from .xmod import CrossedModule, XModMorphism

FORMAT_VERSION = 1
KINDS = ("gwo", "morphism", "action", "xmod", "gpd", "cat1", "subobject")


@dataclass(frozen=True, eq=False)
class Subobject:
    """A named subset (or pair of subsets) of a structure.

    ``parts`` holds ``elements`` for groups with operations and cat¹-groups,
    ``S``/``T`` for crossed modules and ``N1``/``N0`` for groupoids.
    """

    parent: Any
    parts: dict

    def __post_init__(self):
        object.__setattr__(self, "parts", {k: elements_of(v) for k, v in sorted(self.parts.items())})


# --------------------------------------------------------------------------
# to plain data
# --------------------------------------------------------------------------


def _signature_doc(sig: OpSignature) -> dict:
    return {
        "binary": list(sig.binary_symbols),
        "unary": list(sig.unary_symbols),
        "pairing": [list(p) for p in sig.pairing],
    }


def _ints(a) -> list:
    return np.asarray(a).tolist()


def _gwo_doc(G: GroupWithOps) -> dict:
    doc = {
        "kind": "gwo",
        "signature": _signature_doc(G.signature),
        "order": G.order,
        "zero": G.zero,
        "add": _ints(G.add_table),
        "neg": _ints(G.neg_table),
        "binary": {s: _ints(T) for s, T in G.binary_tables.items()},
        "unary": {w: _ints(W) for w, W in G.unary_tables.items()},
    }
    if G.name:
        doc["name"] = G.name
    if G.labels is not None:
        doc["representatives"] = list(G.labels)
    return doc


def to_doc(obj) -> dict:
    if isinstance(obj, GroupWithOps):
        return _gwo_doc(obj)
    if isinstance(obj, ActionSet):
        return {
            "kind": "action",
            "actor": _gwo_doc(obj.actor),
            "acted": _gwo_doc(obj.acted),
            "dot": _ints(obj.dot),
            "star": {s: _ints(T) for s, T in obj.star.items()},
        }
    if isinstance(obj, CrossedModule):
        doc = {
            "kind": "xmod",
            "A": _gwo_doc(obj.A),
            "B": _gwo_doc(obj.B),
            "dot": _ints(obj.acts.dot),
            "star": {s: _ints(T) for s, T in obj.acts.star.items()},
            "boundary": _ints(obj.boundary.map),
        }
        return _named(doc, obj.name)
    if isinstance(obj, InternalGroupoid):
        doc = {
            "kind": "gpd",
            "objects": _gwo_doc(obj.objects),
            "arrows": _gwo_doc(obj.arrows),
            "d0": _ints(obj.d0.map),
            "d1": _ints(obj.d1.map),
            "eps": _ints(obj.eps.map),
        }
        return _named(doc, obj.name)
    if isinstance(obj, Cat1Group):
        doc = {"kind": "cat1", "G": _gwo_doc(obj.G), "s": _ints(obj.s.map), "t": _ints(obj.t.map)}
        return _named(doc, obj.name)
    if isinstance(obj, Morphism):
        return _morphism_doc("gwo", obj.dom, obj.cod, {"map": obj.map})
    if isinstance(obj, XModMorphism):
        return _morphism_doc("xmod", obj.dom, obj.cod, {"f": obj.f.map, "g": obj.g.map})
    if isinstance(obj, GpdMorphism):
        return _morphism_doc("gpd", obj.dom, obj.cod, {"arrows": obj.arrows.map, "objects": obj.objects.map})
    if isinstance(obj, Cat1Morphism):
        return _morphism_doc("cat1", obj.dom, obj.cod, {"f": obj.f.map})
    if isinstance(obj, Subobject):
        return {"kind": "subobject", "parent": to_doc(obj.parent), "parts": {k: list(v) for k, v in obj.parts.items()}}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _named(doc, name):
    if name:
        doc["name"] = name
    return doc


def _morphism_doc(category, dom, cod, maps) -> dict:
    return {
        "kind": "morphism",
        "category": category,
        "dom": to_doc(dom),
        "cod": to_doc(cod),
        "maps": {k: _ints(v) for k, v in maps.items()},
    }


# --------------------------------------------------------------------------
# canonical text
# --------------------------------------------------------------------------


def _is_flat(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (list, dict)) for v in value)


def _emit(value, indent: int) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_emit(value[k], indent + 1)}" for k in sorted(value)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list):
        if _is_flat(value):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in value) + "]"
        items = [inner + _emit(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, ensure_ascii=False)


def canonical_text(doc) -> str:
    """Canonical JSON text for any plain document (sorted keys, compact rows)."""
    return _emit(doc, 0) + "\n"


def serialize(obj) -> bytes:
    doc = dict(to_doc(obj))
    doc["format_version"] = FORMAT_VERSION
    return canonical_text(doc).encode("utf-8")


def dumps(obj) -> str:
    return serialize(obj).decode("utf-8")


# --------------------------------------------------------------------------
# parsing
# --------------------------------------------------------------------------


def _get(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise StructureError(f"{where}: expected an object")
    if key not in doc:
        raise StructureError(f"{where}: missing key {key!r}")
    return doc[key]


def _map(doc, key, where, dom_order, cod_order) -> np.ndarray:
    data = _get(doc, key, where)
    try:
        arr = np.array(data, dtype=np.int64)
    except (TypeError, ValueError):
        raise StructureError(f"{where}.{key}: expected a list of integers") from None
    if arr.shape != (dom_order,):
        raise StructureError(f"{where}.{key}: expected {dom_order} entries, got shape {arr.shape}")
    bad = np.flatnonzero((arr < 0) | (arr >= cod_order))
    if len(bad):
        i = int(bad[0])
        raise StructureError(f"{where}.{key}[{i}] = {int(arr[i])} out of range 0..{cod_order - 1}", index=int(arr[i]))
    return arr


def _parse_signature(doc, where) -> OpSignature:
    try:
        return OpSignature(
            tuple(_get(doc, "binary", where)),
            tuple(_get(doc, "unary", where)),
            tuple(tuple(p) for p in _get(doc, "pairing", where)),
        )
    except TypeError:
        raise StructureError(f"{where}: malformed signature") from None


def _parse_gwo(doc, where="gwo") -> GroupWithOps:
    _expect_kind(doc, "gwo", where)
    sig = _parse_signature(_get(doc, "signature", where), where + ".signature")
    order = _get(doc, "order", where)
    if not isinstance(order, int) or isinstance(order, bool):
        raise StructureError(f"{where}.order must be an integer")
    binary = _get(doc, "binary", where)
    unary = _get(doc, "unary", where)
    if not isinstance(binary, dict) or not isinstance(unary, dict):
        raise StructureError(f"{where}: operation tables must be objects")
    try:
        return GroupWithOps(
            sig, order, _get(doc, "zero", where),
            _get(doc, "add", where), _get(doc, "neg", where),
            binary, unary,
            name=doc.get("name", ""),
            labels=doc.get("representatives"),
        )
    except StructureError as exc:
        raise StructureError(f"{where}: {exc}", index=exc.index) from None
    except TypeError as exc:
        raise StructureError(f"{where}: {exc}") from None


def _parse_action(B, A, doc, where) -> ActionSet:
    try:
        return ActionSet(B, A, _get(doc, "dot", where), _get(doc, "star", where))
    except StructureError as exc:
        raise StructureError(f"{where}: {exc}", index=exc.index) from None


def _expect_kind(doc, kind, where):
    if _get(doc, "kind", where) != kind:
        raise StructureError(f"{where}: expected kind {kind!r}, got {doc['kind']!r}")


def from_doc(doc: dict, where: str = "$"):
    kind = _get(doc, "kind", where)
    if kind == "gwo":
        return _parse_gwo(doc, where)
    if kind == "action":
        A = _parse_gwo(_get(doc, "acted", where), where + ".acted")
        B = _parse_gwo(_get(doc, "actor", where), where + ".actor")
        return _parse_action(B, A, doc, where)
    if kind == "xmod":
        A = _parse_gwo(_get(doc, "A", where), where + ".A")
        B = _parse_gwo(_get(doc, "B", where), where + ".B")
        acts = _parse_action(B, A, doc, where)
        alpha = Morphism(A, B, _map(doc, "boundary", where, A.order, B.order))
        return CrossedModule(A, B, acts, alpha, name=doc.get("name", ""))
    if kind == "gpd":
        G0 = _parse_gwo(_get(doc, "objects", where), where + ".objects")
        G1 = _parse_gwo(_get(doc, "arrows", where), where + ".arrows")
        n0, n1 = G0.order, G1.order
        return InternalGroupoid(
            G0, G1,
            Morphism(G1, G0, _map(doc, "d0", where, n1, n0)),
            Morphism(G1, G0, _map(doc, "d1", where, n1, n0)),
            Morphism(G0, G1, _map(doc, "eps", where, n0, n1)),
            name=doc.get("name", ""),
        )
    if kind == "cat1":
        G = _parse_gwo(_get(doc, "G", where), where + ".G")
        n = G.order
        return Cat1Group(
            G, Morphism(G, G, _map(doc, "s", where, n, n)), Morphism(G, G, _map(doc, "t", where, n, n)),
            name=doc.get("name", ""),
        )
    if kind == "morphism":
        return _parse_morphism(doc, where)
    if kind == "subobject":
        parent = from_doc(_get(doc, "parent", where), where + ".parent")
        parts = _get(doc, "parts", where)
        if not isinstance(parts, dict):
            raise StructureError(f"{where}.parts must be an object")
        for key, elems in parts.items():
            bound = _part_bound(parent, key, where)
            for x in elems:
                if not isinstance(x, int) or not 0 <= x < bound:
                    raise StructureError(f"{where}.parts.{key}: element {x!r} out of range", index=x)
        return Subobject(parent, parts)
    raise StructureError(f"{where}: unknown kind {kind!r}; expected one of {list(KINDS)}")


_PARTS = {
    GroupWithOps: {"elements": lambda P: P.order},
    Cat1Group: {"elements": lambda P: P.G.order},
    CrossedModule: {"S": lambda P: P.A.order, "T": lambda P: P.B.order},
    InternalGroupoid: {"N1": lambda P: P.arrows.order, "N0": lambda P: P.objects.order},
}


def _part_bound(parent, key, where) -> int:
    parts = _PARTS.get(type(parent))
    if parts is None or key not in parts:
        raise StructureError(f"{where}.parts: unexpected part {key!r}")
    return parts[key](parent)


def _parse_morphism(doc, where):
    category = _get(doc, "category", where)
    dom = from_doc(_get(doc, "dom", where), where + ".dom")
    cod = from_doc(_get(doc, "cod", where), where + ".cod")
    maps = _get(doc, "maps", where)
    w = where + ".maps"
    expected = {"gwo": GroupWithOps, "xmod": CrossedModule, "gpd": InternalGroupoid, "cat1": Cat1Group}
    if category not in expected:
        raise StructureError(f"{where}: unknown morphism category {category!r}")
    if not isinstance(dom, expected[category]) or not isinstance(cod, expected[category]):
        raise StructureError(f"{where}: dom and cod must be of kind {category!r}")
    if category == "gwo":
        return Morphism(dom, cod, _map(maps, "map", w, dom.order, cod.order))
    if category == "xmod":
        return XModMorphism(
            dom, cod,
            Morphism(dom.A, cod.A, _map(maps, "f", w, dom.A.order, cod.A.order)),
            Morphism(dom.B, cod.B, _map(maps, "g", w, dom.B.order, cod.B.order)),
        )
    if category == "gpd":
        return GpdMorphism(
            dom, cod,
            Morphism(dom.arrows, cod.arrows, _map(maps, "arrows", w, dom.arrows.order, cod.arrows.order)),
            Morphism(dom.objects, cod.objects, _map(maps, "objects", w, dom.objects.order, cod.objects.order)),
        )
    return Cat1Morphism(dom, cod, Morphism(dom.G, cod.G, _map(maps, "f", w, dom.G.order, cod.G.order)))


def parse(data: bytes | str):
    """Parse a structure file.  Structural checks only; no axioms."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise StructureError(f"not UTF-8 text: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise StructureError(f"syntax error: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise StructureError("top level must be an object", line=1, column=1)
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise StructureError(f"unsupported format_version {version!r}; expected {FORMAT_VERSION}")
    return from_doc(doc)


def read(path):
    with open(path, "rb") as fh:
        return parse(fh.read())


def write(path, obj):
    with open(path, "wb") as fh:
        fh.write(serialize(obj))
