"""JSON encoding of quantales, carriers and structures.

Matrices use ``{"kind", "name", "src", "tgt", "entries": [{"t", "s", "q"}]}``
with entries sorted by label.  Everything round-trips through
:func:`decode`, which is how law-suite counterexamples are replayed.
"""
import json

import numpy as np

from .cat import QCategory, QCocategory
from .errors import ValidationError
from .mod import QComodule, QModule
from .quantale import Quantale
from .vmat import FinSet, Function, VMatrix


def encode_set(x):
    return {"name": x.name, "elements": list(x.elements)}


def decode_set(obj):
    return FinSet(obj["name"], obj["elements"])


def encode_quantale(q):
    labels = q.elements
    n = len(q)
    return {
        "kind": "quantale",
        "name": q.name,
        "elements": list(labels),
        "bottom": labels[q.bottom],
        "unit": labels[q.unit],
        "join": [[labels[q.join_table[i, j]] for j in range(n)] for i in range(n)],
        "tensor": [[labels[q.tensor_table[i, j]] for j in range(n)] for i in range(n)],
    }


def decode_quantale(obj):
    labels = obj["elements"]
    pos = {a: i for i, a in enumerate(labels)}
    join = [[pos[c] for c in row] for row in obj["join"]]
    tensor = [[pos[c] for c in row] for row in obj["tensor"]]
    return Quantale(obj["name"], labels, join, pos[obj["bottom"]], tensor, pos[obj["unit"]])


def _entries(m):
    q = m.q
    out = [{"t": m.tgt.elements[y], "s": m.src.elements[x], "q": q.label(m.data[y, x])}
           for y in range(len(m.tgt)) for x in range(len(m.src))]
    return sorted(out, key=lambda e: (e["t"], e["s"]))


def _matrix_obj(kind, name, m):
    return {"kind": kind, "name": name, "src": encode_set(m.src), "tgt": encode_set(m.tgt),
            "entries": _entries(m)}


def encode(value, name=""):
    """Encode a structure (or a plain int/str) as JSON-ready data."""
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, Quantale):
        return encode_quantale(value)
    if isinstance(value, FinSet):
        return {"kind": "set", **encode_set(value)}
    if isinstance(value, Function):
        return {"kind": "function", "name": name, "src": encode_set(value.dom),
                "tgt": encode_set(value.cod),
                "map": {value.dom.elements[i]: value.cod.elements[j] for i, j in enumerate(value.table)}}
    if isinstance(value, VMatrix):
        return _matrix_obj("matrix", name, value)
    if isinstance(value, QCategory):
        return _matrix_obj("category", name, value.hom)
    if isinstance(value, QCocategory):
        q, z = value.q, value.objects
        entries = sorted(({"t": a, "s": a, "q": q.label(w)} for a, w in zip(z.elements, value.weights)),
                         key=lambda e: e["t"])
        return {"kind": "cocategory", "name": name, "src": encode_set(z), "tgt": encode_set(z),
                "entries": entries}
    if isinstance(value, (QModule, QComodule)):
        kind = "module" if isinstance(value, QModule) else "comodule"
        obj = _matrix_obj(kind, name, value.mat)
        obj["over"] = encode(value.over)
        return obj
    raise ValidationError(f"cannot encode {type(value).__name__}")


def _decode_matrix(q, obj):
    src, tgt = decode_set(obj["src"]), decode_set(obj["tgt"])
    return VMatrix.from_entries(q, src, tgt, {(e["t"], e["s"]): e["q"] for e in obj["entries"]})


def decode(obj, q=None):
    """Inverse of :func:`encode`; structures are rebuilt without re-verification."""
    if not isinstance(obj, dict):
        return obj
    kind = obj.get("kind")
    if kind == "quantale":
        return decode_quantale(obj)
    if kind == "set":
        return decode_set(obj)
    if kind == "function":
        return Function.from_mapping(decode_set(obj["src"]), decode_set(obj["tgt"]), obj["map"])
    if kind == "matrix":
        return _decode_matrix(q, obj)
    if kind == "category":
        return QCategory(_decode_matrix(q, obj), check=False)
    if kind == "cocategory":
        z = decode_set(obj["src"])
        weights = {e["t"]: e["q"] for e in obj["entries"]}
        return QCocategory(q, z, [weights[a] for a in z], check=False)
    if kind == "module":
        return QModule(decode(obj["over"], q), _decode_matrix(q, obj), check=False)
    if kind == "comodule":
        return QComodule(decode(obj["over"], q), _decode_matrix(q, obj), check=False)
    raise ValidationError(f"cannot decode kind {kind!r}")


def dumps(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)
