"""JSON system descriptors: loading, validation and canonical serialization.

Two kinds are accepted::

    {"kind": "partial_map", "points": [...], "domain": [...], "map": {x: y}}
    {"kind": "multimatrix", "blocks": [n_1, ...],
     "endo": {"multiplicities": [[...], ...], "padding": [...],
              "unitaries": [null | [[quad, ...], ...], ...]}}

Scalars are ``[re_num, re_den, im_num, im_den]`` integer quadruples.
"""

import json
from dataclasses import dataclass
from pathlib import Path as FilePath

from .errors import InputError
from .finalg import MultiMatrixAlgebra, StarEndomorphism
from .matrix import CMatrix
from .pdsys import PartialMap, induced_endomorphism
from .scalar import Scalar

__all__ = ["System", "load", "parse", "serialize", "element_to_json", "scalar_to_json"]


@dataclass(frozen=True)
class System:
    name: str
    algebra: MultiMatrixAlgebra
    phi: StarEndomorphism
    partial_map: PartialMap = None

    @property
    def kind(self):
        return "partial_map" if self.partial_map is not None else "multimatrix"


def load(path):
    try:
        text = FilePath(path).read_text()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc)) from exc
    return parse(data, default_name=FilePath(path).stem)


def _require(data, key, kind):
    if key not in data:
        raise InputError("%s descriptor is missing %r" % (kind, key))
    return data[key]


def _quad(v):
    if not (isinstance(v, list) and len(v) == 4 and all(type(x) is int for x in v)):
        raise InputError("scalars must be [re_num, re_den, im_num, im_den], got %r" % (v,))
    if v[1] == 0 or v[3] == 0:
        raise InputError("zero denominator in %r" % (v,))
    return Scalar.from_quad(v)


def parse(data, default_name="system"):
    if not isinstance(data, dict):
        raise InputError("descriptor must be a JSON object")
    kind = data.get("kind")
    name = str(data.get("name", default_name))
    if kind == "partial_map":
        points = _require(data, "points", kind)
        domain = _require(data, "domain", kind)
        mapping = _require(data, "map", kind)
        if not isinstance(points, list) or not isinstance(domain, list) or not isinstance(mapping, dict):
            raise InputError("points and domain must be lists and map an object")
        names = [str(p) for p in points]
        if not set(str(d) for d in domain) <= set(names):
            raise InputError("domain is not a subset of points")
        if set(str(d) for d in domain) != set(str(k) for k in mapping):
            raise InputError("map keys must be exactly the domain")
        m = PartialMap.from_mapping(names, mapping)
        A, phi = induced_endomorphism(m)
        return System(name, A, phi, m)
    if kind == "multimatrix":
        blocks = _require(data, "blocks", kind)
        endo = _require(data, "endo", kind)
        if not isinstance(blocks, list) or not all(type(b) is int for b in blocks):
            raise InputError("blocks must be a list of integers")
        A = MultiMatrixAlgebra(tuple(blocks))
        mults = _require(endo, "multiplicities", "endo")
        padding = endo.get("padding")
        raw = endo.get("unitaries") or [None] * len(blocks)
        if len(raw) != len(blocks):
            raise InputError("one unitary (or null) per block is required")
        unitaries = [None if u is None else CMatrix.from_rows([[_quad(v) for v in row] for row in u])
                     for u in raw]
        return System(name, A, StarEndomorphism(A, A, mults, padding, unitaries))
    raise InputError("unknown descriptor kind %r" % (kind,))


def scalar_to_json(s):
    return Scalar.coerce(s).to_quad()


def matrix_to_json(m):
    return [[scalar_to_json(v) for v in row] for row in m.rows()]


def element_to_json(a):
    if a.algebra.is_commutative():
        return [scalar_to_json(v) for v in a.values()]
    return [matrix_to_json(b) for b in a.blocks]


def serialize(system):
    """Canonical descriptor of ``system``."""
    if system.partial_map is not None:
        m = system.partial_map
        return {
            "kind": "partial_map",
            "name": system.name,
            "points": list(m.names),
            "domain": [m.names[x] for x in sorted(m.domain)],
            "map": m.mapping(),
        }
    phi = system.phi
    unitaries = []
    for w in phi.unitaries:
        unitaries.append(None if w == CMatrix.identity(w.nrows) else matrix_to_json(w))
    return {
        "kind": "multimatrix",
        "name": system.name,
        "blocks": list(system.algebra.block_dims),
        "endo": {
            "multiplicities": [list(m) for m in phi.multiplicities],
            "padding": list(phi.padding),
            "unitaries": unitaries,
        },
    }
