"""JSON body documents: named-shape recipes or explicit edge cycles.

Documents are single JSON objects, schema-versioned, with unknown fields
rejected.  Numbers are written with 17 significant digits so that parsing a
serialized document reproduces the original values bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .bodies import CIRCULAR, GEODESIC, ConvexBody, Edge, body_from_cycle
from .shapes import BodySpec
from .sphere import GeometryError, unit

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed or schema-violating body document."""


_SPEC_FIELDS = {
    "disk": {"radius"},
    "quarter_disk": {"radius"},
    "regular_odd_gon": {"count", "thickness"},
    "reuleaux_odd_gon": {"count", "width"},
    "isosceles_triangle": {"arm", "base"},
}
_PLACEMENT_FIELDS = {"center", "frame"}
_META_FIELDS = {"label", "seed"}


def dumps(value, sig: int = 17) -> str:
    """Deterministic compact JSON with fixed float precision, keys sorted."""
    out: list[str] = []
    _write(value, sig, out)
    return "".join(out)


def _write(v, sig, out):
    if isinstance(v, bool):
        out.append("true" if v else "false")
    elif isinstance(v, (int, np.integer)):
        out.append(str(int(v)))
    elif isinstance(v, (float, np.floating)):
        out.append(format(float(v), f".{sig}g"))
    elif isinstance(v, str):
        out.append(json.dumps(v))
    elif v is None:
        out.append("null")
    elif isinstance(v, (list, tuple, np.ndarray)):
        out.append("[")
        for i, item in enumerate(v):
            if i:
                out.append(",")
            _write(item, sig, out)
        out.append("]")
    elif isinstance(v, dict):
        out.append("{")
        for i, k in enumerate(sorted(v)):
            if i:
                out.append(",")
            out.append(json.dumps(str(k)))
            out.append(":")
            _write(v[k], sig, out)
        out.append("}")
    else:
        raise TypeError(f"cannot serialize {type(v)!r}")


@dataclass(frozen=True)
class BodyDocument:
    version: int = FORMAT_VERSION
    spec: BodySpec | None = None
    start: np.ndarray | None = None
    edges: tuple[Edge, ...] | None = None
    metadata: dict = field(default_factory=dict)

    def build(self) -> ConvexBody:
        if self.spec is not None:
            return self.spec.build()
        return body_from_cycle(list(self.edges), start=self.start)


def document_from_spec(kind: str, metadata: dict | None = None, **params) -> BodyDocument:
    return BodyDocument(spec=BodySpec(kind, params), metadata=dict(metadata or {}))


def document_from_body(body: ConvexBody, metadata: dict | None = None) -> BodyDocument:
    return BodyDocument(start=body.vertices[0], edges=body.edges,
                        metadata=dict(metadata or {}))


def serialize(doc: BodyDocument) -> str:
    payload: dict = {"version": doc.version}
    if doc.spec is not None:
        payload["spec"] = {"kind": doc.spec.kind, **doc.spec.params}
    else:
        edges = []
        for e in doc.edges:
            if e.kind == GEODESIC:
                edges.append({"kind": "geodesic", "to": list(e.end)})
            else:
                edges.append({"kind": "circular", "to": list(e.end),
                              "center": list(e.center), "radius": e.radius, "side": 1})
        payload["body"] = {"start": list(doc.start), "edges": edges}
    if doc.metadata:
        payload["metadata"] = doc.metadata
    return dumps(payload) + "\n"


def _require_keys(obj: dict, allowed: set, where: str):
    unknown = set(obj) - allowed
    if unknown:
        raise DocumentError(f"unknown field(s) {sorted(unknown)} in {where}")


def _vec(v, where: str) -> np.ndarray:
    if not (isinstance(v, list) and len(v) == 3 and all(isinstance(x, (int, float)) for x in v)):
        raise DocumentError(f"{where} must be a 3-vector of numbers")
    return np.asarray(v, dtype=float)


def parse(text: str) -> BodyDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise DocumentError("document must be a JSON object")
    _require_keys(payload, {"version", "spec", "body", "metadata"}, "document")
    if payload.get("version") != FORMAT_VERSION:
        raise DocumentError(f"unsupported format version {payload.get('version')!r}")
    if ("spec" in payload) == ("body" in payload):
        raise DocumentError("document must contain exactly one of 'spec' or 'body'")

    metadata = payload.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DocumentError("metadata must be an object")
    _require_keys(metadata, _META_FIELDS, "metadata")

    if "spec" in payload:
        spec = payload["spec"]
        if not isinstance(spec, dict) or "kind" not in spec:
            raise DocumentError("spec must be an object with a 'kind'")
        kind = spec["kind"]
        if kind not in _SPEC_FIELDS:
            raise DocumentError(f"unknown body kind {kind!r}")
        _require_keys(spec, {"kind"} | _SPEC_FIELDS[kind] | _PLACEMENT_FIELDS, f"spec[{kind}]")
        missing = _SPEC_FIELDS[kind] - set(spec)
        if missing:
            raise DocumentError(f"spec[{kind}] missing field(s) {sorted(missing)}")
        params = {k: v for k, v in spec.items() if k != "kind"}
        return BodyDocument(spec=BodySpec(kind, params), metadata=metadata)

    body = payload["body"]
    if not isinstance(body, dict):
        raise DocumentError("body must be an object")
    _require_keys(body, {"start", "edges"}, "body")
    start = _vec(body.get("start"), "body.start")
    raw_edges = body.get("edges")
    if not isinstance(raw_edges, list) or len(raw_edges) < 2:
        raise DocumentError("body.edges must be a list of at least two edges")
    edges = []
    for i, re_ in enumerate(raw_edges):
        if not isinstance(re_, dict):
            raise DocumentError(f"edge {i} must be an object")
        kind = re_.get("kind")
        if kind == "geodesic":
            _require_keys(re_, {"kind", "to"}, f"edge {i}")
            edges.append(Edge(GEODESIC, _vec(re_.get("to"), f"edge {i}.to")))
        elif kind == "circular":
            _require_keys(re_, {"kind", "to", "center", "radius", "side"}, f"edge {i}")
            radius = re_.get("radius")
            side = re_.get("side", 1)
            if not isinstance(radius, (int, float)) or not (0.0 < radius < np.pi):
                raise DocumentError(f"edge {i}: radius must lie in (0, pi)")
            if side not in (1, -1):
                raise DocumentError(f"edge {i}: side must be 1 or -1")
            center = _vec(re_.get("center"), f"edge {i}.center")
            if side == -1:
                # normalize to the body-toward-center convention
                center, radius = -center, np.pi - radius
            edges.append(Edge(CIRCULAR, _vec(re_.get("to"), f"edge {i}.to"),
                              center=center, radius=float(radius)))
        else:
            raise DocumentError(f"edge {i}: unknown kind {kind!r}")
    return BodyDocument(start=unit(start), edges=tuple(edges), metadata=metadata)
