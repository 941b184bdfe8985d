"""JSON documents, canonical serialization and DOT export."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ._order import canonical_sorted
from .errors import ValidationError
from .framework import Framework
from .minkowski import MinkVec, rat_str
from .region import Block, NullPoint, Region, from_null, region_from_diamonds, to_null
from .site import CausalSite, reflexive_transitive_closure, transitive_reduction
from .topology import FiniteTopology, specialization

VERSION = "1"
KINDS = ("framework", "topology", "causal_site", "region_set")


class MalformedDocument(ValidationError):
    pass


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any
    version: str = VERSION


def encode_id(x):
    """Opaque identifier -> JSON; sets become sorted arrays."""
    if isinstance(x, (frozenset, set)):
        return [encode_id(y) for y in canonical_sorted(x)]
    if isinstance(x, (bool, float)) or not isinstance(x, (int, str)):
        raise ValidationError(f"cannot serialize identifier {x!r}")
    return x


def decode_id(x):
    if isinstance(x, list):
        return frozenset(decode_id(y) for y in x)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise MalformedDocument(f"identifiers must be strings, integers or arrays, got {x!r}")
    return x


def encode_rat(x: Fraction) -> str:
    return rat_str(x)


def decode_rat(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise MalformedDocument(f"rationals are 'num/den' strings, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise MalformedDocument(f"bad rational {x!r}") from exc


def encode_region(r: Region) -> dict:
    return {
        "dim": 2,
        "diamonds": [{"p": p.to_json(), "q": q.to_json()} for p, q in r.to_diamonds()],
    }


def decode_region(d: dict) -> Region:
    if d.get("dim", 2) != 2:
        raise MalformedDocument("exact regions are only supported in 1+1 dimensions")
    pairs = []
    for dm in d["diamonds"]:
        p = MinkVec(tuple(decode_rat(c) for c in dm["p"]))
        q = MinkVec(tuple(decode_rat(c) for c in dm["q"]))
        pairs.append((p, q))
    return region_from_diamonds(pairs)


def encode_point(n: NullPoint) -> list:
    return from_null(n).to_json()


def decode_point(coords) -> NullPoint:
    return to_null(MinkVec(tuple(decode_rat(c) for c in coords)))


def encode_payload(kind: str, value) -> dict:
    if kind == "framework":
        return {
            "places": [encode_id(x) for x in value.sorted_places()],
            "framology": [[encode_id(x) for x in canonical_sorted(m)] for m in canonical_sorted(value.framology)],
        }
    if kind == "topology":
        return {
            "ground": [encode_id(x) for x in value.points],
            "closed": [[encode_id(x) for x in c] for c in value.sorted_closed_sets()],
        }
    if kind == "causal_site":
        red = transitive_reduction(value.elements, value.leq)
        return {
            "elements": [encode_id(x) for x in value.elements],
            "bottom": encode_id(value.bottom),
            "leq": [[encode_id(a), encode_id(b)] for a, b in red],
            "prec": [[encode_id(a), encode_id(b)] for a, b in canonical_sorted(value.prec)],
        }
    if kind == "region_set":
        return {"dim": 2, "regions": [encode_region(r) for r in value]}
    raise ValidationError(f"unknown document kind {kind!r}")


def decode_payload(kind: str, p: dict):
    if kind == "framework":
        return Framework((decode_id(x) for x in p["places"]),
                         ([decode_id(x) for x in m] for m in p["framology"]))
    if kind == "topology":
        return FiniteTopology((decode_id(x) for x in p["ground"]),
                              ([decode_id(x) for x in c] for c in p["closed"]))
    if kind == "causal_site":
        elements = [decode_id(x) for x in p["elements"]]
        leq = reflexive_transitive_closure(elements, ((decode_id(a), decode_id(b)) for a, b in p["leq"]))
        prec = [(decode_id(a), decode_id(b)) for a, b in p["prec"]]
        return CausalSite(elements, leq, prec, decode_id(p["bottom"]))
    if kind == "region_set":
        if "regions" in p:
            return [decode_region(r) for r in p["regions"]]
        return [decode_region(p)]
    raise MalformedDocument(f"unknown document kind {kind!r}")


def _infer_kind(p: dict) -> str:
    if "framology" in p:
        return "framework"
    if "closed" in p:
        return "topology"
    if "prec" in p:
        return "causal_site"
    if "regions" in p or "diamonds" in p:
        return "region_set"
    raise MalformedDocument("cannot infer document kind")


def to_json(doc: Document) -> dict:
    return {"kind": doc.kind, "version": doc.version, "payload": encode_payload(doc.kind, doc.value)}


def from_json(data) -> Document:
    """Accepts the enveloped form or a bare module payload."""
    if not isinstance(data, dict):
        raise MalformedDocument("document must be a JSON object")
    try:
        if "payload" in data:
            kind = data.get("kind")
            if kind not in KINDS:
                raise MalformedDocument(f"unknown document kind {kind!r}")
            version = str(data.get("version", VERSION))
            if version != VERSION:
                raise MalformedDocument(f"unsupported document version {version!r}")
            return Document(kind, decode_payload(kind, data["payload"]), version)
        kind = _infer_kind(data)
        return Document(kind, decode_payload(kind, data))
    except MalformedDocument:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise MalformedDocument(f"malformed document: {exc}") from exc


def dumps(doc: Document) -> str:
    return json.dumps(to_json(doc), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"invalid JSON: {exc}") from exc
    return from_json(data)


def save(doc: Document, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(doc))


def load(path: str) -> Document:
    with open(path) as fh:
        return loads(fh.read())


def digest(*docs: Document) -> str:
    h = hashlib.sha256()
    for d in docs:
        h.update(json.dumps(to_json(d), sort_keys=True).encode())
    return h.hexdigest()


def _node(x) -> str:
    return json.dumps(json.dumps(encode_id(x), separators=(",", ":")))


def export_dot(doc: Document) -> str:
    """Graphviz text: specialization Hasse diagram for topologies; order
    (solid) plus precedence (dashed) edges for causal sites."""
    lines = []
    if doc.kind == "topology":
        spec = specialization(doc.value)
        lines.append("digraph specialization {")
        lines += [f"  {_node(x)};" for x in doc.value.points]
        lines += [f"  {_node(x)} -> {_node(y)};" for x, y in spec.hasse_edges()]
    elif doc.kind == "causal_site":
        cs = doc.value
        lines.append("digraph causal_site {")
        lines += [f"  {_node(x)};" for x in cs.elements]
        lines += [f"  {_node(a)} -> {_node(b)} [style=solid];"
                  for a, b in transitive_reduction(cs.elements, cs.leq)]
        lines += [f"  {_node(a)} -> {_node(b)} [style=dashed];" for a, b in canonical_sorted(cs.prec)]
    else:
        raise ValidationError(f"DOT export is not available for {doc.kind!r} documents")
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_strings(r: Region) -> list:
    return [repr(b) for b in r.blocks]


def rational_block(b: Block) -> list:
    return [encode_rat(c) for c in (b.u_lo, b.u_hi, b.v_lo, b.v_hi)]
