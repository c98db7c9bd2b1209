"""JSON formats for complexes, covers, nerves, carriers, maps and homology.

Emission is canonical (sorted vertices, facets and keys) so equal values
always serialize to identical bytes.  Wherever a format embeds a complex or
cover, the value may also be a path to a JSON file holding it.
"""

from __future__ import annotations

import json
from pathlib import Path

from .carrier import Carrier
from .complex import Bary, OpenStar, SimplicialComplex, SimplicialMap, from_facets, simplex
from .cover import CLOSED, OPEN_STARS, Cover, Nerve, make_cover
from .homology import chain_complex
from .verdict import MalformedInput


def parse_label(text: str):
    """Inverse of ``str`` on vertex labels: ``b(x,y)`` becomes ``Bary``."""
    if not (text.startswith("b(") and text.endswith(")")):
        return text
    inner = text[2:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(inner):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                return text
        elif ch == "," and depth == 0:
            parts.append(inner[start:i])
            start = i + 1
    if depth != 0:
        return text
    parts.append(inner[start:])
    if any(not p for p in parts):
        return text
    return Bary(simplex(parse_label(p) for p in parts))


def dumps(obj, fmt: str = "pretty") -> str:
    if fmt == "compact":
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))
    return json.dumps(obj, sort_keys=True, indent=2)


def _load(value, base_dir: Path | None):
    if isinstance(value, str):
        path = Path(value)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            return json.loads(path.read_text()), path.parent
        except json.JSONDecodeError as e:
            raise MalformedInput(f"{path}: {e}") from None
    return value, base_dir


def _require(obj, keys, what):
    if not isinstance(obj, dict):
        raise MalformedInput(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise MalformedInput(f"{what} is missing {missing}")


def complex_to_json(K: SimplicialComplex) -> dict:
    return {
        "vertices": [str(v) for v in K.vertices],
        "facets": [[str(v) for v in f] for f in K.facets],
    }


def complex_from_json(obj, base_dir: Path | None = None) -> SimplicialComplex:
    obj, _ = _load(obj, base_dir)
    _require(obj, ["facets"], "complex")
    facets = obj["facets"]
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise MalformedInput("facets must be an array of arrays")
    K = from_facets([parse_label(str(v)) for v in f] for f in facets)
    if "vertices" in obj:
        declared = {parse_label(str(v)) for v in obj["vertices"]}
        if declared != set(K.vertices):
            raise MalformedInput("declared vertices differ from the vertices of the facets")
    return K


def cover_to_json(F: Cover) -> dict:
    pieces = {}
    for name, p in F.pieces.items():
        if F.kind == CLOSED:
            pieces[name] = {"facets": [[str(v) for v in f] for f in p.facets]}
        else:
            pieces[name] = {"center": str(p.center)}
    return {"complex": complex_to_json(F.base), "kind": F.kind, "pieces": pieces}


def cover_from_json(obj, base_dir: Path | None = None) -> Cover:
    obj, base_dir = _load(obj, base_dir)
    _require(obj, ["complex", "pieces"], "cover")
    base = complex_from_json(obj["complex"], base_dir)
    kind = obj.get("kind", CLOSED)
    pieces = {}
    for name, entry in obj["pieces"].items():
        if not isinstance(entry, dict):
            raise MalformedInput(f"piece {name!r} must be an object")
        if kind == CLOSED and "facets" in entry:
            pieces[name] = from_facets([parse_label(str(v)) for v in f] for f in entry["facets"])
        elif kind == OPEN_STARS and "center" in entry:
            pieces[name] = OpenStar(parse_label(str(entry["center"])), frozenset())
        else:
            raise MalformedInput(f"piece {name!r} does not match cover kind {kind!r}")
    return make_cover(base, pieces, kind)


def nerve_to_json(N: Nerve) -> dict:
    out = complex_to_json(N.complex)
    out["witnesses"] = {",".join(A): [str(v) for v in w] for A, w in N.witnesses.items()}
    out["dimension_cap"] = N.dimension_cap
    return out


def carrier_to_json(C: Carrier) -> dict:
    return {
        "domain": cover_to_json(C.domain),
        "codomain": cover_to_json(C.codomain),
        "assignment": dict(C.assignment),
    }


def carrier_from_json(obj, base_dir: Path | None = None) -> Carrier:
    obj, base_dir = _load(obj, base_dir)
    _require(obj, ["domain", "codomain", "assignment"], "carrier")
    return Carrier(
        cover_from_json(obj["domain"], base_dir),
        cover_from_json(obj["codomain"], base_dir),
        dict(obj["assignment"]),
    )


def map_to_json(f: SimplicialMap) -> dict:
    return {
        "source": complex_to_json(f.source),
        "target": complex_to_json(f.target),
        "vertex_map": {str(v): str(f(v)) for v in f.source.vertices},
    }


def map_from_json(obj, base_dir: Path | None = None) -> SimplicialMap:
    obj, base_dir = _load(obj, base_dir)
    _require(obj, ["source", "target", "vertex_map"], "map")
    vm = {parse_label(str(k)): parse_label(str(v)) for k, v in obj["vertex_map"].items()}
    return SimplicialMap(
        complex_from_json(obj["source"], base_dir), complex_from_json(obj["target"], base_dir), vm
    )


def boundary_matrices_json(K: SimplicialComplex) -> dict:
    cc = chain_complex(K)
    return {str(k): cc.boundary(k).to_dense() for k in range(1, len(cc.bases))}
