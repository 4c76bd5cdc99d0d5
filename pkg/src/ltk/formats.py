"""JSON interchange formats: ltk-triple-v1 and ltk-masa-v1.

Rationals travel as canonical "p/q" strings, never floats; serialization
uses sorted keys so output is byte-stable across runs and platforms.
"""

from __future__ import annotations

import json

from .linalg import ZERO, Vec, format_rational, parse_rational, rref
from .triple import Sparse, TripleSystem

TRIPLE_FORMAT = "ltk-triple-v1"
MASA_FORMAT = "ltk-masa-v1"


class ParseError(Exception):
    pass


def _require_keys(obj: dict, required: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{what}: expected an object")
    missing = required - set(obj)
    if missing:
        raise ParseError(f"{what}: missing keys {sorted(missing)}")
    unknown = set(obj) - required
    if unknown:
        raise ParseError(f"{what}: unknown keys {sorted(unknown)}")


def _index(x, dim: int, what: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or not (0 <= x < dim):
        raise ParseError(f"{what}: index {x!r} out of range for dimension {dim}")
    return x


def _rational(s, what: str):
    if not isinstance(s, str):
        raise ParseError(f"{what}: rational must be a string, got {s!r}")
    try:
        return parse_rational(s)
    except Exception:
        raise ParseError(f"{what}: bad rational {s!r}")


def serialize_system(ts: TripleSystem, name: str) -> dict:
    products = []
    for (i, j, k) in sorted(ts.table):
        out = {
            str(l): format_rational(c)
            for l, c in sorted(ts.table[(i, j, k)].items())
            if c
        }
        if out:
            products.append({"args": [i, j, k], "out": out})
    return {
        "format": TRIPLE_FORMAT,
        "name": name,
        "dim": ts.dim,
        "basis": list(ts.labels),
        "products": products,
    }


def parse_system(obj: dict) -> tuple[str, TripleSystem]:
    _require_keys(obj, {"format", "name", "dim", "basis", "products"}, "triple file")
    if obj["format"] != TRIPLE_FORMAT:
        raise ParseError(f"unsupported format {obj['format']!r}")
    if not isinstance(obj["name"], str):
        raise ParseError("name must be a string")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError(f"bad dimension {dim!r}")
    basis = obj["basis"]
    if not isinstance(basis, list) or len(basis) != dim or not all(
        isinstance(b, str) for b in basis
    ):
        raise ParseError("basis must be a list of labels, one per dimension")
    if not isinstance(obj["products"], list):
        raise ParseError("products must be a list")
    table: dict[tuple[int, int, int], Sparse] = {}
    for p in obj["products"]:
        _require_keys(p, {"args", "out"}, "product entry")
        args = p["args"]
        if not isinstance(args, list) or len(args) != 3:
            raise ParseError(f"args must be three indices, got {args!r}")
        key = tuple(_index(a, dim, "product args") for a in args)
        if key in table:
            raise ParseError(f"duplicate product entry for args {list(key)}")
        if not isinstance(p["out"], dict):
            raise ParseError("out must map basis indices to rationals")
        out: Sparse = {}
        for ks, vs in p["out"].items():
            try:
                l = int(ks)
            except ValueError:
                raise ParseError(f"out key {ks!r} is not an index")
            _index(l, dim, "out index")
            c = _rational(vs, "out value")
            if c:
                out[l] = c
        if out:
            table[key] = out
    return obj["name"], TripleSystem(dim, tuple(basis), table)


def serialize_masa(vectors: list[Vec], dim: int, coords: str = "pairs") -> dict:
    if coords == "pairs":
        vecs = []
        for v in vectors:
            entries = []
            for idx, c in enumerate(v):
                if c:
                    entries.append(
                        {
                            "left": idx // dim,
                            "right": idx % dim,
                            "coeff": format_rational(c),
                        }
                    )
            vecs.append({"entries": entries})
        return {"format": MASA_FORMAT, "coords": "pairs", "vectors": vecs}
    if coords == "reduced":
        return {
            "format": MASA_FORMAT,
            "coords": "reduced",
            "vectors": [[format_rational(c) for c in v] for v in vectors],
        }
    raise ValueError(f"unknown coords mode {coords!r}")


def parse_masa(obj: dict, dim: int) -> tuple[str, list[Vec]]:
    """Returns (coords mode, vectors); pairs vectors have length dim**2."""
    _require_keys(obj, {"format", "coords", "vectors"}, "masa file")
    if obj["format"] != MASA_FORMAT:
        raise ParseError(f"unsupported format {obj['format']!r}")
    coords = obj["coords"]
    if coords not in ("pairs", "reduced"):
        raise ParseError(f"coords must be 'pairs' or 'reduced', got {coords!r}")
    if not isinstance(obj["vectors"], list):
        raise ParseError("vectors must be a list")
    vectors: list[Vec] = []
    if coords == "pairs":
        for entry in obj["vectors"]:
            _require_keys(entry, {"entries"}, "masa vector")
            if not isinstance(entry["entries"], list):
                raise ParseError("entries must be a list")
            v = [ZERO] * (dim * dim)
            for e in entry["entries"]:
                _require_keys(e, {"left", "right", "coeff"}, "masa entry")
                i = _index(e["left"], dim, "left index")
                j = _index(e["right"], dim, "right index")
                v[i * dim + j] += _rational(e["coeff"], "coeff")
            vectors.append(tuple(v))
    else:
        for row in obj["vectors"]:
            if not isinstance(row, list):
                raise ParseError("reduced vectors must be coordinate lists")
            vectors.append(tuple(_rational(x, "coordinate") for x in row))
        if len({len(v) for v in vectors}) > 1:
            raise ParseError("reduced vectors must share one length")
    if vectors:
        _, piv = rref(list(vectors))
        if len(piv) != len(vectors):
            raise ParseError("masa vectors are linearly dependent")
    return coords, vectors


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e}")
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    return obj


def load_system(path: str) -> tuple[str, TripleSystem]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    return parse_system(loads(text))


def save_system(path: str, ts: TripleSystem, name: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(serialize_system(ts, name)))


def load_masa(path: str, dim: int) -> tuple[str, list[Vec]]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}")
    return parse_masa(loads(text), dim)
