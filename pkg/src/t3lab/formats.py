"""JSON instance files.

``t3g-v1``: {"format": "t3g-v1", "classes": [nA, nB, nC], "edges": [[a, b, c, m], ...]}
``bmg-v1``: {"format": "bmg-v1", "classes": [nL, nR], "edges": [[u, v, m], ...]}

Indices are 0-based and m >= 1.  Loading expands each row into m
consecutive edge instances in file order.  Saving sorts rows and merges
multiplicities, so load -> save is canonical.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

from t3lab.errors import InputError
from t3lab.hypercore import BipartiteMultigraph, Tripartite3Graph

T3G = "t3g-v1"
BMG = "bmg-v1"
_WIDTH = {T3G: 3, BMG: 2}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse(obj):
    """Build a graph from decoded JSON; the format tag picks the type."""
    if not isinstance(obj, dict):
        raise InputError("instance must be a JSON object")
    fmt = obj.get("format")
    if fmt not in _WIDTH:
        raise InputError(f"unknown format {fmt!r}; expected {T3G!r} or {BMG!r}")
    width = _WIDTH[fmt]
    classes = obj.get("classes")
    if not isinstance(classes, list) or len(classes) != width or not all(_is_int(c) and c >= 0 for c in classes):
        raise InputError(f"{fmt}: 'classes' must be {width} non-negative integers")
    rows = obj.get("edges")
    if not isinstance(rows, list):
        raise InputError(f"{fmt}: 'edges' must be a list")
    items = []
    for k, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width + 1 or not all(_is_int(x) for x in row):
            raise InputError(f"{fmt}: edge row {k} must be {width + 1} integers")
        if row[-1] < 1:
            raise InputError(f"{fmt}: edge row {k} has multiplicity {row[-1]} < 1")
        items.append(tuple(row))
    if fmt == T3G:
        return Tripartite3Graph.from_triples(classes, items)
    return BipartiteMultigraph.from_pairs(classes, items)


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return parse(obj)


def load(path, expect: str | None = None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    g = loads(text)
    if expect is not None and format_of(g) != expect:
        raise InputError(f"{path}: expected a {expect} file, got {format_of(g)}")
    return g


def format_of(g) -> str:
    return T3G if isinstance(g, Tripartite3Graph) else BMG


def to_json(g) -> dict:
    mult = Counter(e.shape for e in g.edges)
    return {
        "format": format_of(g),
        "classes": list(g.class_sizes),
        "edges": [list(shape) + [m] for shape, m in sorted(mult.items())],
    }


def dumps(g) -> str:
    """Canonical text: one edge row per line, trailing newline."""
    data = to_json(g)
    rows = ",\n    ".join(json.dumps(r) for r in data["edges"])
    body = f"[\n    {rows}\n  ]" if rows else "[]"
    return f'{{\n  "format": "{data["format"]}",\n  "classes": {json.dumps(data["classes"])},\n  "edges": {body}\n}}\n'


def save(g, path) -> None:
    Path(path).write_text(dumps(g))
