"""
Lattice interchange format.

A lattice file is a JSON object::

    {
      "elements": 4,
      "covers": [[0, 1], [0, 2], [1, 3], [2, 3]],
      "labels": ["0", "a", "b", "1"]          # optional
    }

``covers`` lists ``[lower, upper]`` pairs meaning *upper covers lower*.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import LatticeError, ParseError
from .lattice import DEFAULT_MAX_ELEMENTS, Lattice, build_lattice


def lattice_to_dict(L: Lattice) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "elements": L.element_count,
        "covers": [list(pair) for pair in L.covers],
    }
    if L.labels is not None:
        doc["labels"] = list(L.labels)
    return doc


def dumps_lattice(L: Lattice) -> str:
    return json.dumps(lattice_to_dict(L), indent=None, separators=(", ", ": ")) + "\n"


def dump_lattice(L: Lattice, path: str | Path) -> None:
    Path(path).write_text(dumps_lattice(L))


def lattice_from_dict(doc: Any, source: str = "<document>",
                      max_elements: int = DEFAULT_MAX_ELEMENTS) -> Lattice:
    if not isinstance(doc, dict):
        raise ParseError(f"{source}: top level must be an object")
    if "elements" not in doc:
        raise ParseError(f"{source}: missing field 'elements'")
    count = doc["elements"]
    if not isinstance(count, int) or isinstance(count, bool) or count < 1:
        raise ParseError(f"{source}: field 'elements' must be a positive integer")
    raw_covers = doc.get("covers")
    if not isinstance(raw_covers, list):
        raise ParseError(f"{source}: field 'covers' must be a list")
    covers = []
    for idx, pair in enumerate(raw_covers):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        ):
            raise ParseError(f"{source}: covers[{idx}] must be a [lower, upper] integer pair")
        if not all(0 <= x < count for x in pair):
            raise ParseError(f"{source}: covers[{idx}] = {pair} references an id outside [0, {count})")
        covers.append((pair[0], pair[1]))
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != count:
            raise ParseError(f"{source}: field 'labels' must list one string per element")
        labels = [str(x) for x in labels]
    try:
        return build_lattice(covers, count, labels=labels, max_elements=max_elements)
    except LatticeError as exc:
        exc.args = (f"{source}: covers: {exc}",)
        raise


def loads_lattice(text: str, source: str = "<string>") -> Lattice:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return lattice_from_dict(doc, source)


def load_lattice(path: str | Path) -> Lattice:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return loads_lattice(text, str(path))
