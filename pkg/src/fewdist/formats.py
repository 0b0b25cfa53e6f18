"""JSON encodings for configurations and catalog entries.

Configuration objects look like::

    {"kind": "points", "m": 0, "d": 2, "data": [["0", "0"], ["1", "0"]], "labels": [...]}
    {"kind": "sdm", "m": 5, "data": [["0", {"a": "5/2", "b": "-1/2", "m": 5}], ...]}

Exact values use the text encoding from :mod:`fewdist.field`.
"""

from __future__ import annotations

from typing import Any

from .catalog import CatalogEntry
from .errors import FewDistError, ParseError
from .field import parse, render
from .geometry import PointSet, SquaredDistanceMatrix


def config_to_json(cfg: PointSet | SquaredDistanceMatrix) -> dict[str, Any]:
    if isinstance(cfg, PointSet):
        out: dict[str, Any] = {
            "kind": "points",
            "m": cfg.m,
            "d": cfg.d,
            "data": [[render(x) for x in p] for p in cfg.points],
        }
    else:
        out = {
            "kind": "sdm",
            "m": cfg.m,
            "data": [[render(x) for x in row] for row in cfg.entries],
        }
    if cfg.labels is not None:
        out["labels"] = list(cfg.labels)
    return out


def config_from_json(obj: Any) -> PointSet | SquaredDistanceMatrix:
    if not isinstance(obj, dict):
        raise ParseError("configuration must be a JSON object")
    kind = obj.get("kind")
    data = obj.get("data")
    if kind not in ("points", "sdm"):
        raise ParseError(f"'kind' must be 'points' or 'sdm', got {kind!r}")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise ParseError("'data' must be a list of lists")
    m = obj.get("m", 0)
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ParseError(f"'m' must be a non-negative integer, got {m!r}")
    labels = obj.get("labels")
    rows = [[parse(x, m) for x in r] for r in data]
    try:
        if kind == "points":
            d = obj.get("d", len(rows[0]) if rows else 0)
            return PointSet.from_coords(rows, labels=labels, d=d)
        return SquaredDistanceMatrix(rows, labels=labels)
    except FewDistError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def entry_to_json(entry: CatalogEntry) -> dict[str, Any]:
    out = config_to_json(entry.payload)
    out["name"] = entry.name
    out["parameters"] = dict(entry.parameters)
    if entry.expected is not None:
        out["expected"] = dict(entry.expected)
    return out
