"""JSON loading with schema auto-detection."""
from __future__ import annotations

import json

from .measure import CircleMeasure, MomentSeq
from .recursion import VerblunskySeq
from .szego_map import JacobiParams


class SchemaError(ValueError):
    pass


def detect(data: dict):
    """Build a ``VerblunskySeq``, ``CircleMeasure``, ``JacobiParams`` or ``MomentSeq`` from parsed JSON."""
    if not isinstance(data, dict):
        raise SchemaError("top-level JSON value must be an object")
    keys = set(data)
    try:
        if "alphas" in keys:
            return VerblunskySeq.from_json(data)
        if {"grid_size", "ac_weight"} <= keys:
            return CircleMeasure.from_json(data)
        if {"a", "b"} <= keys:
            return JacobiParams.from_json(data)
        if "c" in keys:
            return MomentSeq.from_json(data)
    except (TypeError, KeyError) as exc:
        raise SchemaError(f"malformed input: {exc}") from exc
    raise SchemaError(f"unrecognized schema with keys {sorted(keys)}")


def load(path: str):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    return detect(data)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
