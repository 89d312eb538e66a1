"""The JSON dialect used by the command line.

Functions::

    {"kind": "table", "lower": [...], "upper": [...], "values": [...]}
    {"kind": "quadratic", "matrix": [[...]], "linear": [...]}
    {"kind": "separable", "pieces": [{"start": 0, "values": [...]}, ...]}
    {"kind": "set", "points": [[...], ...]}
    {"kind": "matrix", "entries": [[...]]}

Integers are plain numbers, other rationals are ``"p/q"`` strings and
``+inf`` is the string ``"inf"``, so a file round-trips exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .core import (
    IndicatorSet,
    IntBox,
    QuadraticFunction,
    SeparableFunction,
    TableFunction,
    Witness,
    is_inf,
    to_extended,
)


class FormatError(ValueError):
    """The document does not follow the JSON dialect."""


def encode_value(v):
    if is_inf(v):
        return "inf"
    v = Fraction(v)
    if v.denominator == 1:
        return v.numerator
    return f"{v.numerator}/{v.denominator}"


def decode_value(raw):
    if isinstance(raw, bool) or raw is None or isinstance(raw, (list, dict)):
        raise FormatError(f"not a value: {raw!r}")
    try:
        return to_extended(raw)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"bad value {raw!r}: {exc}") from None


def _ints(raw, what):
    if not isinstance(raw, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw):
        raise FormatError(f"{what} must be a list of integers")
    return [int(v) for v in raw]


def _matrix(raw, what="matrix"):
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise FormatError(f"{what} must be a non-empty list of rows")
    return [[decode_value(v) for v in row] for row in raw]


def _point(p):
    return [int(v) for v in p]


def encode(obj) -> dict:
    """Dictionary form of a function, set or integer matrix."""
    if isinstance(obj, TableFunction):
        return {
            "kind": "table",
            "lower": list(obj.box.lower),
            "upper": list(obj.box.upper),
            "values": [encode_value(v) for v in obj.values()],
        }
    if isinstance(obj, QuadraticFunction):
        out = {"kind": "quadratic", "matrix": [[encode_value(v) for v in row] for row in obj.matrix]}
        if obj.linear is not None:
            out["linear"] = [encode_value(v) for v in obj.linear]
        return out
    if isinstance(obj, SeparableFunction):
        return {
            "kind": "separable",
            "pieces": [{"start": s, "values": [encode_value(v) for v in vals]} for s, vals in obj.pieces],
        }
    if isinstance(obj, IndicatorSet):
        return {"kind": "set", "points": [list(p) for p in obj.points]}
    if isinstance(obj, np.ndarray):
        return {"kind": "matrix", "entries": obj.astype(int).tolist()}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(doc):
    """Inverse of :func:`encode`; raises :class:`FormatError` on malformed input."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError('expected an object with a "kind" field')
    kind = doc["kind"]
    try:
        if kind == "table":
            lo = _ints(doc.get("lower"), "lower")
            hi = _ints(doc.get("upper"), "upper")
            box = IntBox(lo, hi)
            vals = doc.get("values")
            if not isinstance(vals, list):
                raise FormatError("values must be a list")
            return TableFunction.from_values(box, [decode_value(v) for v in vals])
        if kind == "quadratic":
            lin = doc.get("linear")
            return QuadraticFunction(
                _matrix(doc.get("matrix")),
                None if lin is None else [decode_value(v) for v in lin],
            )
        if kind == "separable":
            pieces = doc.get("pieces")
            if not isinstance(pieces, list):
                raise FormatError("pieces must be a list")
            return SeparableFunction(
                tuple((int(p["start"]), [decode_value(v) for v in p["values"]]) for p in pieces)
            )
        if kind == "set":
            pts = doc.get("points")
            if not isinstance(pts, list):
                raise FormatError("points must be a list")
            return IndicatorSet([_ints(p, "point") for p in pts])
        if kind == "matrix":
            rows = _matrix(doc.get("entries"), "entries")
            if any(v.denominator != 1 for r in rows for v in r):
                raise FormatError("matrix entries must be integers")
            return np.asarray([[int(v) for v in r] for r in rows], dtype=np.int64)
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid {kind} document: {exc}") from None
    raise FormatError(f"unknown kind {kind!r}")


def encode_witness(w: Witness | None):
    if w is None:
        return None
    pts = {}
    for k, v in w.points.items():
        pts[k] = _point(v) if isinstance(v, tuple) else v
    out = {"kind": w.kind, "points": pts, "lhs": encode_value(w.lhs), "rhs": encode_value(w.rhs)}
    if w.frame != "x":
        out["frame"] = w.frame
    return out


def decode_witness(doc) -> Witness | None:
    if doc is None:
        return None
    pts = {k: tuple(v) if isinstance(v, list) else v for k, v in doc["points"].items()}
    return Witness(doc["kind"], pts, decode_value(doc["lhs"]), decode_value(doc["rhs"]), doc.get("frame", "x"))


def encode_verdict(v) -> dict:
    return {"holds": bool(v.holds), "witness": encode_witness(v.witness), "checked": int(v.checked)}


def load(path: str):
    """Read and decode a file (``-`` for stdin)."""
    import sys

    try:
        if path == "-":
            doc = json.load(sys.stdin)
        else:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    return decode(doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=None, separators=(", ", ": "))
