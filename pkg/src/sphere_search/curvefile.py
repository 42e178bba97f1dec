"""Curve serialization: a small self-describing JSON document.

Layout: {"dim": d, "closed": bool, "vertices": [[...], ...]}. Floats are
written with repr precision, so write/read round-trips are bit-exact. The
same format doubles as the pole-list input for cover refutation (the closed
flag is ignored there).
"""

import json

import numpy as np

from .geometry import PolylineCurve


class CurveFormatError(ValueError):
    """Raised when a curve document is malformed."""


def write_curve(path, curve: PolylineCurve) -> None:
    doc = {
        "dim": curve.dim,
        "closed": curve.closed,
        "vertices": [[float(x) for x in row] for row in curve.vertices],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def _load_doc(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CurveFormatError(f"cannot read curve file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise CurveFormatError(f"{path}: expected a JSON object")
    for key in ("dim", "closed", "vertices"):
        if key not in doc:
            raise CurveFormatError(f"{path}: missing field {key!r}")
    return doc


def _parse_vertices(doc: dict, path) -> np.ndarray:
    try:
        verts = np.asarray(doc["vertices"], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise CurveFormatError(f"{path}: vertices are not numeric rows") from exc
    if verts.ndim != 2 or verts.shape[1] != int(doc["dim"]):
        raise CurveFormatError(
            f"{path}: vertices shape {verts.shape} does not match dim {doc['dim']}"
        )
    return verts


def read_vertices(path) -> np.ndarray:
    """Vertex array of a curve document, ignoring the closed flag."""
    return _parse_vertices(_load_doc(path), path)


def read_curve(path) -> PolylineCurve:
    doc = _load_doc(path)
    try:
        return PolylineCurve(_parse_vertices(doc, path), closed=bool(doc["closed"]))
    except ValueError as exc:
        if isinstance(exc, CurveFormatError):
            raise
        raise CurveFormatError(f"{path}: {exc}") from exc
