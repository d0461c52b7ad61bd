"""JSON encodings shared by the CLI and file formats.

Scalars: R -> number, C -> [re, im], H -> [w, x, y, z].  Matrices appear
either as {"rows", "cols", "entries"} with a row-major entry list, or (in
flag files) as a list of columns, each column a list of scalar encodings.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatchError
from .fields import Field
from .geometry import FlagPoint
from .linalg import KMatrix, StiefelElement, Subspace
from .symbols import FlagSignature


def encode_scalar(field: Field, comps) -> float | list[float]:
    comps = [float(c) for c in comps]
    if field is Field.REAL:
        return comps[0]
    if field is Field.COMPLEX:
        return comps[:2]
    return comps


def decode_scalar(field: Field, obj) -> tuple[float, float, float, float]:
    if isinstance(obj, (int, float)):
        return (float(obj), 0.0, 0.0, 0.0)
    values = [float(v) for v in obj]
    if field is Field.REAL or len(values) != field.real_dim:
        raise ShapeMismatchError(
            f"scalar over {field.letter} must be a number"
            + ("" if field is Field.REAL else f" or a list of {field.real_dim}")
        )
    return tuple(values + [0.0] * (4 - len(values)))


def encode_matrix(field: Field, entries: np.ndarray) -> dict:
    rows, cols = entries.shape[0], entries.shape[1]
    flat = [
        encode_scalar(field, entries[r, c])
        for r in range(rows)
        for c in range(cols)
    ]
    return {"rows": rows, "cols": cols, "entries": flat}


def decode_matrix(field: Field, obj: dict) -> KMatrix:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    flat = obj["entries"]
    if len(flat) != rows * cols:
        raise ShapeMismatchError(
            f"matrix of shape {rows}x{cols} needs {rows * cols} entries, got {len(flat)}"
        )
    arr = np.zeros((rows, cols, 4))
    for idx, value in enumerate(flat):
        arr[idx // cols, idx % cols] = decode_scalar(field, value)
    return KMatrix(field, arr)


def encode_columns(field: Field, entries: np.ndarray) -> list:
    return [
        [encode_scalar(field, entries[r, c]) for r in range(entries.shape[0])]
        for c in range(entries.shape[1])
    ]


def decode_columns(field: Field, obj) -> KMatrix:
    """Accept either the column-list form or the {"rows","cols","entries"}
    object form."""
    if isinstance(obj, dict):
        return decode_matrix(field, obj)
    cols = [[decode_scalar(field, v) for v in col] for col in obj]
    lengths = {len(c) for c in cols}
    if len(lengths) != 1:
        raise ShapeMismatchError(f"columns of unequal length: {sorted(lengths)}")
    arr = np.stack([np.array(c) for c in cols], axis=1)
    return KMatrix(field, arr)


def flag_to_json(flag: FlagPoint) -> dict:
    return {
        "field": flag.field.letter,
        "ambient": flag.signature.ambient,
        "signature": list(flag.signature.dims),
        "subspaces": [
            encode_columns(flag.field, sub.basis.entries) for sub in flag.subspaces
        ],
    }


def flag_from_json(obj: dict) -> FlagPoint:
    field = Field.from_letter(obj["field"])
    sig = FlagSignature(tuple(obj["signature"]), int(obj["ambient"]))
    subspaces = []
    for mat_obj in obj["subspaces"]:
        mat = decode_columns(field, mat_obj)
        if mat.rows != sig.ambient:
            raise ShapeMismatchError(
                f"subspace columns have {mat.rows} entries, ambient is {sig.ambient}"
            )
        subspaces.append(Subspace.from_columns(field, mat))
    return FlagPoint(sig, tuple(subspaces))


def stiefel_to_json(field: Field, element: StiefelElement) -> dict:
    return {
        "field": field.letter,
        "ambient": element.ambient_dim,
        "columns": encode_columns(field, element.entries),
    }
