"""Matrix and block-matrix JSON formats.

Matrix: ``{"rows": R, "cols": C, "data": [[re, im], ...]}`` row-major.
Block:  ``{"grid": [GR, GC], "blocks": [[<matrix>, ...], ...]}``.

Floats are written with Python's shortest round-trip ``repr`` so a
serialized matrix re-parses to bit-identical doubles.
"""
from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .errors import ParseError
from .linalg import BlockMatrix, as_matrix


def _finite(v, where):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"{where}: expected a number, got {v!r}")
    v = float(v)
    if not math.isfinite(v):
        raise ParseError(f"{where}: non-finite value")
    return v


def matrix_to_obj(T) -> dict:
    A = as_matrix(T)
    data = [[float(z.real), float(z.imag)] for z in A.reshape(-1)]
    return {"rows": int(A.shape[0]), "cols": int(A.shape[1]), "data": data}


def matrix_from_obj(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("matrix JSON must be an object")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise ParseError(f"matrix JSON missing key {exc}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError(f"data must hold rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(data):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"entry {k} must be a [re, im] pair")
        out[k] = complex(_finite(pair[0], f"entry {k}"), _finite(pair[1], f"entry {k}"))
    return out.reshape(rows, cols)


def block_to_obj(A: BlockMatrix) -> dict:
    gr, gc = A.grid
    return {"grid": [gr, gc], "blocks": [[matrix_to_obj(b) for b in row] for row in A.blocks]}


def block_from_obj(obj: Any) -> BlockMatrix:
    if not isinstance(obj, dict) or "grid" not in obj or "blocks" not in obj:
        raise ParseError("block JSON must be an object with 'grid' and 'blocks'")
    grid = obj["grid"]
    if not (isinstance(grid, list) and len(grid) == 2 and all(isinstance(g, int) and g >= 1 for g in grid)):
        raise ParseError("grid must be [GR, GC] with positive integers")
    blocks = obj["blocks"]
    if not isinstance(blocks, list) or len(blocks) != grid[0] or any(
        not isinstance(r, list) or len(r) != grid[1] for r in blocks
    ):
        raise ParseError(f"blocks must be a {grid[0]}x{grid[1]} nested list")
    return BlockMatrix.from_grid([[matrix_from_obj(b) for b in row] for row in blocks])


def dumps(obj: Any, indent: int | None = None) -> str:
    return json.dumps(obj, indent=indent, allow_nan=False)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def read_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_obj(loads(fh.read()))


def read_block(path) -> BlockMatrix:
    with open(path) as fh:
        return block_from_obj(loads(fh.read()))


def vector_from_obj(obj: Any) -> np.ndarray:
    """A vector given as a list of numbers or ``[re, im]`` pairs."""
    if not isinstance(obj, list) or not obj:
        raise ParseError("vector must be a non-empty list")
    out = []
    for k, v in enumerate(obj):
        if isinstance(v, list):
            if len(v) != 2:
                raise ParseError(f"vector entry {k} must be a number or [re, im]")
            out.append(complex(_finite(v[0], f"entry {k}"), _finite(v[1], f"entry {k}")))
        else:
            out.append(complex(_finite(v, f"entry {k}")))
    return np.array(out, dtype=np.complex128)


def vector_to_obj(x) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(x, dtype=np.complex128)]
