"""Seeded random-matrix ensembles.

Every draw is a pure function of ``(spec, index, stream)``. The generator is
numpy's counter-based Philox-4x64 keyed by ``spec.seed``; the trial index and
stream number select a disjoint counter block, so trials can be generated in
any order or in parallel and still come out bit-identical.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .errors import InvalidSpec
from .linalg import BlockMatrix

KINDS = (
    "ginibre",
    "hermitian",
    "psd",
    "unitary",
    "normal",
    "commuting_pair",
    "commuting_pair_eigenbasis",
    "unit_vector",
    "block",
)
BLOCK_KINDS = ("ginibre", "hermitian", "psd", "normal")
_U64 = 2 ** 64


@dataclass(frozen=True)
class EnsembleSpec:
    """Description of a random-matrix distribution.

    ``dim`` may be a fixed size or, through ``max_dim``, the upper end of a
    range ``[dim, max_dim]`` drawn per trial. Block ensembles use ``grid``
    (a square grid size) and draw each block dimension in ``[1, dim]``
    unless ``block_dims`` fixes them.
    """

    kind: str
    dim: int
    scale: float = 1.0
    seed: int = 0
    max_dim: Optional[int] = None
    grid: Optional[int] = None
    block_dims: Optional[tuple] = None
    block_kind: str = "ginibre"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpec(f"unknown ensemble kind {self.kind!r}; expected one of {KINDS}")
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InvalidSpec(f"dim must be a positive integer, got {self.dim!r}")
        if not (isinstance(self.scale, (int, float)) and math.isfinite(self.scale) and self.scale > 0):
            raise InvalidSpec(f"scale must be positive, got {self.scale!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < _U64:
            raise InvalidSpec(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.max_dim is not None and self.max_dim < self.dim:
            raise InvalidSpec("max_dim must be >= dim")
        if self.kind == "block":
            if self.grid is None or self.grid < 1:
                raise InvalidSpec("block ensembles need grid >= 1")
            if self.block_kind not in BLOCK_KINDS:
                raise InvalidSpec(f"block_kind must be one of {BLOCK_KINDS}")
            if self.block_dims is not None:
                dims = tuple(int(d) for d in self.block_dims)
                if len(dims) != self.grid or min(dims) < 1:
                    raise InvalidSpec("block_dims must list one positive size per grid slot")
                object.__setattr__(self, "block_dims", dims)
        object.__setattr__(self, "scale", float(self.scale))

    def to_obj(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in asdict(self).items() if v is not None}

    @classmethod
    def from_obj(cls, obj: dict) -> "EnsembleSpec":
        if not isinstance(obj, dict):
            raise InvalidSpec("ensemble spec must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        extra = set(obj) - known
        if extra:
            raise InvalidSpec(f"unknown ensemble fields: {sorted(extra)}")
        try:
            args = dict(obj)
            if "block_dims" in args and args["block_dims"] is not None:
                args["block_dims"] = tuple(args["block_dims"])
            return cls(**args)
        except TypeError as exc:
            raise InvalidSpec(str(exc)) from exc


def generator(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    """Philox generator for one ``(seed, index, stream)`` substream."""
    if index < 0 or stream < 0:
        raise InvalidSpec("index and stream must be nonnegative")
    bitgen = np.random.Philox(key=int(seed) % _U64, counter=[0, 0, int(index) % _U64, int(stream) % _U64])
    return np.random.Generator(bitgen)


def _ginibre(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / math.sqrt(2.0)


def _haar_unitary(rng, n):
    Q, R = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(R)
    phase = np.where(d == 0, 1.0, d / np.abs(d))
    return Q * phase


def _psd(rng, n):
    G = _ginibre(rng, n)
    P = G.conj().T @ G / n
    return 0.5 * (P + P.conj().T)


def _dim(spec: EnsembleSpec, rng) -> int:
    if spec.max_dim is None:
        return spec.dim
    return int(rng.integers(spec.dim, spec.max_dim + 1))


def _matrix(kind: str, rng, n: int, scale: float) -> np.ndarray:
    if kind == "ginibre":
        return scale * _ginibre(rng, n)
    if kind == "hermitian":
        G = _ginibre(rng, n)
        return scale * 0.5 * (G + G.conj().T)
    if kind == "psd":
        return scale * _psd(rng, n)
    if kind == "unitary":
        return _haar_unitary(rng, n)
    if kind == "normal":
        U = _haar_unitary(rng, n)
        lam = scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2.0)
        return (U * lam) @ U.conj().T
    raise InvalidSpec(f"{kind!r} is not a single-matrix kind")


def _commuting_pair(rng, n, scale, eigenbasis: bool):
    """``T = V P`` and Hermitian ``S`` commuting with ``P = |T|``."""
    V = _haar_unitary(rng, n)
    if eigenbasis:
        W = _haar_unitary(rng, n)
        # repeated eigenvalues on purpose, so degenerate spectra get exercised
        mu = scale * np.abs(rng.standard_normal(n))
        mu[rng.integers(0, n, size=n // 2)] = mu[0]
        P = (W * mu) @ W.conj().T
        s = rng.uniform(-1.0, 1.0, size=n) * scale
        S = (W * s) @ W.conj().T
    else:
        P = scale * _psd(rng, n)
        c = rng.uniform(-1.0, 1.0, size=4)
        I = np.eye(n)
        S = c[0] * I + c[1] * P + c[2] * (P @ P) + c[3] * (P @ P @ P)
    P = 0.5 * (P + P.conj().T)
    S = 0.5 * (S + S.conj().T)
    return V @ P, S


def _block(spec: EnsembleSpec, rng) -> BlockMatrix:
    k = spec.grid
    dims = spec.block_dims or tuple(int(d) for d in rng.integers(1, spec.dim + 1, size=k))
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            if i == j:
                row.append(_matrix(spec.block_kind, rng, dims[i], spec.scale))
            else:
                row.append(spec.scale * _ginibre(rng, dims[i], dims[j]))
        rows.append(row)
    return BlockMatrix.from_grid(rows)


def sample(spec: EnsembleSpec, index: int, stream: int = 0):
    """Draw number ``index`` of ``spec``.

    Returns a matrix, a ``(T, S)`` pair, a unit vector or a
    :class:`BlockMatrix` depending on ``spec.kind``.
    """
    rng = generator(spec.seed, index, stream)
    if spec.kind == "block":
        return _block(spec, rng)
    n = _dim(spec, rng)
    if spec.kind == "unit_vector":
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return v / np.linalg.norm(v)
    if spec.kind in ("commuting_pair", "commuting_pair_eigenbasis"):
        return _commuting_pair(rng, n, spec.scale, spec.kind == "commuting_pair_eigenbasis")
    return _matrix(spec.kind, rng, n, spec.scale)


def unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)
