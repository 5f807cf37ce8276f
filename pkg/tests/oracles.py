"""Independent reference computations used to freeze expected values.

Nothing here imports ``opradius``. Running this file rewrites
``tests/data/oracle_w.json``::

    python tests/oracles.py
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

FINE_POINTS = 10 ** 6
COARSE_POINTS = 10 ** 4
DATA = Path(__file__).parent / "data" / "oracle_w.json"


def rotated_top_eigenvalues(T: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """``lambda_max((e^{it} T + e^{-it} T*) / 2)`` for each angle, built entry by entry."""
    out = np.empty(thetas.size)
    for start in range(0, thetas.size, 4096):
        th = thetas[start:start + 4096]
        z = np.exp(1j * th)[:, None, None]
        H = 0.5 * (z * T[None] + np.conj(z) * T.conj().T[None])
        out[start:start + th.size] = np.linalg.eigvalsh(H)[:, -1]
    return out


def grid_numerical_radius(T: np.ndarray, points: int = FINE_POINTS, coarse: int = COARSE_POINTS) -> float:
    """Exact maximum of ``g`` over the uniform ``points``-grid on ``[0, 2 pi)``.

    The coarse grid is a subset of the fine one. Since ``|g'| <= ||T||``, a
    coarse cell whose endpoint values plus ``||T|| * cell / 2`` stay below the
    best coarse value cannot hold the fine maximum and is skipped.
    """
    T = np.asarray(T, dtype=np.complex128)
    assert points % coarse == 0
    step = points // coarse
    fine = 2 * math.pi * np.arange(points) / points
    gc = rotated_top_eigenvalues(T, fine[::step])
    best = float(gc.max())
    lip = float(np.linalg.norm(T, 2))
    cell = 2 * math.pi / coarse
    nxt = np.roll(gc, -1)
    live = np.nonzero(np.maximum(gc, nxt) + lip * cell / 2 >= best)[0]
    for k in live:
        idx = (k * step + np.arange(1, step)) % points
        best = max(best, float(rotated_top_eigenvalues(T, fine[idx]).max()))
    return best


def seeded_ginibre(count: int, seed: int, max_dim: int) -> list:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(2, max_dim + 1))
        out.append((rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2))
    return out


def freeze(count: int = 50, seed: int = 20260101, max_dim: int = 6) -> dict:
    mats = seeded_ginibre(count, seed, max_dim)
    records = []
    for T in mats:
        records.append({
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in T],
            "w_grid": grid_numerical_radius(T),
        })
    return {"points": FINE_POINTS, "seed": seed, "records": records}


def load_matrix(rec) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rec["matrix"]])


if __name__ == "__main__":
    DATA.parent.mkdir(exist_ok=True)
    DATA.write_text(json.dumps(freeze(), indent=1) + "\n")
    print(f"wrote {DATA}")
