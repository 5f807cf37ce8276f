from pathlib import Path

import numpy as np
import pytest

FIXTURES = Path(__file__).parent / "fixtures"

J2 = np.array([[0, 1], [0, 0]], dtype=complex)
D14 = np.diag([1.0, 4.0]).astype(complex)
H2 = np.array([[2, 1], [1, 2]], dtype=complex)
N3 = np.diag([1, 1j, -2])
U_VEC = np.array([1, 1], dtype=complex) / np.sqrt(2)
E1 = np.array([1, 0], dtype=complex)
E2 = np.array([0, 1], dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)


def scalar_blocks(M):
    """Grid of 1x1 blocks holding the entries of ``M``."""
    return [[np.array([[v]], dtype=complex) for v in row] for row in np.asarray(M)]


def random_matrix(rng, n, kind="ginibre"):
    G = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    if kind == "hermitian":
        return 0.5 * (G + G.conj().T)
    if kind == "psd":
        return G.conj().T @ G / n
    if kind == "unitary":
        Q, R = np.linalg.qr(G)
        return Q * (np.diag(R) / np.abs(np.diag(R)))
    return G


def random_unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / f"{name}.json")
