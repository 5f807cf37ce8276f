"""Dense complex linear algebra substrate.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; the
functions here never modify their inputs. Tolerances are relative to
``max(1, scale)`` throughout.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    NotHermitian,
    NotPSD,
)

HERMITIAN_TOL = 1e-8
PSD_CLAMP_TOL = 1e-8


def as_matrix(T, name: str = "matrix") -> np.ndarray:
    """Coerce ``T`` to a finite 2-D complex128 array."""
    A = np.asarray(T, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D array, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise DomainError(f"{name} has non-finite entries")
    return A


def as_square(T, name: str = "matrix") -> np.ndarray:
    A = as_matrix(T, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    return A


def adjoint(T) -> np.ndarray:
    return as_matrix(T).conj().T.copy()


def spectral_norm(T: np.ndarray) -> float:
    """Largest singular value; internal shortcut without validation."""
    if T.size == 0:
        return 0.0
    try:
        return float(np.linalg.norm(T, 2))
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc


@dataclass(frozen=True)
class HermitianEigen:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        U = self.eigenvectors
        return (U * self.eigenvalues) @ U.conj().T


@dataclass(frozen=True)
class SVDFactors:
    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        m, n = self.left.shape[0], self.right.shape[0]
        k = self.singulars.size
        return (self.left[:, :k] * self.singulars) @ self.right[:, :k].conj().T if k else np.zeros((m, n))


@dataclass(frozen=True)
class PolarFactors:
    unitary: np.ndarray
    modulus: np.ndarray


def hermitian_eigen(H) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    Raises
    ------
    NotHermitian
        If ``||H - H*|| > 1e-8 * max(1, ||H||)``.
    """
    H = as_square(H)
    asym = spectral_norm(H - H.conj().T)
    if asym > HERMITIAN_TOL * max(1.0, spectral_norm(H)):
        raise NotHermitian(f"matrix is not Hermitian (||H - H*|| = {asym:.3e})", asym)
    Hs = 0.5 * (H + H.conj().T)
    try:
        lam, U = np.linalg.eigh(Hs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(f"eigh did not converge: {exc}") from exc
    return HermitianEigen(lam, U)


def svd(T) -> SVDFactors:
    """Full SVD ``T = W diag(s) V*`` with unitary ``W`` and ``V``."""
    T = as_matrix(T)
    try:
        W, s, Vh = np.linalg.svd(T, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return SVDFactors(W, s, Vh.conj().T)


def polar_decompose(T) -> PolarFactors:
    """Polar decomposition ``T = U |T|`` with ``U`` unitary.

    For singular ``T`` the partial isometry is completed to the unitary
    ``W V*`` taken from the SVD, so the factor is always exactly unitary.
    """
    T = as_square(T)
    f = svd(T)
    V = f.right
    modulus = (V * f.singulars) @ V.conj().T
    modulus = 0.5 * (modulus + modulus.conj().T)
    return PolarFactors(f.left @ V.conj().T, modulus)


def psd_apply(H, phi: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Functional calculus ``phi(H)`` for a positive semidefinite ``H``.

    ``phi`` is applied elementwise to the (clamped) eigenvalues. Eigenvalues
    in ``[-1e-8 * max(1, ||H||), 0)`` are treated as round-off and set to 0.
    """
    eig = hermitian_eigen(H)
    lam = eig.eigenvalues
    scale = max(1.0, float(np.max(np.abs(lam))) if lam.size else 0.0)
    if lam.size and lam[0] < -PSD_CLAMP_TOL * scale:
        raise NotPSD(f"matrix is not PSD (min eigenvalue {lam[0]:.3e})", float(lam[0]))
    lam = np.maximum(lam, 0.0)
    with np.errstate(all="ignore"):
        vals = np.asarray(phi(lam), dtype=np.float64)
    if vals.shape != lam.shape:
        vals = np.broadcast_to(vals, lam.shape)
    if not np.all(np.isfinite(vals)):
        raise DomainError("function is undefined on the spectrum")
    U = eig.eigenvectors
    out = (U * vals) @ U.conj().T
    return 0.5 * (out + out.conj().T)


def psd_power(H, a: float) -> np.ndarray:
    """``H**a`` for PSD ``H``; uses the convention ``0**0 = 1``."""
    return psd_apply(H, lambda t: t ** a)


def abs_operator(T) -> np.ndarray:
    """``|T| = (T*T)^(1/2)``, computed from the SVD for accuracy near the kernel."""
    return polar_decompose(T).modulus


def aluthge(T) -> np.ndarray:
    """Aluthge transform ``|T|^(1/2) U |T|^(1/2)``."""
    pf = polar_decompose(T)
    root = psd_power(pf.modulus, 0.5)
    return root @ pf.unitary @ root


def is_psd(H, tol: float = PSD_CLAMP_TOL) -> bool:
    try:
        lam = hermitian_eigen(H).eigenvalues
    except NotHermitian:
        return False
    return bool(lam[0] >= -tol * max(1.0, float(np.max(np.abs(lam)))))


def require_psd(H, name: str = "matrix") -> np.ndarray:
    H = as_square(H, name)
    lam = hermitian_eigen(H).eigenvalues
    if lam[0] < -PSD_CLAMP_TOL * max(1.0, float(np.max(np.abs(lam)))):
        raise NotPSD(f"{name} is not PSD (min eigenvalue {lam[0]:.3e})", float(lam[0]))
    return 0.5 * (H + H.conj().T)


@dataclass(frozen=True)
class BlockMatrix:
    """Grid of dense blocks; ``blocks[i][j]`` has shape ``(row_dims[i], col_dims[j])``."""

    blocks: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_matrix(b, "block") for b in row) for row in self.blocks)
        if not rows or not rows[0]:
            raise DimensionMismatch("block grid must be non-empty")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("block grid rows have unequal lengths")
        for i, r in enumerate(rows):
            for j, b in enumerate(r):
                if b.shape[0] != rows[i][0].shape[0]:
                    raise DimensionMismatch(f"block ({i},{j}) has {b.shape[0]} rows, expected {rows[i][0].shape[0]}")
                if b.shape[1] != rows[0][j].shape[1]:
                    raise DimensionMismatch(f"block ({i},{j}) has {b.shape[1]} cols, expected {rows[0][j].shape[1]}")
        object.__setattr__(self, "blocks", rows)

    @classmethod
    def from_grid(cls, blocks: Sequence[Sequence]) -> "BlockMatrix":
        return cls(tuple(tuple(row) for row in blocks))

    @property
    def grid(self) -> tuple[int, int]:
        return len(self.blocks), len(self.blocks[0])

    @property
    def row_dims(self) -> tuple[int, ...]:
        return tuple(r[0].shape[0] for r in self.blocks)

    @property
    def col_dims(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.blocks[0])

    def is_square_grid(self) -> bool:
        return self.grid[0] == self.grid[1] and self.row_dims == self.col_dims

    def __getitem__(self, ij):
        i, j = ij
        return self.blocks[i][j]


def block_embed(A: BlockMatrix) -> np.ndarray:
    """Materialize a block matrix as one dense matrix."""
    if not isinstance(A, BlockMatrix):
        A = BlockMatrix.from_grid(A)
    return np.block([[b for b in row] for row in A.blocks]).astype(np.complex128)


def inner(A: np.ndarray, x: np.ndarray, y: np.ndarray) -> complex:
    """``<Ax, y> = y* A x``."""
    return complex(np.vdot(y, A @ x))


def quad(H: np.ndarray, x: np.ndarray) -> float:
    """``<Hx, x>`` for Hermitian ``H`` as a real number.

    The imaginary part is checked against ``1e-10 * max(1, ||H||)``.
    """
    z = np.vdot(x, H @ x)
    if abs(z.imag) > 1e-10 * max(1.0, spectral_norm(H)) * max(1.0, float(np.vdot(x, x).real)):
        raise NotHermitian(f"quadratic form has imaginary part {z.imag:.3e}", abs(z.imag))
    return float(z.real)
