"""Pilot-matrix bounds for the numerical radius of operator matrices.

A pilot matrix is a nonnegative scalar matrix whose numerical radius is
claimed to dominate ``w(A)`` for a block operator matrix ``A = [A_ij]``.
Off-diagonal pilot entries are always ``||A_ij||``; the variants differ in
their diagonal.

Diagonal entries that come out negative are kept in ``raw`` (the verdict is
computed from them) and clamped at 0 in
``entries`` with a flag.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import DEFAULT_TOL, VARIANTS, BoundEvaluation, _check_variant, evaluation
from .errors import DimensionMismatch, DomainError
from .linalg import (
    BlockMatrix,
    abs_operator,
    as_square,
    block_embed,
    hermitian_eigen,
    psd_power,
    require_psd,
    spectral_norm,
)
from .radii import numerical_radius
from .scalar import LE, FunctionPair

W_TOL = 1e-12
CLASSICAL = {"hou_du": "eq1.6-houdu", "banidomi_kittaneh": "eq1.6-bk", "abuomar_kittaneh": "eq1.6-aok"}


@dataclass(frozen=True)
class PilotMatrix:
    entries: np.ndarray
    variant: str
    diagonal_detail: tuple = ()
    raw: np.ndarray = None
    flags: tuple = ()

    def __post_init__(self):
        if self.raw is None:
            object.__setattr__(self, "raw", self.entries)

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def radius(self, tol: float = W_TOL) -> float:
        """``w`` of the unclamped pilot, the quantity the bound compares against."""
        return numerical_radius(self.raw, tol).value

    def clamped_radius(self, tol: float = W_TOL) -> float:
        return numerical_radius(self.entries, tol).value

    def to_obj(self) -> dict:
        return {
            "variant": self.variant,
            "entries": self.entries.tolist(),
            "raw": self.raw.tolist(),
            "diagonal_detail": [dict(d) for d in self.diagonal_detail],
            "flags": list(self.flags),
        }


def _as_block(A) -> BlockMatrix:
    return A if isinstance(A, BlockMatrix) else BlockMatrix.from_grid(A)


def _require_square_grid(A: BlockMatrix):
    gr, gc = A.grid
    if gr != gc:
        raise DimensionMismatch(f"block grid must be square, got {gr}x{gc}")
    for i in range(gr):
        if A[i, i].shape[0] != A[i, i].shape[1]:
            raise DimensionMismatch(f"diagonal block {i} is not square: {A[i, i].shape}")


def _require_2x2(A: BlockMatrix):
    _require_square_grid(A)
    if A.grid != (2, 2):
        raise DimensionMismatch(f"this bound needs a 2x2 block grid, got {A.grid}")


def _offdiag_norms(A: BlockMatrix) -> np.ndarray:
    n = A.grid[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                out[i, j] = spectral_norm(A[i, j])
    return out


def _pilot(A: BlockMatrix, variant: str, diag_values, details, allow_clamp=True) -> PilotMatrix:
    raw = _offdiag_norms(A)
    raw[np.diag_indices_from(raw)] = diag_values
    entries = np.maximum(raw, 0.0) if allow_clamp else raw
    flags = tuple(f"clamped_diagonal_{i}" for i, v in enumerate(diag_values) if v < 0)
    return PilotMatrix(entries, variant, tuple(details), raw, flags)


def pilot_classical(A, variant: str) -> PilotMatrix:
    """Classical pilots.

    ``hou_du``: all entries ``||A_ij||``.
    ``banidomi_kittaneh``: diagonal ``(||A_ii|| + ||A_ii^2||^(1/2))/2``.
    ``abuomar_kittaneh``: diagonal ``w(A_ii)``.
    """
    A = _as_block(A)
    _require_square_grid(A)
    n = A.grid[0]
    diag, details = [], []
    for i in range(n):
        B = A[i, i]
        if variant == "hou_du":
            v = spectral_norm(B)
        elif variant == "banidomi_kittaneh":
            v = 0.5 * (spectral_norm(B) + math.sqrt(spectral_norm(B @ B)))
        elif variant == "abuomar_kittaneh":
            v = numerical_radius(B, W_TOL).value
        else:
            raise DomainError(f"unknown classical pilot {variant!r}")
        diag.append(v)
        details.append({"value": v})
    return _pilot(A, CLASSICAL[variant], diag, details)


def _fg_blocks(B: np.ndarray, fp: FunctionPair):
    return abs_operator(B), abs_operator(B.conj().T)


def b_term(B: np.ndarray, fp: FunctionPair) -> float:
    """``||f^2(|B|)|| + ||g^2(|B*|)|| + sqrt((..-..)^2 + 4||f(|B|) g(|B*|)||^2)``."""
    aB, aBs = _fg_blocks(B, fp)
    a = spectral_norm(fp.f_power(aB, 2))
    b = spectral_norm(fp.g_power(aBs, 2))
    c = spectral_norm(fp.f_power(aB, 1) @ fp.g_power(aBs, 1))
    return a + b + math.sqrt((a - b) ** 2 + 4 * c * c)


def pilot_fg(A, fp: FunctionPair) -> PilotMatrix:
    """Pilot with diagonal ``B_ii / 4``."""
    A = _as_block(A)
    _require_square_grid(A)
    diag, details = [], []
    for i in range(A.grid[0]):
        B = b_term(A[i, i], fp)
        diag.append(B / 4)
        details.append({"B": B})
    return _pilot(A, "eq4.4", diag, details)


def d_terms(B: np.ndarray, fp: FunctionPair, variant: str):
    """``(D, d)`` for one diagonal block.

    ``D = (||f^4|| + ||g^4|| + sqrt((||f^4|| - ||g^4||)^2 + 4 X)) / 2`` where
    ``X = ||f^2 g^2||^(1/2)`` for ``as_printed`` or ``||f^2 g^2||^2`` for
    ``canonical``.
    ``d = || |f^2 - ||f^2|| I|^2 + |g^2 - ||g^2|| I|^2 ||``.
    """
    _check_variant(variant)
    aB, aBs = _fg_blocks(B, fp)
    f2, g2 = fp.f_power(aB, 2), fp.g_power(aBs, 2)
    a = spectral_norm(fp.f_power(aB, 4))
    b = spectral_norm(fp.g_power(aBs, 4))
    c = spectral_norm(f2 @ g2)
    X = c ** 2 if variant == "canonical" else math.sqrt(c)
    D = 0.5 * (a + b + math.sqrt((a - b) ** 2 + 4 * X))
    k = B.shape[0]
    F = f2 - spectral_norm(f2) * np.eye(k)
    G = g2 - spectral_norm(g2) * np.eye(k)
    d = spectral_norm(F @ F + G @ G)
    return D, d


def pilot_fg_refined(A, fp: FunctionPair, variant: str = "as_printed") -> PilotMatrix:
    """Pilot with diagonal ``(D_ii - d_ii) / 4``."""
    A = _as_block(A)
    _require_square_grid(A)
    diag, details = [], []
    for i in range(A.grid[0]):
        D, d = d_terms(A[i, i], fp, variant)
        diag.append(0.25 * (D - d))
        details.append({"D": D, "d": d})
    p = _pilot(A, "eq4.7", diag, details)
    return PilotMatrix(p.entries, f"eq4.7/{variant}", p.diagonal_detail, p.raw, p.flags)


def _embedded_radius(A: BlockMatrix) -> float:
    return numerical_radius(block_embed(A), W_TOL).value


def pilot_bound(A, pilot: PilotMatrix, bound_id: str, variant="canonical", tol=DEFAULT_TOL,
                wA: float | None = None) -> BoundEvaluation:
    """``w(A) <= w(pilot)``."""
    A = _as_block(A)
    wA = _embedded_radius(A) if wA is None else wA
    wp = pilot.radius()
    return evaluation(
        bound_id, ("w(A)", "w(pilot)"), (wA, wp), (LE,), 0, variant, tol,
        {"pilot": pilot.to_obj(), "w_clamped_pilot": pilot.clamped_radius()},
        pilot.flags,
    )


def two_by_two_closed_form(e1: float, e2: float, off: float) -> float:
    """``(e1 + e2 + sqrt((e1 - e2)^2 + off^2)) / 4``, the printed 2x2 closed form."""
    return 0.25 * (e1 + e2 + math.sqrt((e1 - e2) ** 2 + off * off))


def pilot_power_2x2(A, alpha: float, variant: str = "as_printed", tol=DEFAULT_TOL) -> BoundEvaluation:
    """2x2 power-split bound built on ``B^_ii(alpha)``.

    ``as_printed``: ``(B11 + B22 + sqrt((B11 - B22)^2 + (||A12|| + ||A21||)^2)) / 4``.
    ``canonical``: the exact ``w`` of the pilot ``[[B11/4, ||A12||], [||A21||, B22/4]]``.
    """
    _check_variant(variant)
    A = _as_block(A)
    _require_2x2(A)
    pilot = pilot_fg(A, FunctionPair.power(alpha))
    B11, B22 = (d["B"] for d in pilot.diagonal_detail)
    off = pilot.raw[0, 1] + pilot.raw[1, 0]
    rhs = two_by_two_closed_form(B11, B22, off) if variant == "as_printed" else pilot.radius()
    return evaluation(
        "eq4.6", ("w(A)", "bound"), (_embedded_radius(A), rhs), (LE,), 0, variant, tol,
        {"B_hat": [B11, B22], "alpha": float(alpha), "pilot": pilot.to_obj()},
    )


def explicit_2x2_refined(A, alpha: float, variant: str = "as_printed", tol=DEFAULT_TOL) -> BoundEvaluation:
    """2x2 bound from ``D~_ii - d~_ii`` with ``f = t^alpha``.

    ``as_printed``: ``((E11 + E22) + sqrt((E11 - E22)^2 + (||A12|| + ||A21||)^2)) / 4``
    with ``E_ii = D~_ii - d~_ii``. ``canonical``: exact ``w`` of
    ``[[E11/4, ||A12||], [||A21||, E22/4]]``.
    """
    _check_variant(variant)
    A = _as_block(A)
    _require_2x2(A)
    # D~ carries the squared cross term in both readings
    pilot = pilot_fg_refined(A, FunctionPair.power(alpha), "canonical")
    E = [d["D"] - d["d"] for d in pilot.diagonal_detail]
    off = pilot.raw[0, 1] + pilot.raw[1, 0]
    rhs = two_by_two_closed_form(E[0], E[1], off) if variant == "as_printed" else pilot.radius()
    return evaluation(
        "cor7", ("w(A)", "bound"), (_embedded_radius(A), rhs), (LE,), 0, variant, tol,
        {"D_tilde": [d["D"] for d in pilot.diagonal_detail], "d_tilde": [d["d"] for d in pilot.diagonal_detail],
         "alpha": float(alpha), "pilot": pilot.to_obj()},
        pilot.flags,
    )


def r_term(B: np.ndarray) -> float:
    """``||B^2||/2 - || | |B| - ||B|| I|^2 + | |B*| - ||B|| I|^2 || / 4``."""
    k = B.shape[0]
    nB = spectral_norm(B)
    F = abs_operator(B) - nB * np.eye(k)
    G = abs_operator(B.conj().T) - nB * np.eye(k)
    return 0.5 * spectral_norm(B @ B) - 0.25 * spectral_norm(F @ F + G @ G)


def explicit_2x2_half(A, variant: str = "as_printed", tol=DEFAULT_TOL) -> BoundEvaluation:
    """2x2 bound from ``R_ii``.

    ``as_printed``: ``(R11 + R22 + sqrt((R11 - R22)^2 + (||A12|| + ||A21||)^2)) / 4``.
    ``canonical``: exact ``w`` of ``[[R11, ||A12||], [||A21||, R22]]``.
    ``detail["comparison"]`` holds this bound next to the Hou-Du and
    Bani-Domi-Kittaneh pilot radii.
    """
    _check_variant(variant)
    A = _as_block(A)
    _require_2x2(A)
    R = [r_term(A[i, i]) for i in range(2)]
    offn = _offdiag_norms(A)
    off = offn[0, 1] + offn[1, 0]
    pilot = _pilot(A, "cor8", R, [{"R": r} for r in R])
    rhs = two_by_two_closed_form(R[0], R[1], off) if variant == "as_printed" else pilot.radius()
    houdu = pilot_classical(A, "hou_du").radius()
    bk = pilot_classical(A, "banidomi_kittaneh").radius()
    return evaluation(
        "cor8", ("w(A)", "bound"), (_embedded_radius(A), rhs), (LE,), 0, variant, tol,
        {"R": R, "pilot": pilot.to_obj(),
         "comparison": {"cor8": rhs, "eq1.6-houdu": houdu, "eq1.6-bk": bk}},
        pilot.flags,
    )


@dataclass(frozen=True)
class PositivityReport:
    min_eigenvalue: float
    block_psd: bool
    samples: int
    sampled_violations: int
    worst_gap: float
    witness: tuple | None = None
    detail: dict = field(default_factory=dict)

    @property
    def sampled_violation(self) -> bool:
        return self.sampled_violations > 0

    @property
    def consistent(self) -> bool:
        """True when the two verdicts agree (the block is PSD iff no pair violates)."""
        return self.block_psd != (self.sampled_violation or self.witness is not None)


def block_positivity_equiv(A, B, C, samples: int = 1000, seed: int = 0, tol: float = 1e-10) -> PositivityReport:
    """Compare ``[[A, C*], [C, B]] >= 0`` with ``|<Cx,y>|^2 <= <Ax,x><By,y>``.

    Pairs tested: ``(e_i, e_i)`` for each basis vector, then ``samples``
    seeded random unit pairs. When the block matrix is not PSD, the bottom
    eigenvector also yields an explicit violating pair (``witness``).
    """
    A = require_psd(A, "A")
    B = require_psd(B, "B")
    C = np.asarray(C, dtype=np.complex128)
    if C.shape != (B.shape[0], A.shape[0]):
        raise DimensionMismatch(f"C must have shape {(B.shape[0], A.shape[0])}, got {C.shape}")
    M = np.block([[A, C.conj().T], [C, B]])
    eig = hermitian_eigen(M)
    lam_min = float(eig.eigenvalues[0])
    scale = max(1.0, spectral_norm(M))
    block_psd = lam_min >= -tol * scale

    n, m = A.shape[0], B.shape[0]
    rng = np.random.Generator(np.random.Philox(key=int(seed) & (2 ** 64 - 1)))
    X = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    Y = rng.standard_normal((samples, m)) + 1j * rng.standard_normal((samples, m))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    k = min(n, m)
    E = np.eye(max(n, m), dtype=np.complex128)
    X = np.vstack([E[:k, :n], X])
    Y = np.vstack([E[:k, :m], Y])
    lhs = np.abs(np.einsum("ki,ij,kj->k", Y.conj(), C, X)) ** 2
    ax = np.einsum("ki,ij,kj->k", X.conj(), A, X).real
    by = np.einsum("ki,ij,kj->k", Y.conj(), B, Y).real
    gap = ax * by - lhs
    bad = gap < -tol * scale * scale

    witness = None
    if not block_psd:
        v = eig.eigenvectors[:, 0]
        u, w = v[:n], v[n:]
        if np.linalg.norm(u) > 0 and np.linalg.norm(w) > 0:
            x, y = u / np.linalg.norm(u), w / np.linalg.norm(w)
            wgap = float(np.vdot(x, A @ x).real * np.vdot(y, B @ y).real - abs(np.vdot(y, C @ x)) ** 2)
            if wgap < 0:
                witness = (x, y, wgap)
    return PositivityReport(lam_min, bool(block_psd), int(X.shape[0]), int(np.sum(bad)), float(np.min(gap)), witness)
