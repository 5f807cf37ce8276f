"""Numerical radius, spectral radius, operator norm and minimum modulus.

The numerical radius is ``w(T) = max_theta g(theta)`` with
``g(theta) = lambda_max((e^{i theta} T + e^{-i theta} T*) / 2)``; ``g`` is the
support function of the numerical range ``W(T)``. Every sampled ``g(theta)``
is a lower bound on ``w(T)``. Upper bounds come from the supporting lines:
on an angular interval ``[a, b]`` with ``b - a < pi``, ``W(T)`` lies in the
wedge cut out by the two lines ``Re(e^{ia} z) = g(a)`` and
``Re(e^{ib} z) = g(b)``, so ``g`` is dominated on ``[a, b]`` by the support
function of that wedge, which is attained at its apex. The search bisects
every interval whose wedge bound exceeds the best sample by more than
``tol``. If that takes too many samples, a level-set test finishes the
certificate: ``best + tol`` is an upper bound once no angle has it as an
eigenvalue of the rotated Hermitian part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, InvalidTolerance
from .linalg import as_matrix, as_square, spectral_norm

TWO_PI = 2.0 * math.pi
_COARSE_POINTS = 128
_MAX_EVALUATIONS = 4096
_MAX_LEVEL_ITERATIONS = 60


@dataclass(frozen=True)
class RadiusResult:
    value: float
    certified_tolerance: float = 0.0
    maximizer_angle: Optional[float] = None

    def __float__(self):
        return self.value


def _hermitian_parts(T: np.ndarray):
    re = 0.5 * (T + T.conj().T)
    im = -0.5j * (T - T.conj().T)
    return re, im


def support_values(T: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """``g(theta)`` for each angle, batched."""
    re, im = _hermitian_parts(T)
    c = np.cos(thetas)[:, None, None]
    s = np.sin(thetas)[:, None, None]
    # e^{i theta} T + h.c. over 2 = cos(theta) Re T - sin(theta) Im T
    H = c * re - s * im
    return np.linalg.eigvalsh(H)[:, -1]


def _wedge_bounds(a, b, ga, gb):
    """Upper bound for ``g`` on each interval ``[a, b]`` (requires ``b - a < pi``).

    On ``[a, b]`` the wedge support function is ``A cos t + B sin t`` with
    ``t`` measured from the midpoint; this form stays accurate for tiny
    intervals, unlike solving for the apex directly.
    """
    h = 0.5 * (b - a)
    A = (ga + gb) / (2.0 * np.cos(h))
    B = (gb - ga) / (2.0 * np.sin(h))
    t_star = np.arctan2(B, A)
    ends = np.maximum(ga, gb)
    return np.where(np.abs(t_star) <= h, np.maximum(np.hypot(A, B), ends), ends)


def level_crossings(T: np.ndarray, gamma: float, unimodular_tol: float = 1e-6) -> np.ndarray:
    """Angles ``theta`` at which ``gamma`` is an eigenvalue of ``H(theta)``.

    With ``z = e^{i theta}``, ``det(H(theta) - gamma I) = 0`` is the quadratic
    eigenvalue problem ``det(z^2 T - 2 gamma z I + T*) = 0``; its unimodular
    roots are the crossings. Spurious near-unimodular roots only cost extra
    evaluations of ``g``.
    """
    n = T.shape[0]
    I = np.eye(n)
    Z = np.zeros((n, n))
    left = np.block([[Z, I], [-T.conj().T, 2.0 * gamma * I]])
    right = np.block([[I, Z], [Z, T]])
    z = scipy.linalg.eigvals(left, right)
    z = z[np.isfinite(z)]
    z = z[np.abs(np.abs(z) - 1.0) <= unimodular_tol]
    return np.sort(np.mod(np.angle(z), TWO_PI))


def _level_set_refine(T, best, best_theta, tol):
    """Raise ``best`` until the level ``best + tol`` is never crossed.

    Returns ``(best, best_theta, certified)``.
    """
    for _ in range(_MAX_LEVEL_ITERATIONS):
        theta = level_crossings(T, best + tol)
        if theta.size == 0:
            return best, best_theta, True
        nxt = np.append(theta[1:], theta[0] + TWO_PI)
        probe = np.mod(np.concatenate([theta, 0.5 * (theta + nxt)]), TWO_PI)
        g = support_values(T, probe)
        k = int(np.argmax(g))
        if g[k] <= best:
            return best, best_theta, False
        best, best_theta = float(g[k]), float(probe[k])
    return best, best_theta, False


def numerical_radius(T, tol: float = 1e-10) -> RadiusResult:
    """Numerical radius ``w(T)``, certified to within ``tol``.

    The returned value is the best sampled ``g(theta)``, hence never above
    ``w(T)`` beyond eigenvalue round-off, and satisfies
    ``w(T) - certified_tolerance <= value``, normally with
    ``certified_tolerance <= tol``. A uniform grid is refined by
    wedge-bounded bisection; when that needs too many samples (round numerical
    ranges make every angle nearly optimal) a level-set test of
    ``best + tol`` finishes the certificate.

    Raises
    ------
    InvalidTolerance
        If ``tol <= 0``.
    """
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidTolerance(f"tol must be positive, got {tol}")
    T = as_square(T)
    if T.shape[0] == 1:
        return RadiusResult(abs(complex(T[0, 0])), 0.0, float(np.mod(-np.angle(T[0, 0]), TWO_PI)))
    if not np.any(T):
        return RadiusResult(0.0, 0.0, 0.0)

    thetas = np.linspace(0.0, TWO_PI, _COARSE_POINTS, endpoint=False)
    g = support_values(T, thetas)
    best_i = int(np.argmax(g))
    best, best_theta = float(g[best_i]), float(thetas[best_i])

    a = thetas
    b = np.append(thetas[1:], TWO_PI)
    ga = g
    gb = np.append(g[1:], g[0])
    dropped = -math.inf
    evaluations = _COARSE_POINTS

    while True:
        ub = _wedge_bounds(a, b, ga, gb)
        keep = ub > best + tol
        if np.any(~keep):
            dropped = max(dropped, float(np.max(ub[~keep])))
        if not np.any(keep):
            return RadiusResult(max(best, 0.0), max(0.0, dropped - best), best_theta)
        a, b, ga, gb = a[keep], b[keep], ga[keep], gb[keep]
        if evaluations + a.size > _MAX_EVALUATIONS:
            break
        mid = 0.5 * (a + b)
        gm = support_values(T, mid)
        evaluations += mid.size
        k = int(np.argmax(gm))
        if gm[k] > best:
            best, best_theta = float(gm[k]), float(mid[k])
        a, b, ga, gb = (
            np.concatenate([a, mid]),
            np.concatenate([mid, b]),
            np.concatenate([ga, gm]),
            np.concatenate([gm, gb]),
        )

    live_ub = float(np.max(_wedge_bounds(a, b, ga, gb)))
    best, best_theta, certified = _level_set_refine(T, best, best_theta, tol)
    if certified:
        return RadiusResult(max(best, 0.0), tol, best_theta)
    # the level-set test stalled; fall back to the wedge certificate, which may exceed tol
    cert = max(live_ub, dropped) - best
    return RadiusResult(max(best, 0.0), max(cert, 0.0), best_theta)


def numerical_radius_value(T, tol: float = 1e-10) -> float:
    return numerical_radius(T, tol).value


def spectral_radius(T) -> RadiusResult:
    """Largest eigenvalue modulus (general dense eigenvalue solver)."""
    T = as_square(T)
    if T.shape[0] == 1:
        return RadiusResult(abs(complex(T[0, 0])))
    try:
        lam = np.linalg.eigvals(T)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    return RadiusResult(float(np.max(np.abs(lam))))


def operator_norm(T) -> RadiusResult:
    T = as_matrix(T)
    return RadiusResult(spectral_norm(T))


def min_modulus(T) -> RadiusResult:
    """``inf ||Tx||`` over unit ``x``: the smallest singular value.

    For a wide matrix (more columns than rows) the kernel is non-trivial and
    the infimum is 0.
    """
    T = as_matrix(T)
    if T.shape[1] > T.shape[0]:
        return RadiusResult(0.0)
    try:
        s = np.linalg.svd(T, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"SVD did not converge: {exc}") from exc
    return RadiusResult(float(s[-1]))


def numerical_range_boundary(T, points: int = 360) -> np.ndarray:
    """Boundary points ``<T x_theta, x_theta>`` of ``W(T)``.

    ``x_theta`` is a unit top eigenvector of the rotated Hermitian part at
    each of ``points`` uniformly spaced angles.
    """
    T = as_square(T)
    if int(points) != points or points < 3:
        raise ValueError("points must be an integer >= 3")
    thetas = np.linspace(0.0, TWO_PI, int(points), endpoint=False)
    re, im = _hermitian_parts(T)
    H = np.cos(thetas)[:, None, None] * re - np.sin(thetas)[:, None, None] * im
    _, vecs = np.linalg.eigh(H)
    x = vecs[:, :, -1]
    Tx = np.einsum("ij,kj->ki", T, x)
    return np.einsum("ki,ki->k", x.conj(), Tx)
