"""Vector-level inequalities evaluated as term chains.

A :class:`TermChain` is an ordered list of labelled real terms joined by
``<=``, ``>=`` or ``=``. Each relation has a signed slack (positive when it
holds with room to spare), so a chain can be checked at any tolerance and
its failures measured rather than merely detected.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    CommutationViolated,
    DimensionMismatch,
    DomainError,
    ExponentTooSmall,
    NonpositiveExponent,
)
from .linalg import (
    abs_operator,
    as_square,
    hermitian_eigen,
    inner,
    psd_apply,
    quad,
    require_psd,
    spectral_norm,
)
from .radii import spectral_radius

LE, GE, EQ = "<=", ">=", "="
_RELATIONS = (LE, GE, EQ)
COMMUTATION_TOL = 1e-8


@dataclass(frozen=True)
class TermChain:
    labels: tuple
    values: tuple
    relations: tuple
    source: str
    detail: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.values) or len(self.relations) != len(self.values) - 1:
            raise ValueError("labels/values/relations lengths are inconsistent")
        if any(r not in _RELATIONS for r in self.relations):
            raise ValueError(f"relations must be among {_RELATIONS}")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def slacks(self) -> tuple:
        out = []
        for r, u, v in zip(self.relations, self.values, self.values[1:]):
            if r == LE:
                out.append(v - u)
            elif r == GE:
                out.append(u - v)
            else:
                out.append(-abs(u - v))
        return tuple(out)

    @property
    def scale(self) -> float:
        return max([1.0] + [abs(v) for v in self.values if math.isfinite(v)])

    @property
    def worst_slack(self) -> float:
        s = self.slacks
        return min(s) if s else 0.0

    def satisfied(self, tol: float = 0.0) -> bool:
        """True iff every relation holds within ``tol * scale``."""
        return all(s >= -tol * self.scale for s in self.slacks)

    def to_obj(self) -> dict:
        return {
            "source": self.source,
            "labels": list(self.labels),
            "values": list(self.values),
            "relations": list(self.relations),
            "slacks": list(self.slacks),
        }

    def __str__(self):
        parts = [f"{self.labels[0]}={self.values[0]:.6g}"]
        for r, lab, v in zip(self.relations, self.labels[1:], self.values[1:]):
            parts.append(f" {r} {lab}={v:.6g}")
        return f"[{self.source}] " + "".join(parts)


@dataclass(frozen=True)
class FunctionPair:
    """Pair ``(f, g)`` of nonnegative functions on ``[0, inf)`` with ``f(t) g(t) = t``.

    Use :meth:`power` for the split ``t^alpha, t^(1-alpha)`` or
    :meth:`custom` for arbitrary vectorized callables, which are validated on
    each spectrum they are applied to.
    """

    kind: str
    alpha: Optional[float] = None
    f: Optional[Callable] = None
    g: Optional[Callable] = None

    @classmethod
    def power(cls, alpha: float) -> "FunctionPair":
        alpha = float(alpha)
        if not 0.0 <= alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
        return cls("power", alpha=alpha)

    @classmethod
    def custom(cls, f: Callable, g: Callable) -> "FunctionPair":
        return cls("custom", f=f, g=g)

    def validate(self, t: np.ndarray) -> None:
        if self.kind == "power":
            return
        t = np.maximum(np.asarray(t, dtype=float), 0.0)
        with np.errstate(all="ignore"):
            fv = np.asarray(self.f(t), dtype=float)
            gv = np.asarray(self.g(t), dtype=float)
        if not (np.all(np.isfinite(fv)) and np.all(np.isfinite(gv))):
            raise DomainError("f or g is not finite on the spectrum")
        if np.any(fv < 0) or np.any(gv < 0):
            raise DomainError("f and g must be nonnegative")
        if np.any(np.abs(fv * gv - t) > 1e-8 * np.maximum(1.0, t)):
            raise DomainError("f(t) g(t) != t on the spectrum")

    def f_power(self, H, k: float) -> np.ndarray:
        """``f(H)**k`` for PSD ``H``."""
        return self._apply(H, k, first=True)

    def g_power(self, H, k: float) -> np.ndarray:
        return self._apply(H, k, first=False)

    def _apply(self, H, k, first):
        if self.kind == "power":
            e = self.alpha if first else 1.0 - self.alpha
            return psd_apply(H, lambda t: t ** (e * k))
        self.validate(hermitian_eigen(H).eigenvalues)
        fn = self.f if first else self.g
        return psd_apply(H, lambda t: np.asarray(fn(t), dtype=float) ** k)

    def to_obj(self) -> dict:
        if self.kind == "power":
            return {"kind": "power", "alpha": self.alpha}
        return {"kind": "custom"}


def as_unit_vector(x, dim: Optional[int] = None, name: str = "x") -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if abs(float(np.linalg.norm(v)) - 1.0) > 1e-12:
        raise DomainError(f"{name} must be a unit vector (norm {np.linalg.norm(v):.15g})")
    if dim is not None and v.size != dim:
        raise DimensionMismatch(f"{name} has dimension {v.size}, expected {dim}")
    return v


def check_commutation(T, S, tol: float = COMMUTATION_TOL) -> float:
    """Return ``|| |T|S - S*|T| ||``; raise if it exceeds ``tol * max(1, ||T|| ||S||)``."""
    T = as_square(T, "T")
    S = as_square(S, "S")
    if T.shape != S.shape:
        raise DimensionMismatch("T and S must have the same shape")
    aT = abs_operator(T)
    res = spectral_norm(aT @ S - S.conj().T @ aT)
    if res > tol * max(1.0, spectral_norm(T) * spectral_norm(S)):
        raise CommutationViolated(f"|T|S != S*|T| (residual {res:.3e})", res)
    return res


def deviation_term(A: np.ndarray, x: np.ndarray, p: float) -> float:
    """``< |A - <Ax,x> I|^p x, x >`` for Hermitian ``A``."""
    m = quad(A, x)
    eig = hermitian_eigen(A - m * np.eye(A.shape[0]))
    U = eig.eigenvectors
    c = U.conj().T @ x
    return float(np.sum(np.abs(eig.eigenvalues) ** p * np.abs(c) ** 2))


def refined_form(A: np.ndarray, x: np.ndarray, p: float):
    """``(<A^p x,x> - <|A - <Ax,x>|^p x,x>, <A^p x,x>)`` for PSD ``A``."""
    Ap = psd_apply(A, lambda t: t ** p)
    top = quad(Ap, x)
    return top - deviation_term(A, x, p), top


def _check_p(p, minimum=None):
    p = float(p)
    if not p > 0:
        raise NonpositiveExponent(f"p must be positive, got {p}")
    if minimum is not None and p < minimum:
        raise ExponentTooSmall(f"p must be >= {minimum}, got {p}")
    return p


def mccarty_chain(A, x, p: float) -> TermChain:
    """``<Ax,x>^p  ?  <A^p x,x> - <|A - <Ax,x>|^p x,x>  <=  <A^p x,x>``.

    The first relation is ``<=`` for ``p >= 2`` and ``>=`` for ``0 < p < 2``.
    """
    p = _check_p(p)
    A = require_psd(A, "A")
    x = as_unit_vector(x, A.shape[0])
    m = quad(A, x)
    middle, top = refined_form(A, x, p)
    rel = LE if p >= 2 else GE
    source = "eq3.1" if p >= 2 else "eq3.2"
    return TermChain(
        ("<Ax,x>^p", "refined", "<A^p x,x>"),
        (max(m, 0.0) ** p, middle, top),
        (rel, LE),
        source,
        {"p": p},
    )


def mccarty_concave_chain(A, x, p: float) -> TermChain:
    """``<Ax,x>^p >= <A^p x,x> >= refined`` for ``0 < p <= 1``."""
    p = _check_p(p)
    if p > 1:
        raise DomainError(f"the McCarty chain needs 0 < p <= 1, got {p}")
    A = require_psd(A, "A")
    x = as_unit_vector(x, A.shape[0])
    m = quad(A, x)
    middle, top = refined_form(A, x, p)
    return TermChain(
        ("<Ax,x>^p", "<A^p x,x>", "refined"),
        (max(m, 0.0) ** p, top, middle),
        (GE, GE),
        "eq.mc",
        {"p": p},
    )


def schwarz_refined_chain(A, x, y, p: float) -> TermChain:
    """Refined Cauchy-Schwarz: ``|<Ax,y>|^{2p} <= R_x R_y <= <A^p x,x><A^p y,y>``."""
    p = _check_p(p, 2.0)
    A = require_psd(A, "A")
    n = A.shape[0]
    x = as_unit_vector(x, n)
    y = as_unit_vector(y, n, "y")
    rx, tx = refined_form(A, x, p)
    ry, ty = refined_form(A, y, p)
    return TermChain(
        ("|<Ax,y>|^2p", "R_x R_y", "<A^p x,x><A^p y,y>"),
        (abs(inner(A, x, y)) ** (2 * p), rx * ry, tx * ty),
        (LE, LE),
        "eq3.3",
        {"p": p},
    )


def mixed_schwarz_chain(T, x, y, alpha: float) -> TermChain:
    """``|<Tx,y>|^2 <= <|T|^{2a} x,x> <|T*|^{2(1-a)} y,y>`` (``0**0 = 1``)."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    T = as_square(T, "T")
    n = T.shape[0]
    x = as_unit_vector(x, n)
    y = as_unit_vector(y, n, "y")
    aT = abs_operator(T)
    aTs = abs_operator(T.conj().T)
    left = quad(psd_apply(aT, lambda t: t ** (2 * alpha)), x)
    right = quad(psd_apply(aTs, lambda t: t ** (2 * (1 - alpha))), y)
    return TermChain(
        ("|<Tx,y>|^2", "<|T|^2a x,x><|T*|^2(1-a) y,y>"),
        (abs(inner(T, x, y)) ** 2, left * right),
        (LE,),
        "eq2.2",
        {"alpha": alpha},
    )


def mixed_schwarz_refined_chain(T, x, y, p: float) -> TermChain:
    """Refined mixed Schwarz with ``|T|`` and ``|T*|`` deviation subtractions."""
    p = _check_p(p, 2.0)
    T = as_square(T, "T")
    n = T.shape[0]
    x = as_unit_vector(x, n)
    y = as_unit_vector(y, n, "y")
    rx, tx = refined_form(abs_operator(T), x, p)
    ry, ty = refined_form(abs_operator(T.conj().T), y, p)
    return TermChain(
        ("|<Tx,y>|^2p", "R(|T|,x) R(|T*|,y)", "<|T|^p x,x><|T*|^p y,y>"),
        (abs(inner(T, x, y)) ** (2 * p), rx * ry, tx * ty),
        (LE, LE),
        "eq3.4",
        {"p": p},
    )


def numerical_form_chain(T, x, p: float, variant: str = "canonical") -> TermChain:
    """Diagonal (``y = x``) reading of the refined mixed Schwarz chain.

    ``canonical``: ``|<Tx,x>| <= (R(|T|,x) R(|T*|,x))^{1/2p}``.
    ``as_printed``: ``|<Tx,x>| <= R(|T|,x)^{1/p}``, which drops the ``|T*|``
    factor and is not scale-consistent.
    """
    p = _check_p(p, 2.0)
    T = as_square(T, "T")
    x = as_unit_vector(x, T.shape[0])
    lhs = abs(inner(T, x, x))
    rx, _ = refined_form(abs_operator(T), x, p)
    if variant == "as_printed":
        rhs = max(rx, 0.0) ** (1.0 / p)
    elif variant == "canonical":
        ry, _ = refined_form(abs_operator(T.conj().T), x, p)
        rhs = max(rx * ry, 0.0) ** (1.0 / (2 * p))
    else:
        raise DomainError(f"unknown variant {variant!r}")
    return TermChain(("|<Tx,x>|", "bound"), (lhs, rhs), (LE,), "eq3.5", {"p": p, "variant": variant})


def kittaneh_fg_chain(T, S, x, y, fp: FunctionPair) -> TermChain:
    """``|<TSx,y>| <= r(S) ||f(|T|)x|| ||g(|T*|)y||`` under ``|T|S = S*|T|``."""
    T = as_square(T, "T")
    S = as_square(S, "S")
    residual = check_commutation(T, S)
    n = T.shape[0]
    x = as_unit_vector(x, n)
    y = as_unit_vector(y, n, "y")
    fx = np.linalg.norm(fp.f_power(abs_operator(T), 1) @ x)
    gy = np.linalg.norm(fp.g_power(abs_operator(T.conj().T), 1) @ y)
    rS = spectral_radius(S).value
    return TermChain(
        ("|<TSx,y>|", "r(S)||f(|T|)x|| ||g(|T*|)y||"),
        (abs(inner(T @ S, x, y)), rS * fx * gy),
        (LE,),
        "kittaneh.ineq",
        {"commutation_residual": residual, **fp.to_obj()},
    )


def _fg_refined_factor(F2: np.ndarray, F2p: np.ndarray, x: np.ndarray, p: float):
    """``(<F^{2p}x,x> - <|F^2 - <F^2x,x>|^p x,x>,  <F^{2p}x,x>)``."""
    top = quad(F2p, x)
    return top - deviation_term(F2, x, p), top


def kittaneh_fg_refined_chain(T, S, x, y, fp: FunctionPair, p: float) -> TermChain:
    """Refined Kittaneh chain with ``2p``-th roots of the deviation-corrected forms."""
    p = _check_p(p, 2.0)
    T = as_square(T, "T")
    S = as_square(S, "S")
    residual = check_commutation(T, S)
    n = T.shape[0]
    x = as_unit_vector(x, n)
    y = as_unit_vector(y, n, "y")
    aT = abs_operator(T)
    aTs = abs_operator(T.conj().T)
    fx, fx_top = _fg_refined_factor(fp.f_power(aT, 2), fp.f_power(aT, 2 * p), x, p)
    gy, gy_top = _fg_refined_factor(fp.g_power(aTs, 2), fp.g_power(aTs, 2 * p), y, p)
    rS = spectral_radius(S).value
    root = 1.0 / (2 * p)
    return TermChain(
        ("|<TSx,y>|", "r(S) refined_f^(1/2p) refined_g^(1/2p)", "r(S) <f^2p x,x>^(1/2p) <g^2p y,y>^(1/2p)"),
        (
            abs(inner(T @ S, x, y)),
            rS * max(fx, 0.0) ** root * max(gy, 0.0) ** root,
            rS * max(fx_top, 0.0) ** root * max(gy_top, 0.0) ** root,
        ),
        (LE, LE),
        "eq3.6",
        {"p": p, "commutation_residual": residual, **fp.to_obj()},
    )


def power_refined_chain(T, S, x, y, alpha: float, p: float, variant: str = "canonical") -> TermChain:
    """Refined Kittaneh chain for the split ``t^alpha, t^(1-alpha)``.

    ``canonical`` evaluates the ``|T*|`` factor at ``y``. ``as_printed``
    evaluates it at ``x`` while the left side still uses ``y``.
    """
    if variant not in ("canonical", "as_printed"):
        raise DomainError(f"unknown variant {variant!r}")
    fp = FunctionPair.power(alpha)
    chain = kittaneh_fg_refined_chain(T, S, x, y, fp, p)
    if variant == "as_printed":
        rhs = kittaneh_fg_refined_chain(T, S, x, x, fp, p)
        chain = TermChain(chain.labels, (chain.values[0],) + rhs.values[1:], chain.relations, chain.source, rhs.detail)
    return TermChain(chain.labels, chain.values, chain.relations, "eq3.7", {**chain.detail, "variant": variant})
