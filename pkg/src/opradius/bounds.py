"""Whole-operator numerical radius and norm bounds.

Each function returns a :class:`BoundEvaluation` holding the full chain of
terms. Bounds with two readings take a ``variant`` argument:
``"canonical"`` is the form obtained by specializing the general product
bound, ``"as_printed"`` is the alternative literal form, kept so that it
can be tested and falsified.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DomainError
from .linalg import (
    abs_operator,
    aluthge,
    as_square,
    hermitian_eigen,
    psd_power,
    require_psd,
    spectral_norm,
)
from .radii import numerical_radius, spectral_radius
from .scalar import LE, FunctionPair, TermChain, _check_p, check_commutation

W_TOL = 1e-12
DEFAULT_TOL = 1e-9
VARIANTS = ("canonical", "as_printed")


@dataclass(frozen=True)
class BoundEvaluation:
    bound_id: str
    lhs: float
    rhs_terms: tuple
    slack: float
    holds: bool
    variant: str
    chain: TermChain
    detail: dict = field(default_factory=dict, compare=False)
    flags: tuple = ()

    @property
    def worst_slack(self) -> float:
        return self.chain.worst_slack

    @property
    def scale(self) -> float:
        return self.chain.scale

    @property
    def bound_value(self) -> float:
        return self.rhs_terms[0]

    def to_obj(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "variant": self.variant,
            "lhs": self.lhs,
            "rhs_terms": list(self.rhs_terms),
            "slack": self.slack,
            "holds": self.holds,
            "chain": self.chain.to_obj(),
            "detail": _plain(self.detail),
            "flags": list(self.flags),
        }


def _plain(obj):
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def evaluation(bound_id, labels, values, relations, lhs_index, variant="canonical",
               tol=DEFAULT_TOL, detail=None, flags=()) -> BoundEvaluation:
    chain = TermChain(tuple(labels), tuple(values), tuple(relations), bound_id, detail or {})
    lhs = chain.values[lhs_index]
    rhs = chain.values[lhs_index + 1:]
    return BoundEvaluation(
        bound_id, lhs, rhs, rhs[0] - lhs, chain.satisfied(tol), variant, chain, detail or {}, tuple(flags)
    )


def _check_variant(variant):
    if variant not in VARIANTS:
        raise DomainError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _w(T):
    return numerical_radius(T, W_TOL).value


def bound_sandwich(T, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``||T||/2 <= w(T) <= ||T||``."""
    T = as_square(T)
    n = spectral_norm(T)
    return evaluation("eq1.1", ("||T||/2", "w(T)", "||T||"), (n / 2, _w(T), n), (LE, LE), 1, tol=tol)


def kittaneh_2003_value(T) -> float:
    return 0.5 * (spectral_norm(T) + math.sqrt(spectral_norm(T @ T)))


def bound_kittaneh_2003(T, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``w(T) <= (||T|| + ||T^2||^(1/2)) / 2``."""
    T = as_square(T)
    return evaluation("eq1.2", ("w(T)", "(||T||+||T^2||^1/2)/2"), (_w(T), kittaneh_2003_value(T)), (LE,), 0, tol=tol)


def bound_kittaneh_2005(T, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``||T*T + TT*||/4 <= w(T)^2 <= ||T*T + TT*||/2``."""
    T = as_square(T)
    Th = T.conj().T
    m = spectral_norm(Th @ T + T @ Th)
    return evaluation(
        "eq1.3", ("||T*T+TT*||/4", "w(T)^2", "||T*T+TT*||/2"), (m / 4, _w(T) ** 2, m / 2), (LE, LE), 1, tol=tol
    )


def bound_yamazaki(T, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``w(T) <= (||T|| + w(T~))/2 <= (||T|| + ||T^2||^(1/2))/2`` with ``T~`` the Aluthge transform."""
    T = as_square(T)
    n = spectral_norm(T)
    wa = _w(aluthge(T))
    return evaluation(
        "eq1.4",
        ("w(T)", "(||T||+w(aluthge))/2", "(||T||+||T^2||^1/2)/2"),
        (_w(T), 0.5 * (n + wa), kittaneh_2003_value(T)),
        (LE, LE),
        0,
        tol=tol,
        detail={"w_aluthge": wa},
    )


def bound_dragomir(T, variant="canonical", tol=DEFAULT_TOL) -> BoundEvaluation:
    """``w(T)^2 <= (||T||^2 + w(T^2))/2``; ``as_printed`` uses ``||T||`` unsquared."""
    _check_variant(variant)
    T = as_square(T)
    n = spectral_norm(T)
    w2 = _w(T @ T)
    first = n * n if variant == "canonical" else n
    label = "(||T||^2+w(T^2))/2" if variant == "canonical" else "(||T||+w(T^2))/2"
    return evaluation("eq1.5", ("w(T)^2", label), (_w(T) ** 2, 0.5 * (first + w2)), (LE,), 0, variant, tol)


def spectral_radius_product_bound(A, B, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``r(AB) <= (||AB|| + ||BA|| + sqrt((||AB||-||BA||)^2 + 4 min(||A|| ||BAB||, ||B|| ||ABA||)))/4``."""
    A = as_square(A, "A")
    B = as_square(B, "B")
    if A.shape != B.shape:
        raise DomainError("A and B must have the same shape")
    ab, ba = spectral_norm(A @ B), spectral_norm(B @ A)
    cross = min(spectral_norm(A) * spectral_norm(B @ A @ B), spectral_norm(B) * spectral_norm(A @ B @ A))
    rhs = 0.25 * (ab + ba + math.sqrt((ab - ba) ** 2 + 4 * cross))
    return evaluation("fact3", ("r(AB)", "bound"), (spectral_radius(A @ B).value, rhs), (LE,), 0, tol=tol)


def norm_sum_estimate(A, B, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``||A+B|| <= (||A|| + ||B|| + sqrt((||A||-||B||)^2 + 4||A^1/2 B^1/2||^2))/2`` for PSD ``A, B``."""
    A = require_psd(A, "A")
    B = require_psd(B, "B")
    a, b = spectral_norm(A), spectral_norm(B)
    c = spectral_norm(psd_power(A, 0.5) @ psd_power(B, 0.5))
    rhs = 0.5 * (a + b + math.sqrt((a - b) ** 2 + 4 * c * c))
    return evaluation("fact1", ("||A+B||", "bound"), (spectral_norm(A + B), rhs), (LE,), 0, tol=tol)


def norm_halfpower_estimate(A, B, tol=DEFAULT_TOL) -> BoundEvaluation:
    """``||A^1/2 B^1/2|| <= ||AB||^1/2`` for PSD ``A, B``."""
    A = require_psd(A, "A")
    B = require_psd(B, "B")
    lhs = spectral_norm(psd_power(A, 0.5) @ psd_power(B, 0.5))
    return evaluation("fact2", ("||A^1/2 B^1/2||", "||AB||^1/2"), (lhs, math.sqrt(spectral_norm(A @ B))), (LE,), 0, tol=tol)


def _abs_pair(T):
    return abs_operator(T), abs_operator(T.conj().T)


def _s_factors(S):
    r = spectral_radius(S).value
    relax = 0.5 * (spectral_norm(S) + math.sqrt(spectral_norm(S @ S)))
    return r, relax


def _min_abs_eig_power(M, p):
    """``l(|M|^p)`` for Hermitian ``M``: smallest ``|eigenvalue|^p``."""
    lam = hermitian_eigen(M).eigenvalues
    return float(np.min(np.abs(lam))) ** p


def _fg_bracket(F1, Fp, F2, p):
    """``||F^p||^2 - l(|F^2 - ||F||^2 I|^p)`` where ``F1 = F``, ``Fp = F^p``, ``F2 = F^2``."""
    c = spectral_norm(F1) ** 2
    ell = _min_abs_eig_power(F2 - c * np.eye(F2.shape[0]), p)
    return spectral_norm(Fp) ** 2 - ell, ell


def _prep_product(T, S, p):
    p = _check_p(p, 2.0)
    T = as_square(T, "T")
    S = as_square(S, "S")
    residual = check_commutation(T, S)
    return T, S, p, residual


def product_bound_fg(T, S, fp: FunctionPair, p: float, tol=DEFAULT_TOL, bound_id="eq4.1") -> BoundEvaluation:
    """Product bound ``w(TS) <= r(S) [.]^{1/2p} [.]^{1/2p} <= (||S||+||S^2||^1/2)/2 [.]^{1/2p} [.]^{1/2p}``.

    Negative brackets (possible only through round-off) are clamped at 0
    and flagged.
    """
    T, S, p, residual = _prep_product(T, S, p)
    aT, aTs = _abs_pair(T)
    bf, ell_f = _fg_bracket(fp.f_power(aT, 1), fp.f_power(aT, p), fp.f_power(aT, 2), p)
    bg, ell_g = _fg_bracket(fp.g_power(aTs, 1), fp.g_power(aTs, p), fp.g_power(aTs, 2), p)
    flags = []
    if bf < 0:
        flags.append("clamped_f_bracket")
    if bg < 0:
        flags.append("clamped_g_bracket")
    factor = max(bf, 0.0) ** (1 / (2 * p)) * max(bg, 0.0) ** (1 / (2 * p))
    r, relax = _s_factors(S)
    return evaluation(
        bound_id,
        ("w(TS)", "r(S) F G", "(||S||+||S^2||^1/2)/2 F G"),
        (_w(T @ S), r * factor, relax * factor),
        (LE, LE),
        0,
        tol=tol,
        detail={"f_bracket": bf, "g_bracket": bg, "ell_f": ell_f, "ell_g": ell_g, "r_S": r,
                "relaxed_r_S": relax, "p": p, "commutation_residual": residual, **fp.to_obj()},
        flags=flags,
    )


def product_bound_power(T, S, alpha: float, p: float, variant="canonical", tol=DEFAULT_TOL,
                        bound_id="eq4.2") -> BoundEvaluation:
    """Power-split specialization of :func:`product_bound_fg`.

    ``as_printed`` uses the literal alternative brackets
    ``|| |T|^{p a} ||^2 - l^2(| |T|^{2a} - || |T|^a || I |^{p/2})`` and the
    trailing term ``r(S) || |T|^{pa} ||^{1/p} || |T*|^{p(1-a)} ||^{1/p}``.
    """
    _check_variant(variant)
    fp = FunctionPair.power(alpha)
    if variant == "canonical":
        return replace(product_bound_fg(T, S, fp, p, tol, bound_id), variant=variant)
    T, S, p, residual = _prep_product(T, S, p)
    a = fp.alpha
    aT, aTs = _abs_pair(T)

    def bracket(M, e):
        top = spectral_norm(psd_power(M, p * e))
        shifted = psd_power(M, 2 * e) - spectral_norm(psd_power(M, e)) * np.eye(M.shape[0])
        ell = _min_abs_eig_power(shifted, p / 2)
        return top ** 2 - ell ** 2, top

    bf, nf = bracket(aT, a)
    bg, ng = bracket(aTs, 1 - a)
    flags = [name for name, v in (("clamped_f_bracket", bf), ("clamped_g_bracket", bg)) if v < 0]
    r, relax = _s_factors(S)
    root = 1 / (2 * p)
    return evaluation(
        bound_id,
        ("w(TS)", "r(S) [..]^1/2p [..]^1/2p", "r(S) || |T|^pa ||^1/p || |T*|^p(1-a) ||^1/p"),
        (_w(T @ S), r * max(bf, 0.0) ** root * max(bg, 0.0) ** root, r * nf ** (1 / p) * ng ** (1 / p)),
        (LE, LE),
        0,
        variant,
        tol,
        {"f_bracket": bf, "g_bracket": bg, "r_S": r, "relaxed_r_S": relax, "p": p, "alpha": a,
         "commutation_residual": residual},
        flags,
    )


def product_bound_fg_sum(T, S, fp: FunctionPair, p: float, variant="as_printed",
                         tol=DEFAULT_TOL) -> BoundEvaluation:
    """Sum form of the product bound.

    ``as_printed``::

        w(TS) <= R/2 ||f^2p(|T|) + g^2p(|T*|)||
              <= R/4 {(||f^p||^2 + ||g^p||^2) + sqrt((||f^2p|| - ||g^2p||)^2 + 4||f^p g^p||^2)}

    with ``R = (||S|| + ||S^2||^1/2)/2``. The variant with the unsquared
    cross term ``4||f^p g^p||`` is reported in ``detail``.

    ``canonical`` keeps the same ingredients but with the ``1/p`` root that
    makes the chain homogeneous::

        w(TS) <= R (||f^2p + g^2p|| / 2)^(1/p) <= R ({...} / 4)^(1/p)
    """
    _check_variant(variant)
    T, S, p, residual = _prep_product(T, S, p)
    aT, aTs = _abs_pair(T)
    f2p, g2p = fp.f_power(aT, 2 * p), fp.g_power(aTs, 2 * p)
    fp_, gp_ = fp.f_power(aT, p), fp.g_power(aTs, p)
    nsum = spectral_norm(f2p + g2p)
    a, b = spectral_norm(f2p), spectral_norm(g2p)
    cross = spectral_norm(fp_ @ gp_)
    brace = spectral_norm(fp_) ** 2 + spectral_norm(gp_) ** 2 + math.sqrt((a - b) ** 2 + 4 * cross ** 2)
    brace_unsquared = spectral_norm(fp_) ** 2 + spectral_norm(gp_) ** 2 + math.sqrt((a - b) ** 2 + 4 * cross)
    r, relax = _s_factors(S)
    if variant == "as_printed":
        values = (_w(T @ S), 0.5 * relax * nsum, 0.25 * relax * brace)
    else:
        values = (_w(T @ S), relax * (0.5 * nsum) ** (1 / p), relax * (0.25 * brace) ** (1 / p))
    return evaluation(
        "eq4.x-sum",
        ("w(TS)", "sum-norm term", "fact1 relaxation"),
        values,
        (LE, LE),
        0,
        variant,
        tol,
        {"r_S": r, "relaxed_r_S": relax, "p": p, "norm_sum": nsum, "brace": brace,
         "as_printed_unsquared_cross_rhs": 0.25 * relax * brace_unsquared,
         "commutation_residual": residual, **fp.to_obj()},
    )
