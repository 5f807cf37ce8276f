"""Shipped verification checks with fixed seeds.

``SUITES`` groups them the way they are run: classical results that must
hold, vector-level chains, block pilots, the newer product and block bounds
(whose outcome is recorded rather than presumed), and the as-printed
falsification check.
"""
from __future__ import annotations

from .ensembles import EnsembleSpec
from .verifier import CheckSpec

TOL = 1e-8


def _g(seed, kind="ginibre", dim=1, max_dim=8, scale=1.0):
    return EnsembleSpec(kind, dim, scale, seed, max_dim=max_dim)


def _blocks(seed, grid, dim=4):
    return EnsembleSpec("block", dim, 1.0, seed, grid=grid)


def classical() -> list:
    return [
        CheckSpec("eq1.1", _g(101), 1000, TOL),
        CheckSpec("eq1.2", _g(102), 500, TOL),
        CheckSpec("eq1.3", _g(103), 500, TOL),
        CheckSpec("eq1.4", _g(104), 500, TOL),
        CheckSpec("eq1.5", _g(105), 500, TOL, "canonical"),
        CheckSpec("fact1", _g(106, "psd"), 500, TOL),
        CheckSpec("fact2", _g(107, "psd"), 500, TOL),
        CheckSpec("fact3", _g(108), 500, TOL),
    ]


def scalar_chains() -> list:
    out = [CheckSpec("eq2.2", _g(200 + k), 500, TOL, params={"alpha": a}) for k, a in enumerate((0.25, 0.5, 0.75))]
    out += [CheckSpec("eq3.1", _g(210 + k, "psd"), 500, TOL, params={"p": p}) for k, p in enumerate((2.0, 3.0, 4.0))]
    out += [CheckSpec("eq3.2", _g(220 + k, "psd"), 500, TOL, params={"p": p}) for k, p in enumerate((0.5, 1.0, 1.5))]
    out += [
        CheckSpec("eq3.3", _g(230, "psd"), 500, TOL, params={"p": 3.0}),
        CheckSpec("eq3.4", _g(231), 500, TOL, params={"p": 3.0}),
        CheckSpec("kittaneh.ineq", _g(232, "commuting_pair"), 500, TOL, params={"alpha": 0.25}),
        CheckSpec("eq3.6", _g(233, "commuting_pair"), 500, TOL, params={"alpha": 0.5, "p": 3.0}),
        CheckSpec("eq3.6", _g(234, "commuting_pair_eigenbasis"), 500, TOL, params={"alpha": 0.75, "p": 2.0}),
    ]
    return out


def mccarty_ordering() -> list:
    return [CheckSpec("eq.mc", _g(240 + k, "psd"), 500, TOL, params={"p": p}) for k, p in enumerate((0.5, 1.0))]


def block_classical() -> list:
    return [
        CheckSpec(bid, _blocks(300 + 10 * k + grid, grid), 200, TOL)
        for k, bid in enumerate(("eq1.6-houdu", "eq1.6-bk", "eq1.6-aok"))
        for grid in (2, 3)
    ]


def novel() -> list:
    return [
        CheckSpec("eq4.1", _g(401, "commuting_pair", max_dim=6), 200, TOL, params={"alpha": 0.25, "p": 3.0}),
        CheckSpec("eq4.2", _g(402, "commuting_pair", max_dim=6), 200, TOL, params={"alpha": 0.3, "p": 2.0}),
        CheckSpec("eq4.3", _g(403, "commuting_pair_eigenbasis", max_dim=6), 200, TOL),
        CheckSpec("eq4.4", _blocks(404, 2), 200, TOL, params={"alpha": 0.5}),
        CheckSpec("eq4.7", _blocks(407, 2), 200, TOL, "both", {"alpha": 0.5}),
        CheckSpec("cor7", _blocks(417, 2), 200, TOL, "both", {"alpha": 0.5}),
        CheckSpec("cor8", _blocks(418, 2), 200, TOL, "both"),
    ]


def falsification() -> list:
    return [CheckSpec("eq1.5", EnsembleSpec("ginibre", 2, 3.0, 7), 500, TOL, "as_printed")]


SUITES = {
    "classical": classical,
    "scalar": scalar_chains,
    "mccarty": mccarty_ordering,
    "blocks": block_classical,
    "novel": novel,
    "falsification": falsification,
}


def all_checks() -> list:
    return [c for make in SUITES.values() for c in make()]
