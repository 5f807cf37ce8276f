"""Seeded verification harness.

A :class:`CheckSpec` names a bound, an ensemble, a trial count and a
tolerance. :func:`run_check` evaluates the bound on every trial draw and
returns a :class:`VerificationReport` whose JSON payload depends only on the
check itself (wall time is kept out of it), so reruns and parallel runs are
byte-identical. Counterexamples carry their serialized inputs and can be
recomputed with :func:`replay`.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import blocks, bounds, scalar
from .bounds import BoundEvaluation, _plain
from .ensembles import EnsembleSpec, generator, sample, unit_vector
from .errors import (
    CorruptPayload,
    HypothesisMismatch,
    InvalidSpec,
    InvalidTolerance,
    OpRadiusError,
    ParseError,
    ShapeMismatch,
    UnknownBound,
    UnknownParameter,
)
from .formats import block_from_obj, block_to_obj, dumps, loads, matrix_from_obj, matrix_to_obj, vector_from_obj, vector_to_obj
from .linalg import BlockMatrix
from .scalar import FunctionPair, TermChain

REPORT_VERSION = "1"
MAX_COUNTEREXAMPLES = 10
REPLAY_TOL = 1e-12
CHECK_VARIANTS = ("canonical", "as_printed", "both")

SINGLE = ("ginibre", "hermitian", "psd", "unitary", "normal")
PSD = ("psd",)
COMMUTING = ("commuting_pair", "commuting_pair_eigenbasis")
BLOCK = ("block",)


# ---------------------------------------------------------------- inputs


def _draw_single(spec, i):
    return {"T": sample(spec, i)}


def _draw_single_vectors(spec, i):
    T = sample(spec, i)
    rng = generator(spec.seed, i, 1)
    n = T.shape[0]
    return {"T": T, "x": unit_vector(rng, n), "y": unit_vector(rng, n)}


def _draw_psd_vectors(spec, i):
    d = _draw_single_vectors(spec, i)
    return {"A": d["T"], "x": d["x"], "y": d["y"]}


def _draw_psd_pair(spec, i):
    A = sample(spec, i)
    n = A.shape[0]
    B = sample(EnsembleSpec("psd", n, spec.scale, spec.seed), i, 1)
    return {"A": A, "B": B}


def _draw_matrix_pair(spec, i):
    A = sample(spec, i)
    B = sample(EnsembleSpec("ginibre", A.shape[0], spec.scale, spec.seed), i, 1)
    return {"A": A, "B": B}


def _draw_commuting(spec, i):
    T, S = sample(spec, i)
    rng = generator(spec.seed, i, 1)
    n = T.shape[0]
    return {"T": T, "S": S, "x": unit_vector(rng, n), "y": unit_vector(rng, n)}


def _draw_block(spec, i):
    return {"A": sample(spec, i)}


INPUT_NAMES = {
    _draw_single: ("T",),
    _draw_single_vectors: ("T", "x", "y"),
    _draw_psd_vectors: ("A", "x", "y"),
    _draw_psd_pair: ("A", "B"),
    _draw_matrix_pair: ("A", "B"),
    _draw_commuting: ("T", "S", "x", "y"),
    _draw_block: ("A",),
}


def inputs_to_obj(inputs: dict) -> dict:
    out = {}
    for k, v in inputs.items():
        if isinstance(v, BlockMatrix):
            out[k] = {"type": "block", "value": block_to_obj(v)}
        elif np.ndim(v) == 1:
            out[k] = {"type": "vector", "value": vector_to_obj(v)}
        else:
            out[k] = {"type": "matrix", "value": matrix_to_obj(v)}
    return out


def inputs_from_obj(obj: dict) -> dict:
    if not isinstance(obj, dict):
        raise CorruptPayload("inputs must be an object")
    readers = {"block": block_from_obj, "vector": vector_from_obj, "matrix": matrix_from_obj}
    out = {}
    try:
        for k, v in obj.items():
            out[k] = readers[v["type"]](v["value"])
    except (KeyError, TypeError, ParseError) as exc:
        raise CorruptPayload(f"malformed inputs: {exc}") from None
    return out


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Param:
    default: float
    low: float
    high: float = math.inf
    low_open: bool = False

    def check(self, name, value):
        v = float(value)
        ok = (v > self.low if self.low_open else v >= self.low) and v <= self.high
        if not ok:
            lo = "(" if self.low_open else "["
            raise HypothesisMismatch(f"{name} = {v} is outside {lo}{self.low}, {self.high}]")
        return v


ALPHA = Param(0.5, 0.0, 1.0)
P_GE2 = Param(2.0, 2.0)


@dataclass(frozen=True)
class BoundEntry:
    bound_id: str
    kinds: tuple
    draw: Callable
    evaluate: Callable
    params: dict = field(default_factory=dict)
    variants: tuple = ("canonical",)
    grid: Optional[int] = None

    @property
    def inputs(self) -> tuple:
        """Names of the operands a trial feeds to ``evaluate``."""
        return INPUT_NAMES[self.draw]


def _pilot_eval(bound_id, make):
    def run(inp, prm, variant, tol):
        A = inp["A"]
        return blocks.pilot_bound(A, make(A, prm, variant), bound_id, variant, tol)
    return run


def _registry() -> dict:
    e = {}

    def add(entry):
        e[entry.bound_id] = entry

    add(BoundEntry("eq1.1", SINGLE, _draw_single, lambda d, p, v, t: bounds.bound_sandwich(d["T"], t)))
    add(BoundEntry("eq1.2", SINGLE, _draw_single, lambda d, p, v, t: bounds.bound_kittaneh_2003(d["T"], t)))
    add(BoundEntry("eq1.3", SINGLE, _draw_single, lambda d, p, v, t: bounds.bound_kittaneh_2005(d["T"], t)))
    add(BoundEntry("eq1.4", SINGLE, _draw_single, lambda d, p, v, t: bounds.bound_yamazaki(d["T"], t)))
    add(BoundEntry("eq1.5", SINGLE, _draw_single, lambda d, p, v, t: bounds.bound_dragomir(d["T"], v, t),
                   variants=("canonical", "as_printed")))
    add(BoundEntry("fact1", PSD, _draw_psd_pair, lambda d, p, v, t: bounds.norm_sum_estimate(d["A"], d["B"], t)))
    add(BoundEntry("fact2", PSD, _draw_psd_pair, lambda d, p, v, t: bounds.norm_halfpower_estimate(d["A"], d["B"], t)))
    add(BoundEntry("fact3", SINGLE, _draw_matrix_pair,
                   lambda d, p, v, t: bounds.spectral_radius_product_bound(d["A"], d["B"], t)))

    add(BoundEntry("eq2.2", SINGLE, _draw_single_vectors,
                   lambda d, p, v, t: scalar.mixed_schwarz_chain(d["T"], d["x"], d["y"], p["alpha"]),
                   {"alpha": ALPHA}))
    add(BoundEntry("eq3.1", PSD, _draw_psd_vectors,
                   lambda d, p, v, t: scalar.mccarty_chain(d["A"], d["x"], p["p"]), {"p": Param(3.0, 2.0)}))
    add(BoundEntry("eq3.2", PSD, _draw_psd_vectors,
                   lambda d, p, v, t: scalar.mccarty_chain(d["A"], d["x"], p["p"]),
                   {"p": Param(1.0, 0.0, 2.0, low_open=True)}))
    add(BoundEntry("eq.mc", PSD, _draw_psd_vectors,
                   lambda d, p, v, t: scalar.mccarty_concave_chain(d["A"], d["x"], p["p"]),
                   {"p": Param(0.5, 0.0, 1.0, low_open=True)}))
    add(BoundEntry("eq3.3", PSD, _draw_psd_vectors,
                   lambda d, p, v, t: scalar.schwarz_refined_chain(d["A"], d["x"], d["y"], p["p"]), {"p": P_GE2}))
    add(BoundEntry("eq3.4", SINGLE, _draw_single_vectors,
                   lambda d, p, v, t: scalar.mixed_schwarz_refined_chain(d["T"], d["x"], d["y"], p["p"]),
                   {"p": P_GE2}))
    add(BoundEntry("eq3.5", SINGLE, _draw_single_vectors,
                   lambda d, p, v, t: scalar.numerical_form_chain(d["T"], d["x"], p["p"], v),
                   {"p": P_GE2}, ("canonical", "as_printed")))
    add(BoundEntry("kittaneh.ineq", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: scalar.kittaneh_fg_chain(d["T"], d["S"], d["x"], d["y"],
                                                               FunctionPair.power(p["alpha"])),
                   {"alpha": ALPHA}))
    add(BoundEntry("eq3.6", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: scalar.kittaneh_fg_refined_chain(d["T"], d["S"], d["x"], d["y"],
                                                                       FunctionPair.power(p["alpha"]), p["p"]),
                   {"alpha": ALPHA, "p": P_GE2}))
    add(BoundEntry("eq3.7", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: scalar.power_refined_chain(d["T"], d["S"], d["x"], d["y"], p["alpha"], p["p"], v),
                   {"alpha": ALPHA, "p": P_GE2}, ("canonical", "as_printed")))
    add(BoundEntry("eq3.8", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: scalar.kittaneh_fg_refined_chain(d["T"], d["S"], d["x"], d["x"],
                                                                       FunctionPair.power(0.5), 2.0)))

    add(BoundEntry("eq4.1", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: bounds.product_bound_fg(d["T"], d["S"], FunctionPair.power(p["alpha"]), p["p"], t),
                   {"alpha": ALPHA, "p": P_GE2}))
    add(BoundEntry("eq4.2", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: bounds.product_bound_power(d["T"], d["S"], p["alpha"], p["p"], v, t),
                   {"alpha": ALPHA, "p": P_GE2}, ("canonical", "as_printed")))
    add(BoundEntry("eq4.3", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: bounds.product_bound_power(d["T"], d["S"], 0.5, 2.0, v, t, "eq4.3"),
                   variants=("canonical", "as_printed")))
    add(BoundEntry("eq4.x-sum", COMMUTING, _draw_commuting,
                   lambda d, p, v, t: bounds.product_bound_fg_sum(d["T"], d["S"], FunctionPair.power(p["alpha"]),
                                                                  p["p"], v, t),
                   {"alpha": ALPHA, "p": P_GE2}, ("canonical", "as_printed")))

    for variant, bid in blocks.CLASSICAL.items():
        add(BoundEntry(bid, BLOCK, _draw_block,
                       _pilot_eval(bid, lambda A, p, v, _k=variant: blocks.pilot_classical(A, _k))))
    add(BoundEntry("eq4.4", BLOCK, _draw_block,
                   _pilot_eval("eq4.4", lambda A, p, v: blocks.pilot_fg(A, FunctionPair.power(p["alpha"]))),
                   {"alpha": ALPHA}))
    add(BoundEntry("eq4.6", BLOCK, _draw_block,
                   lambda d, p, v, t: blocks.pilot_power_2x2(d["A"], p["alpha"], v, t),
                   {"alpha": ALPHA}, ("canonical", "as_printed"), grid=2))
    add(BoundEntry("eq4.7", BLOCK, _draw_block,
                   _pilot_eval("eq4.7", lambda A, p, v: blocks.pilot_fg_refined(A, FunctionPair.power(p["alpha"]), v)),
                   {"alpha": ALPHA}, ("canonical", "as_printed")))
    add(BoundEntry("cor7", BLOCK, _draw_block,
                   lambda d, p, v, t: blocks.explicit_2x2_refined(d["A"], p["alpha"], v, t),
                   {"alpha": ALPHA}, ("canonical", "as_printed"), grid=2))
    add(BoundEntry("cor8", BLOCK, _draw_block,
                   lambda d, p, v, t: blocks.explicit_2x2_half(d["A"], v, t),
                   variants=("canonical", "as_printed"), grid=2))
    return e


REGISTRY = _registry()


def bound_ids() -> tuple:
    return tuple(REGISTRY)


def get_entry(bound_id: str) -> BoundEntry:
    try:
        return REGISTRY[bound_id]
    except KeyError:
        raise UnknownBound(f"unknown bound {bound_id!r}; known: {', '.join(REGISTRY)}") from None


def _chain(result) -> TermChain:
    return result.chain if isinstance(result, BoundEvaluation) else result


def upper_value(result) -> float:
    """The first right-hand term: the bound's value for tightness comparisons."""
    return result.rhs_terms[0] if isinstance(result, BoundEvaluation) else result.values[1]


def result_to_obj(result) -> dict:
    return result.to_obj() if isinstance(result, BoundEvaluation) else {"chain": result.to_obj(),
                                                                       "detail": _plain(result.detail)}


# ---------------------------------------------------------------- checks


@dataclass(frozen=True)
class CheckSpec:
    bound_id: str
    ensemble: EnsembleSpec
    trials: int = 500
    tol: float = 1e-8
    variant: str = "canonical"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        entry = get_entry(self.bound_id)
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise InvalidSpec(f"trials must be a positive integer, got {self.trials!r}")
        if not (isinstance(self.tol, (int, float)) and self.tol > 0 and math.isfinite(self.tol)):
            raise InvalidTolerance(f"tol must be positive, got {self.tol!r}")
        if self.variant not in CHECK_VARIANTS:
            raise InvalidSpec(f"variant must be one of {CHECK_VARIANTS}")
        if self.variant == "as_printed" and "as_printed" not in entry.variants:
            raise UnknownParameter(f"{self.bound_id} has no as_printed variant")
        unknown = set(self.params) - set(entry.params)
        if unknown:
            raise UnknownParameter(f"{self.bound_id} does not take parameter(s) {sorted(unknown)}")
        resolved = {k: spec.check(k, self.params.get(k, spec.default)) for k, spec in entry.params.items()}
        object.__setattr__(self, "params", resolved)
        if self.ensemble.kind not in entry.kinds:
            raise HypothesisMismatch(
                f"{self.bound_id} needs an ensemble of kind {'/'.join(entry.kinds)}, got {self.ensemble.kind}"
            )
        if entry.grid is not None and self.ensemble.grid != entry.grid:
            raise HypothesisMismatch(f"{self.bound_id} needs a {entry.grid}x{entry.grid} block grid")

    @property
    def variants(self) -> tuple:
        if self.variant == "both":
            return tuple(v for v in ("canonical", "as_printed") if v in get_entry(self.bound_id).variants)
        return (self.variant,)

    def to_obj(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "ensemble": self.ensemble.to_obj(),
            "trials": int(self.trials),
            "tol": float(self.tol),
            "variant": self.variant,
            "params": dict(self.params),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "CheckSpec":
        if not isinstance(obj, dict):
            raise InvalidSpec("check must be a JSON object")
        try:
            return cls(
                obj["bound_id"],
                EnsembleSpec.from_obj(obj["ensemble"]),
                obj.get("trials", 500),
                obj.get("tol", 1e-8),
                obj.get("variant", "canonical"),
                dict(obj.get("params", {})),
            )
        except KeyError as exc:
            raise InvalidSpec(f"check is missing {exc}") from None


def evaluate_inputs(check: CheckSpec, inputs: dict, variant: str):
    entry = get_entry(check.bound_id)
    return entry.evaluate(inputs, check.params, variant, check.tol)


def _is_violation(chain: TermChain, tol: float) -> bool:
    return not chain.satisfied(tol)


def _run_indices(check_obj: dict, indices) -> list:
    check = CheckSpec.from_obj(check_obj)
    entry = get_entry(check.bound_id)
    out = []
    for i in indices:
        inputs = entry.draw(check.ensemble, i)
        for variant in check.variants:
            result = entry.evaluate(inputs, check.params, variant, check.tol)
            chain = _chain(result)
            violated = _is_violation(chain, check.tol)
            record = {"index": int(i), "variant": variant, "slack": chain.worst_slack, "violated": violated}
            if violated:
                record["inputs"] = inputs_to_obj(inputs)
                record["evaluation"] = result_to_obj(result)
            out.append(record)
    return out


def _stats(values) -> dict:
    if not values:
        return {"min": None, "median": None, "max": None}
    a = np.asarray(values, dtype=float)
    return {"min": float(a.min()), "median": float(np.median(a)), "max": float(a.max())}


@dataclass
class VerificationReport:
    check: CheckSpec
    violations: int
    worst_slack: float
    slack_stats: dict
    counterexamples: list
    per_variant: dict
    wall_time: float = 0.0

    @property
    def note(self) -> str:
        if not self.violations:
            return "no violations"
        variants = sorted(v for v, d in self.per_variant.items() if d["violations"])
        if variants == ["as_printed"]:
            return "misprint-consistent falsification of the as_printed form"
        return f"violations found ({', '.join(variants)} variant)"

    def payload(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "check": self.check.to_obj(),
            "violations": self.violations,
            "worst_slack": self.worst_slack,
            "slack_stats": self.slack_stats,
            "per_variant": self.per_variant,
            "note": self.note,
            "counterexamples": self.counterexamples,
        }

    def to_json(self, include_wall_time: bool = False, indent: Optional[int] = None) -> str:
        obj = self.payload()
        if include_wall_time:
            obj["wall_time"] = self.wall_time
        return dumps(obj, indent=indent)

    def summary(self) -> str:
        c = self.check
        return (f"{c.bound_id} [{c.variant}] trials={c.trials} violations={self.violations} "
                f"worst_slack={self.worst_slack:.6g} ({self.note})")


def _chunks(n: int, parts: int):
    size = max(1, math.ceil(n / parts))
    return [range(s, min(n, s + size)) for s in range(0, n, size)]


def run_check(check: CheckSpec, workers: int = 1) -> VerificationReport:
    """Evaluate ``check`` on trials ``0 .. trials-1``.

    ``workers > 1`` spreads trial blocks over processes; the report does not
    depend on the number of workers.
    """
    start = time.perf_counter()
    obj = check.to_obj()
    workers = max(1, int(workers))
    if workers == 1 or check.trials < 2:
        records = _run_indices(obj, range(check.trials))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_indices, [obj] * workers, _chunks(check.trials, workers)))
        records = [r for part in parts for r in part]
    records.sort(key=lambda r: (r["index"], r["variant"]))

    per_variant = {}
    for v in check.variants:
        rs = [r for r in records if r["variant"] == v]
        per_variant[v] = {
            "violations": sum(r["violated"] for r in rs),
            "slack_stats": _stats([r["slack"] for r in rs]),
        }
    bad = sorted((r for r in records if r["violated"]), key=lambda r: (r["slack"], r["index"], r["variant"]))
    counterexamples = []
    for r in bad[:MAX_COUNTEREXAMPLES]:
        counterexamples.append({
            "bound_id": check.bound_id,
            "variant": r["variant"],
            "index": r["index"],
            "ensemble": check.ensemble.to_obj(),
            "params": dict(check.params),
            "tol": check.tol,
            "slack": r["slack"],
            "inputs": r["inputs"],
            "evaluation": r["evaluation"],
        })
    slacks = [r["slack"] for r in records]
    return VerificationReport(
        check,
        len(bad),
        float(min(slacks)),
        _stats(slacks),
        counterexamples,
        per_variant,
        time.perf_counter() - start,
    )


def report_from_json(text: str) -> dict:
    obj = loads(text)
    if not isinstance(obj, dict) or obj.get("version") != REPORT_VERSION:
        raise CorruptPayload("not a version-1 verification report")
    return obj


# ---------------------------------------------------------------- replay


@dataclass(frozen=True)
class ReplayResult:
    result: object
    slack: float
    stored_slack: float
    inputs_match: bool

    @property
    def slack_matches(self) -> bool:
        return abs(self.slack - self.stored_slack) <= REPLAY_TOL * max(1.0, abs(self.stored_slack))

    @property
    def ok(self) -> bool:
        return self.inputs_match and self.slack_matches


def _same_inputs(a: dict, b: dict) -> bool:
    if set(a) != set(b):
        return False
    for k in a:
        x, y = a[k], b[k]
        if isinstance(x, BlockMatrix) or isinstance(y, BlockMatrix):
            if not (isinstance(x, BlockMatrix) and isinstance(y, BlockMatrix)) or x.grid != y.grid:
                return False
            if any(not np.array_equal(x[i, j], y[i, j]) for i in range(x.grid[0]) for j in range(x.grid[1])):
                return False
        elif np.shape(x) != np.shape(y) or not np.array_equal(x, y):
            return False
    return True


def replay(payload: dict) -> ReplayResult:
    """Recompute a counterexample from its serialized inputs.

    The inputs are also regenerated from ``(ensemble, index)``;
    ``inputs_match`` reports whether the two agree bit for bit.

    Raises
    ------
    CorruptPayload
        If the payload is not a counterexample record.
    HypothesisMismatch
        If the recorded ensemble does not fit the bound.
    """
    if isinstance(payload, str):
        payload = loads(payload)
    try:
        check = CheckSpec(
            payload["bound_id"],
            EnsembleSpec.from_obj(payload["ensemble"]),
            1,
            float(payload["tol"]),
            payload["variant"],
            dict(payload["params"]),
        )
        index = int(payload["index"])
        stored = float(payload["slack"])
        stored_inputs = inputs_from_obj(payload["inputs"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, OpRadiusError):
            raise
        raise CorruptPayload(f"malformed counterexample: {exc}") from None
    entry = get_entry(check.bound_id)
    regenerated = entry.draw(check.ensemble, index)
    result = entry.evaluate(stored_inputs, check.params, check.variant, check.tol)
    return ReplayResult(result, _chain(result).worst_slack, stored, _same_inputs(stored_inputs, regenerated))


# ---------------------------------------------------------------- tightness


@dataclass
class TightnessComparison:
    bound_ids: tuple
    values: np.ndarray
    lhs: np.ndarray
    win_counts: dict
    ties: int
    verdicts: dict

    def to_obj(self) -> dict:
        return {
            "bound_ids": list(self.bound_ids),
            "trials": int(self.values.shape[0]),
            "values": self.values.tolist(),
            "lhs": self.lhs.tolist(),
            "win_counts": dict(self.win_counts),
            "ties": self.ties,
            "verdicts": self.verdicts,
        }


CLAIM_TARGETS = ("eq1.6-houdu", "eq1.6-bk")


def compare_tightness(bound_ids, ensemble: EnsembleSpec, trials: int, params: Optional[dict] = None,
                      variant: str = "canonical", tie_tol: float = 1e-12) -> TightnessComparison:
    """Evaluate several upper bounds on the same draws and count strict wins.

    A trial is a tie when the smallest value is matched by another bound
    within ``tie_tol * max(1, |value|)``; ties award no win. When ``cor8`` is
    compared against the Hou-Du or Bani-Domi-Kittaneh pilots the result
    carries a per-pair verdict (better, equal, worse counts).
    """
    bound_ids = tuple(bound_ids)
    if not bound_ids:
        raise UnknownBound("no bounds given")
    entries = [get_entry(b) for b in bound_ids]
    for e in entries:
        if ensemble.kind not in e.kinds or (e.grid is not None and ensemble.grid != e.grid):
            raise ShapeMismatch(f"{e.bound_id} cannot be evaluated on a {ensemble.kind} ensemble")
    params = params or {}
    checks = []
    for e in entries:
        mine = {k: v for k, v in params.items() if k in e.params}
        v = variant if variant in e.variants else "canonical"
        checks.append(CheckSpec(e.bound_id, ensemble, trials, 1e-8, v, mine))

    values = np.empty((trials, len(entries)))
    lhs = np.empty(trials)
    for i in range(trials):
        inputs = entries[0].draw(ensemble, i)
        for j, (e, c) in enumerate(zip(entries, checks)):
            r = e.evaluate(inputs, c.params, c.variant, c.tol)
            values[i, j] = upper_value(r)
            if j == 0:
                lhs[i] = r.lhs if isinstance(r, BoundEvaluation) else r.values[0]

    win_counts = {b: 0 for b in bound_ids}
    ties = 0
    for row in values:
        k = int(np.argmin(row))
        close = np.abs(row - row[k]) <= tie_tol * max(1.0, abs(row[k]))
        if np.count_nonzero(close) > 1:
            ties += 1
        else:
            win_counts[bound_ids[k]] += 1

    verdicts = {}
    if "cor8" in bound_ids:
        c = bound_ids.index("cor8")
        for target in CLAIM_TARGETS:
            if target not in bound_ids:
                continue
            t = bound_ids.index(target)
            diff = values[:, c] - values[:, t]
            eps = tie_tol * np.maximum(1.0, np.abs(values[:, t]))
            better = int(np.sum(diff < -eps))
            worse = int(np.sum(diff > eps))
            verdicts[f"cor8 vs {target}"] = {
                "better": better,
                "equal": int(trials - better - worse),
                "worse": worse,
                "claim_holds_every_trial": worse == 0,
                "cor8_below_w": int(np.sum(values[:, c] < lhs - 1e-8 * np.maximum(1.0, lhs))),
            }
    return TightnessComparison(bound_ids, values, lhs, win_counts, ties, verdicts)


def default_workers() -> int:
    return os.cpu_count() or 1
