"""Ground-truth verification of the sandwich property
(1 - eps) * F'(S) <= F(S) <= (1 + eps) * F'(S), over all subsets, over a
matroid's independent sets, or over the continuous extension, plus the
seeded trial harness behind the statistical tests.

Ratios are reported as F(S) / F'(S). A set where F' = 0 but F > 0 fails
with ratio inf; where both vanish the set counts and passes (ratio 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    BudgetExceededError,
    DecomposableFunction,
    MAX_EXHAUSTIVE_N,
    SparsifierWeights,
    _support_of,
    mask_from_subset,
    subset_from_mask,
)
from .lovasz import lovasz_eval
from .matroid import ENUMERATION_BUDGET, MatroidOracle, enumerate_independent
from .sparsify import (
    SparsifyConfig,
    estimate_importance,
    kappa_matroid,
    kappa_unconstrained,
    sample_sparsifier,
)

_SLACK = 1e-12


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a sandwich check over some family of query points.

    worst_low / worst_high are the extreme observed ratios F/F' with the
    points attaining them; passed holds exactly when both extremes lie in
    [1 - epsilon, 1 + epsilon] (up to 1e-12 float slack).
    """

    passed: bool
    epsilon: float
    worst_low: float
    worst_high: float
    witness_low: tuple
    witness_high: tuple
    sets_checked: int

    def to_dict(self) -> dict:
        def enc(v: float):
            return "inf" if math.isinf(v) else v
        return {
            "pass": self.passed,
            "epsilon": self.epsilon,
            "worst_low": enc(self.worst_low),
            "worst_high": enc(self.worst_high),
            "witness_low": list(self.witness_low),
            "witness_high": list(self.witness_high),
            "sets_checked": self.sets_checked,
        }


def _ratios(full: np.ndarray, sparse: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(sparse > 0, full / np.where(sparse > 0, sparse, 1.0),
                     np.where(full > 0, np.inf, 1.0))
    return r


def _report(full: np.ndarray, sparse: np.ndarray, epsilon: float,
            witness_of: Callable[[int], tuple]) -> VerificationReport:
    r = _ratios(full, sparse)
    lo = int(np.argmin(r))
    hi = int(np.argmax(r))
    passed = bool(r[lo] >= 1.0 - epsilon - _SLACK and r[hi] <= 1.0 + epsilon + _SLACK)
    return VerificationReport(passed, float(epsilon), float(r[lo]), float(r[hi]),
                              witness_of(lo), witness_of(hi), int(r.size))


def _totals(F: DecomposableFunction, weights,
            masks: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    table = F.value_table(masks)
    support, w = _support_of(weights, F.num_components)
    return table.sum(axis=0), w[support] @ table[support]


def verify_all_subsets(F: DecomposableFunction, weights,
                       epsilon: float) -> VerificationReport:
    """Sandwich over every nonempty subset; the empty set holds trivially
    (both sides 0) and is not counted."""
    if F.n > MAX_EXHAUSTIVE_N:
        raise BudgetExceededError(f"exhaustive verification needs n <= {MAX_EXHAUSTIVE_N}")
    full, sparse = _totals(F, weights)
    return _report(full, sparse, epsilon, lambda j: subset_from_mask(j + 1))


def verify_matroid(F: DecomposableFunction, weights, epsilon: float,
                   matroid: MatroidOracle,
                   budget: int = ENUMERATION_BUDGET) -> VerificationReport:
    """Sandwich over the matroid's nonempty independent sets only."""
    if matroid.ground.n != F.n:
        raise ValueError("matroid and function ground sets differ")
    sets = list(enumerate_independent(matroid, budget))
    masks = np.array([mask_from_subset(s, F.n) for s in sets], dtype=np.uint64)
    full, sparse = _totals(F, weights, masks)
    return _report(full, sparse, epsilon, lambda j: sets[j])


def verify_lovasz(F: DecomposableFunction, weights, epsilon: float,
                  samples: int = 100, seed: int = 0) -> VerificationReport:
    """Sandwich on the continuous extension at `samples` uniform points
    of [0,1]^n, plus every 0/1 corner when n <= 10.

    Corner witnesses are index tuples; random-point witnesses are the
    coordinates themselves.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    n = F.n
    rng = np.random.default_rng(seed)
    xs = rng.random((samples, n))

    try:
        table_ok = n <= MAX_EXHAUSTIVE_N
        if table_ok:
            full_tot, sparse_tot = _totals(F, weights)
    except BudgetExceededError:
        table_ok = False

    values: list[float] = []
    sparse_values: list[float] = []
    witnesses: list[tuple] = []

    if table_ok:
        # prefix-set lookups against the cached table make each point O(n)
        for x in xs:
            order = np.argsort(-x, kind="stable")
            coeffs = x[order] - np.append(x[order][1:], 0.0)
            prefix = np.bitwise_or.accumulate(
                (np.uint64(1) << order.astype(np.uint64)))
            idx = prefix.astype(np.int64) - 1
            values.append(float(coeffs @ full_tot[idx]))
            sparse_values.append(float(coeffs @ sparse_tot[idx]))
            witnesses.append(tuple(float(v) for v in x))
        if n <= 10:
            values.extend(full_tot)
            sparse_values.extend(sparse_tot)
            witnesses.extend(subset_from_mask(m) for m in range(1, 2 ** n))
    else:
        support, w = _support_of(weights, F.num_components)

        def sparse_eval(s: tuple[int, ...]) -> float:
            return F.weighted_value(w, s)

        for x in xs:
            values.append(lovasz_eval(F.value, x))
            sparse_values.append(lovasz_eval(sparse_eval, x))
            witnesses.append(tuple(float(v) for v in x))

    return _report(np.array(values), np.array(sparse_values), epsilon,
                   lambda j: witnesses[j])


@dataclass(frozen=True)
class TrialStats:
    """Aggregates over repeated seeded sparsification runs."""

    trials: int
    successes: int
    mean_size: float
    size_stderr: float
    kappa_sum_p: float
    expected_size: float

    @property
    def pass_rate(self) -> float:
        return self.successes / self.trials


def trial_stats(F: DecomposableFunction, config: SparsifyConfig, trials: int,
                matroid: MatroidOracle | None = None) -> TrialStats:
    """Run `trials` sparsifications at seeds seed, seed+1, ... and verify
    each one (over all subsets, or over independent sets when a matroid
    is given). Importance estimates and the value table are shared across
    trials, so the loop cost is one matrix product per trial.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    est = estimate_importance(F, config.pi_mode, matroid)
    if matroid is not None:
        kappa = kappa_matroid(F.n, matroid.rank, config.epsilon, config.delta)
        sets = list(enumerate_independent(matroid))
        masks = np.array([mask_from_subset(s, F.n) for s in sets], dtype=np.uint64)
        table = F.value_table(masks)
    else:
        kappa = kappa_unconstrained(F.n, config.epsilon, config.delta)
        table = F.value_table()
    full = table.sum(axis=0)

    successes = 0
    sizes = np.empty(trials)
    for t in range(trials):
        w = sample_sparsifier(est, kappa, config.seed + t,
                              epsilon=config.epsilon, delta=config.delta,
                              guarantee=config.guarantee)
        sizes[t] = w.size
        sparse = w.weights[w.support] @ table[w.support]
        r = _ratios(full, sparse)
        if r.min() >= 1.0 - config.epsilon - _SLACK and r.max() <= 1.0 + config.epsilon + _SLACK:
            successes += 1
    stderr = float(sizes.std(ddof=1) / math.sqrt(trials)) if trials > 1 else float("nan")
    return TrialStats(trials=trials, successes=successes,
                      mean_size=float(sizes.mean()), size_stderr=stderr,
                      kappa_sum_p=float(kappa * est.sum_p),
                      expected_size=float(np.minimum(1.0, kappa * est.p_hat).sum()))
