"""Sampling core: oversampling-rate formulas and the independent
per-component coin flips that produce a sparsifier.

Randomness comes from a documented 64-bit mixing function applied to
(seed, component index), so the outcome for component i never depends on
how the loop is scheduled. Two runs with the same seed are bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DecomposableFunction, SparsifierWeights
from .families import CoverageFunction, FacilityLocationFunction
from .importance import (
    ImportanceEstimates,
    pi_coverage,
    pi_exact,
    pi_exact_matroid,
    pi_facility,
    pi_upper_monotone,
)
from .matroid import MatroidOracle

PI_MODES = ("exact", "exact-matroid", "closed", "upper")

_MASK64 = np.uint64(0xFFFFFFFFFFFFFFFF)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


@dataclass(frozen=True)
class SparsifyConfig:
    """Inputs to a sparsification run.

    epsilon > 1 is permitted only with allow_large_epsilon, and the
    resulting weights carry guarantee=False: useful for compression
    sweeps, meaningless for the sandwich property.
    """

    epsilon: float
    delta: float
    seed: int
    pi_mode: str = "exact"
    allow_large_epsilon: bool = False

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.epsilon > 1 and not self.allow_large_epsilon:
            raise ValueError(
                "epsilon > 1 voids the guarantee; set allow_large_epsilon to proceed")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.pi_mode not in PI_MODES:
            raise ValueError(f"pi_mode must be one of {PI_MODES}")

    @property
    def guarantee(self) -> bool:
        return self.epsilon <= 1


def kappa_unconstrained(n: int, epsilon: float, delta: float) -> float:
    """Oversampling rate 3 * ln(2^(n+1) / delta) / epsilon^2.

    Natural log, computed in expanded form so n in the hundreds cannot
    overflow the intermediate power.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    return 3.0 * ((n + 1) * math.log(2.0) - math.log(delta)) / epsilon ** 2


def kappa_matroid(n: int, r: int, epsilon: float, delta: float) -> float:
    """Rank-based rate 3 * ln(2 * n^(r+1) / delta) / epsilon^2."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if r < 1:
        raise ValueError("rank must be at least 1")
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    return 3.0 * (math.log(2.0) + (r + 1) * math.log(n) - math.log(delta)) / epsilon ** 2


def uniform_per_index(seed: int, indices) -> np.ndarray:
    """Deterministic uniforms in [0, 1), one per index, from a splitmix-style
    finalizer on seed + (i+1) * golden-ratio increment.

    Evaluating any sub-slice of indices gives the same values as the full
    range, which is what makes the sampler parallelism-independent.
    """
    idx = np.atleast_1d(np.asarray(indices, dtype=np.uint64))
    with np.errstate(over="ignore"):
        z = (np.uint64(seed % 2 ** 64) + (idx + np.uint64(1)) * _GOLDEN) & _MASK64
        z ^= z >> np.uint64(30)
        z *= _MIX1
        z ^= z >> np.uint64(27)
        z *= _MIX2
        z ^= z >> np.uint64(31)
    return (z >> np.uint64(11)) * 2.0 ** -53


def sample_sparsifier(p_hat: ImportanceEstimates | np.ndarray, kappa: float,
                      seed: int, *, epsilon: float = float("nan"),
                      delta: float = float("nan"),
                      guarantee: bool = True) -> SparsifierWeights:
    """One round of independent coin flips.

    Component i is kept with probability kappa_i = min(1, kappa * p_hat_i)
    at weight 1/kappa_i, so each weight has expectation exactly 1.
    p_hat_i = 0 (a dead component) is never kept.
    """
    if isinstance(p_hat, ImportanceEstimates):
        p = p_hat.p_hat
        mode = p_hat.mode
    else:
        p = np.asarray(p_hat, dtype=float)
        mode = "explicit"
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    kappa_i = np.minimum(1.0, kappa * p)
    u = uniform_per_index(seed, np.arange(p.size))
    w = np.zeros(p.size)
    keep = u < kappa_i  # kappa_i = 0 is never kept: u >= 0
    w[keep] = 1.0 / kappa_i[keep]
    return SparsifierWeights(weights=w, seed=seed, epsilon=epsilon, delta=delta,
                             kappa=kappa, mode=mode, guarantee=guarantee)


def estimate_importance(F: DecomposableFunction, pi_mode: str,
                        matroid: MatroidOracle | None = None) -> ImportanceEstimates:
    """Dispatch to the estimator named by pi_mode.

    "closed" requires a coverage or facility-location function; "upper"
    requires all-monotone components; "exact-matroid" requires a matroid.
    """
    if pi_mode == "exact":
        return pi_exact(F)
    if pi_mode == "exact-matroid":
        if matroid is None:
            raise ValueError("exact-matroid mode needs a matroid")
        return pi_exact_matroid(F, matroid)
    if pi_mode == "closed":
        if isinstance(F, CoverageFunction):
            return pi_coverage(F.instance)
        if isinstance(F, FacilityLocationFunction):
            return pi_facility(F.instance)
        raise ValueError("closed mode needs a coverage or facility-location function")
    if pi_mode == "upper":
        return pi_upper_monotone(F)
    raise ValueError(f"pi_mode must be one of {PI_MODES}")


def sparsify(F: DecomposableFunction, config: SparsifyConfig) -> SparsifierWeights:
    """Unconstrained sparsifier: estimate importance, compute the
    unconstrained rate, flip the coins."""
    if config.pi_mode == "exact-matroid":
        raise ValueError("use sparsify_matroid for matroid-constrained runs")
    est = estimate_importance(F, config.pi_mode)
    kappa = kappa_unconstrained(F.n, config.epsilon, config.delta)
    return sample_sparsifier(est, kappa, config.seed, epsilon=config.epsilon,
                             delta=config.delta, guarantee=config.guarantee)


def sparsify_matroid(F: DecomposableFunction, matroid: MatroidOracle,
                     config: SparsifyConfig) -> SparsifierWeights:
    """Matroid-constrained sparsifier with the rank-based rate.

    Any pi_mode works: the unconstrained estimators upper-bound the
    constrained importance, which is all the sampler needs.
    """
    if matroid.ground.n != F.n:
        raise ValueError("matroid and function ground sets differ")
    est = estimate_importance(F, config.pi_mode, matroid)
    kappa = kappa_matroid(F.n, matroid.rank, config.epsilon, config.delta)
    return sample_sparsifier(est, kappa, config.seed, epsilon=config.epsilon,
                             delta=config.delta, guarantee=config.guarantee)
