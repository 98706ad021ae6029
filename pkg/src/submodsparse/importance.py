"""Importance values p_i = max_A f_i(A) / F(A): exact brute force at small
n, closed forms for coverage and facility location, and a provable upper
surrogate for monotone components.

An identically-zero component gets p_i = 0; every live component gets a
strictly positive value. The sampler treats p_i = 0 as "drop
deterministically", which is exactly right for dead components.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import BudgetExceededError, DecomposableFunction, MAX_EXHAUSTIVE_N, mask_from_subset
from .families import CoverageInstance, FacilityLocationInstance
from .matroid import ENUMERATION_BUDGET, MatroidOracle, enumerate_independent

MODES = ("exact", "exact-matroid", "closed-coverage", "closed-facility",
         "upper-monotone")


@dataclass(frozen=True)
class ImportanceEstimates:
    """Per-component sampling drivers.

    Exact modes achieve p_hat_i = p_i; the monotone surrogate only promises
    p_hat_i >= p_i.
    """

    p_hat: np.ndarray
    mode: str

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        p = np.asarray(self.p_hat, dtype=float).copy()
        if p.ndim != 1 or p.size == 0:
            raise ValueError("p_hat must be a nonempty vector")
        if not np.isfinite(p).all() or (p < 0).any():
            raise ValueError("p_hat entries must be finite and nonnegative")
        p.setflags(write=False)
        object.__setattr__(self, "p_hat", p)

    @cached_property
    def sum_p(self) -> float:
        return float(self.p_hat.sum())

    @property
    def num_components(self) -> int:
        return self.p_hat.size


def _ratios_to_estimates(table: np.ndarray, mode: str) -> ImportanceEstimates:
    # table: (N, num_sets) of component values at the constraint family
    total = table.sum(axis=0)
    if not (total > 0).any():
        raise ValueError("F is identically zero on the constraint set")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(total > 0, table / total, 0.0)
    return ImportanceEstimates(ratios.max(axis=1), mode)


def pi_exact(F: DecomposableFunction) -> ImportanceEstimates:
    """Brute-force max of f_i(A)/F(A) over all nonempty A; n <= 20.

    Sets with F(A) = 0 contribute ratio 0 (nonnegativity forces
    f_i(A) = 0 there).
    """
    if F.n > MAX_EXHAUSTIVE_N:
        raise BudgetExceededError(f"exact importance needs n <= {MAX_EXHAUSTIVE_N}")
    return _ratios_to_estimates(F.value_table(), "exact")


def pi_exact_matroid(F: DecomposableFunction, matroid: MatroidOracle,
                     budget: int = ENUMERATION_BUDGET) -> ImportanceEstimates:
    """Max of f_i(A)/F(A) over nonempty independent A only."""
    if matroid.ground.n != F.n:
        raise ValueError("matroid and function ground sets differ")
    masks = np.array(
        [mask_from_subset(s, F.n) for s in enumerate_independent(matroid, budget)],
        dtype=np.uint64)
    if masks.size == 0:
        raise ValueError("matroid has no nonempty independent set")
    return _ratios_to_estimates(F.value_table(masks), "exact-matroid")


def pi_coverage(inst: CoverageInstance) -> ImportanceEstimates:
    """p_i = 1 / (size of the smallest set covering universe element i).

    Linear in the incidence size; the sum is at most n_sets.
    """
    sizes = inst.set_sizes
    p = np.array([1.0 / sizes[list(cov)].min() for cov in inst.covers])
    return ImportanceEstimates(p, "closed-coverage")


def pi_facility(inst: FacilityLocationInstance) -> ImportanceEstimates:
    """p_i = max over facilities j of cost[i, j] / F({j}).

    Columns with F({j}) = 0 carry no mass for any client and are excluded;
    an all-zero matrix is an error.
    """
    col_tot = inst.cost.sum(axis=0)
    live = col_tot > 0
    if not live.any():
        raise ValueError("all facility columns are zero")
    p = (inst.cost[:, live] / col_tot[live]).max(axis=1)
    return ImportanceEstimates(p, "closed-facility")


def pi_upper_monotone(F: DecomposableFunction) -> ImportanceEstimates:
    """Surrogate p_hat_i = n * max_e f_i({e}) / F({e}), valid upper bound
    on p_i for monotone components.

    For monotone submodular f_i, f_i(A) <= |A| * f_i({e*}) with e* the best
    singleton inside A, while F(A) >= F({e*}), so
    f_i(A)/F(A) <= n * f_i({e*})/F({e*}). Costs N*n singleton evaluations.
    """
    for i, c in enumerate(F.components):
        if not c.monotone_claim:
            raise ValueError(f"component {i} is not claimed monotone")
    singles = F.singleton_values()
    col_tot = singles.sum(axis=0)
    live = col_tot > 0
    if not live.any():
        raise ValueError("F is zero on every singleton")
    p = F.n * (singles[:, live] / col_tot[live]).max(axis=1)
    return ImportanceEstimates(p, "upper-monotone")
