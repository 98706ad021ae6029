"""Importance-sampling sparsifiers for sums of submodular functions.

Build a decomposable objective from one of the shipped families (or your
own components), estimate per-component importance, sample a small
weighted subfamily that approximates the sum within a factor 1 +/- eps on
every subset, then run greedy maximization against the cheap surrogate.
"""

from .core import (
    BudgetExceededError,
    DecomposableFunction,
    GroundSet,
    SparsifierWeights,
    SubmodularComponent,
    check_monotone,
    check_submodular,
    eval_weighted,
    marginal_gain,
    mask_from_subset,
    popcounts,
    subset_from_mask,
)
from .families import (
    PENALTY_KINDS,
    CoverageFunction,
    CoverageInstance,
    FacilityLocationFunction,
    FacilityLocationInstance,
    HypergraphCutFunction,
    HypergraphCutInstance,
    TableFunction,
    coverage_function,
    facility_function,
    gen_coverage,
    gen_facility,
    hypergraph_function,
    table_sum_function,
    uber_transform,
)
from .importance import (
    ImportanceEstimates,
    pi_coverage,
    pi_exact,
    pi_exact_matroid,
    pi_facility,
    pi_upper_monotone,
)
from .lovasz import BasePolytopeReport, extreme_points, lovasz_eval, max_extreme_count
from .matroid import (
    MatroidOracle,
    PartitionMatroid,
    UniformMatroid,
    check_matroid_axioms,
    enumerate_independent,
)
from .optimize import GreedyTrace, brute_opt, greedy_cardinality, lazy_greedy
from .sparsify import (
    SparsifyConfig,
    kappa_matroid,
    kappa_unconstrained,
    sample_sparsifier,
    sparsify,
    sparsify_matroid,
    uniform_per_index,
)
from .verify import (
    TrialStats,
    VerificationReport,
    trial_stats,
    verify_all_subsets,
    verify_lovasz,
    verify_matroid,
)

__version__ = "0.1.0"

__all__ = [
    "BasePolytopeReport",
    "BudgetExceededError",
    "CoverageFunction",
    "CoverageInstance",
    "DecomposableFunction",
    "FacilityLocationFunction",
    "FacilityLocationInstance",
    "GreedyTrace",
    "GroundSet",
    "HypergraphCutFunction",
    "HypergraphCutInstance",
    "ImportanceEstimates",
    "MatroidOracle",
    "PENALTY_KINDS",
    "PartitionMatroid",
    "SparsifierWeights",
    "SparsifyConfig",
    "SubmodularComponent",
    "TableFunction",
    "TrialStats",
    "UniformMatroid",
    "VerificationReport",
    "brute_opt",
    "check_matroid_axioms",
    "check_monotone",
    "check_submodular",
    "coverage_function",
    "enumerate_independent",
    "eval_weighted",
    "extreme_points",
    "facility_function",
    "gen_coverage",
    "gen_facility",
    "greedy_cardinality",
    "hypergraph_function",
    "kappa_matroid",
    "kappa_unconstrained",
    "lazy_greedy",
    "lovasz_eval",
    "marginal_gain",
    "mask_from_subset",
    "max_extreme_count",
    "pi_coverage",
    "pi_exact",
    "pi_exact_matroid",
    "pi_facility",
    "pi_upper_monotone",
    "popcounts",
    "sample_sparsifier",
    "sparsify",
    "sparsify_matroid",
    "subset_from_mask",
    "table_sum_function",
    "trial_stats",
    "uber_transform",
    "uniform_per_index",
    "verify_all_subsets",
    "verify_lovasz",
    "verify_matroid",
]
