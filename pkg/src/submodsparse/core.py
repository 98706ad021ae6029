"""Ground set, submodular components, decomposable sums, and diagnostic checks.

Subsets are passed around as iterables of element indices (0..n-1) and
canonicalized internally; bitmasks are used for exhaustive small-n work.
All objects are immutable after construction and safe to evaluate
concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

Subset = Iterable[int]

# Building a dense table of all component values costs 2^n * N evaluations;
# cap the total so a misconfigured call fails fast instead of thrashing.
MAX_TABLE_ENTRIES = 100_000_000
MAX_EXHAUSTIVE_N = 20


class BudgetExceededError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


def mask_from_subset(subset: Subset, n: int) -> int:
    """Pack a subset of {0..n-1} into a bitmask, validating bounds."""
    mask = 0
    for e in subset:
        if not 0 <= e < n:
            raise IndexError(f"element {e} outside ground set of size {n}")
        mask |= 1 << e
    return mask


def subset_from_mask(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into a sorted tuple of element indices."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcounts(masks: np.ndarray) -> np.ndarray:
    """Per-element popcount of a uint64 mask array."""
    return np.bitwise_count(masks)


@dataclass(frozen=True)
class GroundSet:
    """The ground set E = {0, ..., n-1}, optionally with display labels."""

    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ground set must contain at least one element")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.n:
                raise ValueError("labels length must equal n")
            object.__setattr__(self, "labels", labels)

    def validate_subset(self, subset: Subset) -> frozenset[int]:
        s = frozenset(subset)
        for e in s:
            if not 0 <= e < self.n:
                raise IndexError(f"element {e} outside ground set of size {self.n}")
        return s


class SubmodularComponent:
    """One summand f_i: a nonnegative normalized set function.

    The evaluation callable must be pure. Normalization f(empty) = 0 is
    enforced at construction; submodularity and the monotone claim are
    checkable with :func:`check_submodular` / :func:`check_monotone` but
    deliberately not inferred here.
    """

    __slots__ = ("ground", "monotone_claim", "_eval")

    def __init__(self, ground: GroundSet, eval_fn: Callable[[frozenset[int]], float],
                 monotone_claim: bool = False):
        empty = float(eval_fn(frozenset()))
        if empty != 0.0:
            raise ValueError(f"component is not normalized: f(empty set) = {empty}")
        self.ground = ground
        self.monotone_claim = bool(monotone_claim)
        self._eval = eval_fn

    def value(self, subset: Subset) -> float:
        s = self.ground.validate_subset(subset)
        v = float(self._eval(s))
        if v < 0:
            raise ValueError(f"component returned negative value {v} on {sorted(s)}")
        return v

    def __call__(self, subset: Subset) -> float:
        return self.value(subset)


class DecomposableFunction:
    """F(S) = sum of N submodular components over a shared ground set.

    Family-specific subclasses override the evaluation paths with
    vectorized implementations; this base class works for any component
    list. The dense value table over all nonempty subsets is cached,
    since verification and exact importance estimation reuse it heavily.
    """

    def __init__(self, ground: GroundSet, components: Sequence[SubmodularComponent]):
        components = tuple(components)
        if not components:
            raise ValueError("a decomposable function needs at least one component")
        for c in components:
            if c.ground.n != ground.n:
                raise ValueError("all components must share the ground set")
        self.ground = ground
        self.components = components

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def num_components(self) -> int:
        return len(self.components)

    def component_value(self, i: int, subset: Subset) -> float:
        if not 0 <= i < self.num_components:
            raise IndexError(f"component index {i} out of range")
        return self.components[i].value(subset)

    def value(self, subset: Subset) -> float:
        s = self.ground.validate_subset(subset)
        return float(sum(c.value(s) for c in self.components))

    def weighted_value(self, weights: "SparsifierWeights | np.ndarray", subset: Subset) -> float:
        support, w = _support_of(weights, self.num_components)
        s = self.ground.validate_subset(subset)
        return float(sum(w[i] * self.component_value(i, s) for i in support))

    def singleton_values(self) -> np.ndarray:
        """(N, n) array of f_i({e}) values."""
        out = np.empty((self.num_components, self.n))
        for i, c in enumerate(self.components):
            out[i] = [c.value((e,)) for e in range(self.n)]
        return out

    def value_table(self, masks: np.ndarray | None = None) -> np.ndarray:
        """Dense table V[i, j] = f_i(subset of masks[j]).

        With masks=None the table covers all nonempty subsets (mask value
        m at column m-1) and is cached on the instance.
        """
        if masks is None:
            return self._full_table
        return self._table_for(np.asarray(masks, dtype=np.uint64))

    @cached_property
    def _full_table(self) -> np.ndarray:
        if self.n > MAX_EXHAUSTIVE_N:
            raise BudgetExceededError(f"n={self.n} too large for exhaustive table")
        if (2 ** self.n) * self.num_components > MAX_TABLE_ENTRIES:
            raise BudgetExceededError("value table would exceed the entry budget")
        masks = np.arange(1, 2 ** self.n, dtype=np.uint64)
        return self._table_for(masks)

    def _table_for(self, masks: np.ndarray) -> np.ndarray:
        subsets = [frozenset(subset_from_mask(int(m))) for m in masks]
        out = np.empty((self.num_components, len(subsets)))
        for i, c in enumerate(self.components):
            out[i] = [c.value(s) for s in subsets]
        return out


def _support_of(weights, num_components: int) -> tuple[np.ndarray, np.ndarray]:
    """Normalize a weights argument to (support indices, dense vector)."""
    w = np.asarray(getattr(weights, "weights", weights), dtype=float)
    if w.shape != (num_components,):
        raise ValueError(f"weight vector has length {w.shape}, expected {num_components}")
    support = getattr(weights, "support", None)
    if support is None:
        support = np.flatnonzero(w)
    return support, w


@dataclass(frozen=True)
class SparsifierWeights:
    """Output weight vector of a sparsification run, with provenance.

    Nonzero entries are exactly 1/kappa_i for the run's clamped inclusion
    probabilities kappa_i = min(1, kappa * p_hat_i); size is the nonzero
    count. guarantee is False when the run used epsilon > 1.
    """

    weights: np.ndarray
    seed: int
    epsilon: float
    delta: float
    kappa: float = float("nan")
    mode: str = "explicit"
    guarantee: bool = True

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).copy()
        if w.ndim != 1:
            raise ValueError("weights must be a flat vector")
        if (w < 0).any():
            raise ValueError("weights must be nonnegative")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @cached_property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights)

    @property
    def size(self) -> int:
        return int(self.support.size)

    @property
    def num_components(self) -> int:
        return int(self.weights.size)

    @classmethod
    def all_ones(cls, num_components: int, epsilon: float = 0.0, delta: float = 0.0,
                 seed: int = 0) -> "SparsifierWeights":
        return cls(weights=np.ones(num_components), seed=seed, epsilon=epsilon,
                   delta=delta, mode="identity")


def eval_component(F: DecomposableFunction, i: int, subset: Subset) -> float:
    """Value of the i-th component on a subset."""
    return F.component_value(i, subset)


def eval_sum(F: DecomposableFunction, subset: Subset) -> float:
    """F(S): sum of all component values."""
    return F.value(subset)


def eval_weighted(F: DecomposableFunction, weights, subset: Subset) -> float:
    """Weighted sum over the support of w only; cost scales with size(w)."""
    return F.weighted_value(weights, subset)


def marginal_gain(eval_fn: Callable[[Subset], float], element: int, base: Subset) -> float:
    """eval(base + element) - eval(base). The element must not be in base."""
    base = frozenset(base)
    if element in base:
        raise ValueError(f"element {element} already in base set")
    return float(eval_fn(base | {element})) - float(eval_fn(base))


def _component_table(component: SubmodularComponent) -> np.ndarray:
    n = component.ground.n
    if n > 10:
        raise BudgetExceededError(f"n={n} too large for exhaustive component check")
    return np.array([component.value(subset_from_mask(m)) for m in range(2 ** n)])


def check_submodular(component: SubmodularComponent):
    """Exhaustive submodularity check for n <= 10.

    Uses the pairwise characterization f(M+i) + f(M+j) >= f(M+i+j) + f(M),
    equivalent to the diminishing-returns inequality over all S <= T.
    Returns (True, None) or (False, (S, T, e)) with a violating triple
    S <= T, e not in T.
    """
    n = component.ground.n
    table = _component_table(component)
    for m in range(2 ** n):
        for i in range(n):
            if m >> i & 1:
                continue
            for j in range(i + 1, n):
                if m >> j & 1:
                    continue
                lhs = table[m | 1 << i] + table[m | 1 << j]
                rhs = table[m | 1 << i | 1 << j] + table[m]
                if lhs < rhs - 1e-12:
                    witness = (subset_from_mask(m),
                               subset_from_mask(m | 1 << j),
                               i)
                    return False, witness
    return True, None


def check_monotone(component: SubmodularComponent):
    """Exhaustive monotonicity check for n <= 10.

    Returns (True, None) or (False, (S, e)) with f(S + e) < f(S).
    """
    n = component.ground.n
    table = _component_table(component)
    for m in range(2 ** n):
        for e in range(n):
            if m >> e & 1:
                continue
            if table[m | 1 << e] < table[m] - 1e-12:
                return False, (subset_from_mask(m), e)
    return True, None
