"""Concrete submodular families: coverage, facility location, hypergraph
cut penalties, and explicit table functions, plus synthetic generators.

Each family has an instance dataclass (the raw data), per-component
evaluation functions, and a DecomposableFunction subclass with vectorized
sum/weighted/table paths so that desk-scale instances never materialize
per-component Python objects unless asked to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import (
    DecomposableFunction,
    GroundSet,
    SubmodularComponent,
    Subset,
    mask_from_subset,
    popcounts,
    subset_from_mask,
    _support_of,
)

PENALTY_KINDS = ("cut-indicator", "linear", "quadratic")


# ---------------------------------------------------------------------------
# Maximum coverage
# ---------------------------------------------------------------------------

class CoverageInstance:
    """A family of n_sets sets over a universe; one component per universe
    element, the 0/1 indicator of being covered by the selection.

    Universe elements with no covering set would be identically-zero
    components; they are dropped at construction and counted in
    dropped_uncovered.
    """

    def __init__(self, n_sets: int, covers):
        if n_sets < 1:
            raise ValueError("need at least one set")
        kept = []
        dropped = 0
        for cov in covers:
            cov = tuple(sorted(set(int(a) for a in cov)))
            if not cov:
                dropped += 1
                continue
            if cov[0] < 0 or cov[-1] >= n_sets:
                raise IndexError(f"cover entry outside 0..{n_sets - 1}: {cov}")
            kept.append(cov)
        if not kept:
            raise ValueError("every universe element is uncovered")
        self.n_sets = int(n_sets)
        self.covers = tuple(kept)
        self.dropped_uncovered = dropped

    @property
    def universe_size(self) -> int:
        return len(self.covers)

    @cached_property
    def set_sizes(self) -> np.ndarray:
        """|S_a| for each set a: how many universe elements it covers."""
        sizes = np.zeros(self.n_sets, dtype=np.int64)
        for cov in self.covers:
            for a in cov:
                sizes[a] += 1
        return sizes

    @cached_property
    def incidence(self) -> np.ndarray:
        """(universe_size, n_sets) boolean cover matrix."""
        inc = np.zeros((self.universe_size, self.n_sets), dtype=bool)
        for i, cov in enumerate(self.covers):
            inc[i, list(cov)] = True
        return inc

    def edges(self) -> list[tuple[int, int]]:
        """Edge-list form [(component_id, ground_id), ...]."""
        return [(i, a) for i, cov in enumerate(self.covers) for a in cov]


def coverage_component_eval(inst: CoverageInstance, i: int, subset: Subset) -> float:
    """1 if the selection intersects the covering sets of universe element i."""
    cov = inst.covers[i]
    s = set(subset)
    for e in s:
        if not 0 <= e < inst.n_sets:
            raise IndexError(f"set index {e} out of range")
    return 1.0 if s.intersection(cov) else 0.0


class CoverageFunction(DecomposableFunction):
    """Coverage objective F(A) = number of universe elements covered by A."""

    def __init__(self, instance: CoverageInstance):
        self.ground = GroundSet(instance.n_sets)
        self.instance = instance

    @property
    def num_components(self) -> int:
        return self.instance.universe_size

    @cached_property
    def components(self):
        inst = self.instance
        return tuple(
            SubmodularComponent(self.ground,
                                lambda s, _i=i: coverage_component_eval(inst, _i, s),
                                monotone_claim=True)
            for i in range(inst.universe_size)
        )

    def component_value(self, i: int, subset: Subset) -> float:
        if not 0 <= i < self.num_components:
            raise IndexError(f"component index {i} out of range")
        return coverage_component_eval(self.instance, i, subset)

    def _covered(self, subset: Subset) -> np.ndarray:
        s = sorted(self.ground.validate_subset(subset))
        if not s:
            return np.zeros(self.num_components, dtype=bool)
        return self.instance.incidence[:, s].any(axis=1)

    def value(self, subset: Subset) -> float:
        return float(self._covered(subset).sum())

    def weighted_value(self, weights, subset: Subset) -> float:
        support, w = _support_of(weights, self.num_components)
        s = sorted(self.ground.validate_subset(subset))
        if not s or support.size == 0:
            return 0.0
        covered = self.instance.incidence[np.ix_(support, s)].any(axis=1)
        return float(w[support][covered].sum())

    def _table_for(self, masks: np.ndarray) -> np.ndarray:
        cover_masks = np.array(
            [mask_from_subset(cov, self.n) for cov in self.instance.covers],
            dtype=np.uint64)
        hit = (masks[None, :] & cover_masks[:, None]) != 0
        return hit.astype(float)

    def singleton_values(self) -> np.ndarray:
        return self.instance.incidence.astype(float)


def coverage_function(inst: CoverageInstance) -> CoverageFunction:
    return CoverageFunction(inst)


# ---------------------------------------------------------------------------
# Facility location
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FacilityLocationInstance:
    """Clients x facilities nonnegative utility matrix; one component per
    client, f_i(A) = max_{j in A} cost[i, j], and f_i(empty) = 0.

    Clients whose whole row is zero are inert: they never contribute and
    get importance 0.
    """

    cost: np.ndarray

    def __post_init__(self):
        cost = np.asarray(self.cost, dtype=float)
        if cost.ndim != 2 or cost.size == 0:
            raise ValueError("cost must be a nonempty 2-D matrix")
        if (cost < 0).any():
            raise ValueError("costs must be nonnegative")
        cost = cost.copy()
        cost.setflags(write=False)
        object.__setattr__(self, "cost", cost)

    @property
    def n_clients(self) -> int:
        return self.cost.shape[0]

    @property
    def n_facilities(self) -> int:
        return self.cost.shape[1]

    @cached_property
    def inert_clients(self) -> np.ndarray:
        return np.flatnonzero(self.cost.max(axis=1) == 0.0)


def facility_component_eval(inst: FacilityLocationInstance, i: int, subset: Subset) -> float:
    """max over selected facilities of the client's utility row; 0 on empty."""
    s = sorted(set(subset))
    if not s:
        return 0.0
    if s[0] < 0 or s[-1] >= inst.n_facilities:
        raise IndexError("facility index out of range")
    return float(inst.cost[i, s].max())


def uber_transform(distances: np.ndarray) -> FacilityLocationInstance:
    """Turn a client x facility distance matrix into waiting-spot utilities.

    cost[v, u] = (max_u' d(u', v)) - d(u, v): the farthest facility is
    worth 0, the nearest the most, so every row contains a zero.
    """
    d = np.asarray(distances, dtype=float)
    if d.ndim != 2 or d.size == 0:
        raise ValueError("distance matrix must be nonempty 2-D")
    if (d < 0).any():
        raise ValueError("distances must be nonnegative")
    return FacilityLocationInstance(d.max(axis=1, keepdims=True) - d)


class FacilityLocationFunction(DecomposableFunction):
    """Facility-location objective F(A) = sum of per-client row maxima."""

    def __init__(self, instance: FacilityLocationInstance):
        self.ground = GroundSet(instance.n_facilities)
        self.instance = instance

    @property
    def num_components(self) -> int:
        return self.instance.n_clients

    @cached_property
    def components(self):
        inst = self.instance
        return tuple(
            SubmodularComponent(self.ground,
                                lambda s, _i=i: facility_component_eval(inst, _i, s),
                                monotone_claim=True)
            for i in range(inst.n_clients)
        )

    def component_value(self, i: int, subset: Subset) -> float:
        if not 0 <= i < self.num_components:
            raise IndexError(f"component index {i} out of range")
        return facility_component_eval(self.instance, i, subset)

    def value(self, subset: Subset) -> float:
        s = sorted(self.ground.validate_subset(subset))
        if not s:
            return 0.0
        return float(self.instance.cost[:, s].max(axis=1).sum())

    def weighted_value(self, weights, subset: Subset) -> float:
        support, w = _support_of(weights, self.num_components)
        s = sorted(self.ground.validate_subset(subset))
        if not s or support.size == 0:
            return 0.0
        rows = self.instance.cost[np.ix_(support, s)].max(axis=1)
        return float(rows @ w[support])

    def _table_for(self, masks: np.ndarray) -> np.ndarray:
        cost = self.instance.cost
        out = np.zeros((self.num_components, masks.size))
        for j, m in enumerate(masks):
            s = subset_from_mask(int(m))
            if s:
                out[:, j] = cost[:, list(s)].max(axis=1)
        return out

    def singleton_values(self) -> np.ndarray:
        return np.asarray(self.instance.cost, dtype=float)


def facility_function(inst: FacilityLocationInstance) -> FacilityLocationFunction:
    return FacilityLocationFunction(inst)


# ---------------------------------------------------------------------------
# Hypergraph cut penalties
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypergraphCutInstance:
    """Hyperedges with per-edge splitting penalties on |S & e| vs |e - S|.

    Penalties (a = |S & e|, b = |e - S|):
      cut-indicator: 1 if a > 0 and b > 0
      linear:        min(a, b)
      quadratic:     a * b
    All are submodular but not monotone.
    """

    n_vertices: int
    hyperedges: tuple[tuple[int, ...], ...]
    penalty_kinds: tuple[str, ...]

    def __post_init__(self):
        edges = tuple(tuple(sorted(set(int(v) for v in e))) for e in self.hyperedges)
        kinds = tuple(self.penalty_kinds)
        if self.n_vertices < 1:
            raise ValueError("need at least one vertex")
        if len(edges) != len(kinds):
            raise ValueError("one penalty kind per hyperedge required")
        if not edges:
            raise ValueError("need at least one hyperedge")
        for e in edges:
            if not e:
                raise ValueError("hyperedges must be nonempty")
            if e[0] < 0 or e[-1] >= self.n_vertices:
                raise IndexError(f"hyperedge vertex out of range: {e}")
        for k in kinds:
            if k not in PENALTY_KINDS:
                raise ValueError(f"unknown penalty kind {k!r}")
        object.__setattr__(self, "hyperedges", edges)
        object.__setattr__(self, "penalty_kinds", kinds)

    @property
    def n_edges(self) -> int:
        return len(self.hyperedges)


def _penalty(kind: str, inside: int, outside: int) -> float:
    if kind == "cut-indicator":
        return 1.0 if inside > 0 and outside > 0 else 0.0
    if kind == "linear":
        return float(min(inside, outside))
    if kind == "quadratic":
        return float(inside * outside)
    raise ValueError(f"unknown penalty kind {kind!r}")


def hypercut_component_eval(inst: HypergraphCutInstance, e_index: int, subset: Subset) -> float:
    """Apply the edge's penalty to (|S & e|, |e - S|)."""
    edge = inst.hyperedges[e_index]
    s = set(subset)
    for v in s:
        if not 0 <= v < inst.n_vertices:
            raise IndexError(f"vertex {v} out of range")
    inside = len(s.intersection(edge))
    return _penalty(inst.penalty_kinds[e_index], inside, len(edge) - inside)


class HypergraphCutFunction(DecomposableFunction):
    """Sum of hyperedge splitting penalties."""

    def __init__(self, instance: HypergraphCutInstance):
        self.ground = GroundSet(instance.n_vertices)
        self.instance = instance

    @property
    def num_components(self) -> int:
        return self.instance.n_edges

    @cached_property
    def components(self):
        inst = self.instance
        return tuple(
            SubmodularComponent(self.ground,
                                lambda s, _i=i: hypercut_component_eval(inst, _i, s),
                                monotone_claim=False)
            for i in range(inst.n_edges)
        )

    def component_value(self, i: int, subset: Subset) -> float:
        if not 0 <= i < self.num_components:
            raise IndexError(f"component index {i} out of range")
        return hypercut_component_eval(self.instance, i, subset)

    def value(self, subset: Subset) -> float:
        s = self.ground.validate_subset(subset)
        return float(sum(self.component_value(i, s) for i in range(self.num_components)))

    def _table_for(self, masks: np.ndarray) -> np.ndarray:
        inst = self.instance
        edge_masks = np.array(
            [mask_from_subset(e, self.n) for e in inst.hyperedges], dtype=np.uint64)
        edge_sizes = np.array([len(e) for e in inst.hyperedges])
        inside = popcounts(masks[None, :] & edge_masks[:, None]).astype(np.int64)
        outside = edge_sizes[:, None] - inside
        out = np.empty(inside.shape, dtype=float)
        for i, kind in enumerate(inst.penalty_kinds):
            if kind == "cut-indicator":
                out[i] = ((inside[i] > 0) & (outside[i] > 0)).astype(float)
            elif kind == "linear":
                out[i] = np.minimum(inside[i], outside[i])
            else:
                out[i] = inside[i] * outside[i]
        return out


def hypergraph_function(inst: HypergraphCutInstance) -> HypergraphCutFunction:
    return HypergraphCutFunction(inst)


# ---------------------------------------------------------------------------
# Explicit table functions (test fixtures and tiny diagnostics)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableFunction:
    """A set function given by its full table of 2^n values, mask-indexed.

    The table must be normalized (values[0] == 0). Submodularity is not
    validated here, so counterexample fixtures stay constructible; use
    check_submodular for that.
    """

    n: int
    values: np.ndarray
    monotone: bool = False

    def __post_init__(self):
        if not 1 <= self.n <= 10:
            raise ValueError("table functions support 1 <= n <= 10")
        values = np.asarray(self.values, dtype=float).copy()
        if values.shape != (2 ** self.n,):
            raise ValueError(f"need exactly {2 ** self.n} values")
        if values[0] != 0.0:
            raise ValueError("table is not normalized: values[0] must be 0")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __call__(self, subset: Subset) -> float:
        return float(self.values[mask_from_subset(subset, self.n)])

    def as_component(self, ground: GroundSet | None = None) -> SubmodularComponent:
        ground = ground or GroundSet(self.n)
        if ground.n != self.n:
            raise ValueError("ground set size mismatch")
        return SubmodularComponent(ground, self.__call__, monotone_claim=self.monotone)


def table_sum_function(tables) -> DecomposableFunction:
    """DecomposableFunction whose components are explicit table functions."""
    tables = list(tables)
    if not tables:
        raise ValueError("need at least one table")
    ground = GroundSet(tables[0].n)
    return DecomposableFunction(ground, [t.as_component(ground) for t in tables])


# ---------------------------------------------------------------------------
# Synthetic generators
# ---------------------------------------------------------------------------

def gen_coverage(seed: int, n_sets: int, universe_size: int,
                 density: float) -> CoverageInstance:
    """Random coverage instance; every universe element ends up covered.

    Each (element, set) pair is included with probability density;
    elements left uncovered are resampled until covered, so the result is
    deterministic for a fixed seed but slightly denser than the nominal
    density for small density * n_sets.
    """
    if not 0 < density <= 1:
        raise ValueError("density must be in (0, 1]")
    if density * n_sets < 1:
        raise ValueError("infeasible: density * n_sets < 1 leaves elements uncovered")
    if universe_size < 1:
        raise ValueError("universe must be nonempty")
    rng = np.random.default_rng(seed)
    inc = rng.random((universe_size, n_sets)) < density
    uncovered = np.flatnonzero(~inc.any(axis=1))
    while uncovered.size:
        inc[uncovered] = rng.random((uncovered.size, n_sets)) < density
        uncovered = uncovered[~inc[uncovered].any(axis=1)]
    covers = [tuple(np.flatnonzero(row)) for row in inc]
    return CoverageInstance(n_sets, covers)


def gen_facility(seed: int, n_facilities: int, n_clients: int,
                 cost_law: str = "uniform", n_clusters: int = 5,
                 cluster_spread: float = 0.05) -> FacilityLocationInstance:
    """Random facility-location instance.

    uniform: iid U(0,1) utilities.
    clustered: facilities and cluster centers uniform in the unit square,
    clients scattered around the centers with the given spread, Manhattan
    distances turned into utilities by the waiting-spot transform. This
    makes the objective saturate quickly, like real pickup-density data.
    """
    if n_facilities < 1 or n_clients < 1:
        raise ValueError("need at least one facility and one client")
    rng = np.random.default_rng(seed)
    if cost_law == "uniform":
        return FacilityLocationInstance(rng.random((n_clients, n_facilities)))
    if cost_law == "clustered":
        k = max(1, min(n_clusters, n_clients))
        facilities = rng.random((n_facilities, 2))
        centers = rng.random((k, 2))
        which = rng.integers(0, k, size=n_clients)
        clients = centers[which] + rng.normal(0.0, cluster_spread, size=(n_clients, 2))
        dist = np.abs(clients[:, None, :] - facilities[None, :, :]).sum(axis=2)
        return uber_transform(dist)
    raise ValueError(f"unknown cost law {cost_law!r}")
