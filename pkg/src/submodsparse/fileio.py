"""File formats: JSON instance envelopes, weights CSV with a JSON
sidecar, verification reports, benchmark CSV, and ingest loaders for
locally prepared datasets.

Everything is plain JSON or CSV, written with sorted keys and fixed
separators so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from .core import DecomposableFunction, SparsifierWeights
from .families import (
    CoverageInstance,
    FacilityLocationInstance,
    HypergraphCutInstance,
    TableFunction,
    coverage_function,
    facility_function,
    hypergraph_function,
    table_sum_function,
    uber_transform,
)
from .matroid import PartitionMatroid
from .verify import VerificationReport

BENCH_COLUMNS = ("epsilon", "trial", "sparsifier_size", "relative_size",
                 "greedy_value_sparse", "greedy_value_full",
                 "relative_quality", "runtime_sparse_ms", "runtime_full_ms")


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

def instance_to_dict(instance) -> dict:
    if isinstance(instance, CoverageInstance):
        return {"type": "coverage", "n_sets": instance.n_sets,
                "edges": [[i, a] for i, a in instance.edges()]}
    if isinstance(instance, FacilityLocationInstance):
        return {"type": "facility", "n_facilities": instance.n_facilities,
                "cost": instance.cost.tolist()}
    if isinstance(instance, HypergraphCutInstance):
        return {"type": "hypergraph", "n_vertices": instance.n_vertices,
                "hyperedges": [list(e) for e in instance.hyperedges],
                "penalty_kinds": list(instance.penalty_kinds)}
    if isinstance(instance, TableFunction):
        return {"type": "table", "n": instance.n,
                "values": instance.values.tolist(),
                "monotone": instance.monotone}
    raise TypeError(f"unknown instance type {type(instance).__name__}")


def instance_from_dict(doc: dict):
    kind = doc.get("type")
    if kind == "coverage":
        n_sets = int(doc["n_sets"])
        covers: dict[int, list[int]] = {}
        for comp, ground in doc["edges"]:
            covers.setdefault(int(comp), []).append(int(ground))
        universe = max(covers) + 1 if covers else 0
        return CoverageInstance(n_sets, [covers.get(i, []) for i in range(universe)])
    if kind == "facility":
        cost = np.asarray(doc["cost"], dtype=float)
        if cost.shape[1] != int(doc["n_facilities"]):
            raise ValueError("cost width disagrees with n_facilities")
        return FacilityLocationInstance(cost)
    if kind == "hypergraph":
        return HypergraphCutInstance(int(doc["n_vertices"]),
                                     tuple(tuple(e) for e in doc["hyperedges"]),
                                     tuple(doc["penalty_kinds"]))
    if kind == "table":
        return TableFunction(int(doc["n"]), np.asarray(doc["values"], dtype=float),
                             monotone=bool(doc.get("monotone", False)))
    raise ValueError(f"unknown instance type {kind!r}")


def function_of(instance) -> DecomposableFunction:
    if isinstance(instance, CoverageInstance):
        return coverage_function(instance)
    if isinstance(instance, FacilityLocationInstance):
        return facility_function(instance)
    if isinstance(instance, HypergraphCutInstance):
        return hypergraph_function(instance)
    if isinstance(instance, TableFunction):
        return table_sum_function([instance])
    raise TypeError(f"unknown instance type {type(instance).__name__}")


def save_instance(path, instance) -> None:
    Path(path).write_text(_dump_json(instance_to_dict(instance)))


def load_instance(path):
    """Instance object from a JSON envelope; function_of turns it into an
    evaluatable objective."""
    return instance_from_dict(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# Weights CSV + sidecar
# ---------------------------------------------------------------------------

def _sidecar_path(path) -> Path:
    p = Path(path)
    return p.with_name(p.name + ".json")


def save_weights(path, w: SparsifierWeights, sum_p: float | None = None) -> None:
    """CSV of the nonzero weights plus a .json sidecar with the run's
    parameters. Zero weights are omitted; the instance supplies the
    component count on load."""
    lines = ["component_id,weight"]
    lines.extend(f"{i},{float(w.weights[i])!r}" for i in w.support)
    Path(path).write_text("\n".join(lines) + "\n")
    meta = {
        "epsilon": _none_if_nan(w.epsilon),
        "delta": _none_if_nan(w.delta),
        "kappa": _none_if_nan(w.kappa),
        "sum_p": _none_if_nan(sum_p) if sum_p is not None else None,
        "size": w.size,
        "mode": w.mode,
        "seed": w.seed,
        "guarantee": w.guarantee,
    }
    _sidecar_path(path).write_text(_dump_json(meta))


def _none_if_nan(v):
    v = float(v)
    return None if math.isnan(v) else v


def _or_nan(v):
    return float("nan") if v is None else float(v)


def load_weights(path, num_components: int) -> SparsifierWeights:
    dense = np.zeros(num_components)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["component_id", "weight"]:
            raise ValueError("weights CSV must start with 'component_id,weight'")
        for row in reader:
            if not row:
                continue
            i = int(row[0])
            if not 0 <= i < num_components:
                raise ValueError(f"component id {i} out of range")
            dense[i] = float(row[1])
    meta_path = _sidecar_path(path)
    meta = json.loads(meta_path.read_text()) if meta_path.exists() else {}
    return SparsifierWeights(
        weights=dense,
        seed=int(meta.get("seed", 0)),
        epsilon=_or_nan(meta.get("epsilon")),
        delta=_or_nan(meta.get("delta")),
        kappa=_or_nan(meta.get("kappa")),
        mode=meta.get("mode", "explicit"),
        guarantee=bool(meta.get("guarantee", True)),
    )


# ---------------------------------------------------------------------------
# Reports and benchmark rows
# ---------------------------------------------------------------------------

def report_json(report: VerificationReport) -> str:
    return _dump_json(report.to_dict())


def save_bench(path, rows: list[dict]) -> None:
    """Benchmark CSV, one row per (epsilon, trial), sorted."""
    rows = sorted(rows, key=lambda r: (r["epsilon"], r["trial"]))
    lines = [",".join(BENCH_COLUMNS)]
    for r in rows:
        lines.append(",".join(_cell(r[c]) for c in BENCH_COLUMNS))
    Path(path).write_text("\n".join(lines) + "\n")


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def load_bench(path) -> dict[str, np.ndarray]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != BENCH_COLUMNS:
            raise ValueError("unrecognized benchmark CSV header")
        rows = [row for row in reader if row]
    data = np.array(rows, dtype=float)
    return {c: data[:, j] for j, c in enumerate(BENCH_COLUMNS)}


# ---------------------------------------------------------------------------
# Matroid description
# ---------------------------------------------------------------------------

def load_partition_matroid(path, ground) -> PartitionMatroid:
    doc = json.loads(Path(path).read_text())
    return PartitionMatroid(ground, doc["blocks"], doc["capacities"])


def save_partition_matroid(path, matroid: PartitionMatroid) -> None:
    doc = {"blocks": [list(b) for b in matroid.blocks],
           "capacities": list(matroid.capacities)}
    Path(path).write_text(_dump_json(doc))


# ---------------------------------------------------------------------------
# Ingest: locally prepared CSVs
# ---------------------------------------------------------------------------

def _numeric_rows(path, width: int) -> list[list[float]]:
    rows = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row:
                continue
            try:
                vals = [float(c) for c in row[:width]]
            except ValueError:
                if not rows:
                    continue  # header line
                raise
            rows.append(vals)
    if not rows:
        raise ValueError(f"no data rows in {path}")
    return rows


def load_edge_csv(path, n_sets: int | None = None) -> CoverageInstance:
    """Bipartite edge list 'component_id,ground_id' -> coverage instance.

    The ground side is the selectable side (the sets); n_sets defaults to
    one past the largest ground id seen.
    """
    pairs = [(int(a), int(b)) for a, b in _numeric_rows(path, 2)]
    if n_sets is None:
        n_sets = max(b for _, b in pairs) + 1
    covers: dict[int, list[int]] = {}
    for comp, ground in pairs:
        covers.setdefault(comp, []).append(ground)
    universe = max(covers) + 1
    return CoverageInstance(n_sets, [covers.get(i, []) for i in range(universe)])


def load_points_csv(clients_path, facilities_path) -> FacilityLocationInstance:
    """Two coordinate CSVs ('x,y' rows) -> facility-location instance via
    Manhattan distances and the waiting-spot transform."""
    clients = np.array(_numeric_rows(clients_path, 2))
    facilities = np.array(_numeric_rows(facilities_path, 2))
    dist = np.abs(clients[:, None, :] - facilities[None, :, :]).sum(axis=2)
    return uber_transform(dist)
