"""Ground set plumbing, component wrappers, weighted sums, and the
exhaustive submodularity/monotonicity checkers."""

import numpy as np
import pytest

from submodsparse import (
    BudgetExceededError,
    DecomposableFunction,
    GroundSet,
    SparsifierWeights,
    SubmodularComponent,
    TableFunction,
    check_monotone,
    check_submodular,
    eval_weighted,
    marginal_gain,
)
from submodsparse.core import mask_from_subset, popcounts, subset_from_mask


def test_mask_roundtrip():
    for subset in [(), (0,), (2, 0), (0, 1, 2, 3)]:
        m = mask_from_subset(subset, 4)
        assert subset_from_mask(m) == tuple(sorted(subset))


def test_mask_bounds_checked():
    with pytest.raises(IndexError):
        mask_from_subset((4,), 4)
    with pytest.raises(IndexError):
        mask_from_subset((-1,), 4)


def test_popcounts_matches_python():
    masks = np.array([0, 1, 3, 7, 255, 2**20 - 1], dtype=np.uint64)
    got = popcounts(masks)
    want = [bin(int(m)).count("1") for m in masks]
    assert list(got) == want


def test_ground_set_validation():
    with pytest.raises(ValueError):
        GroundSet(0)
    with pytest.raises(ValueError):
        GroundSet(3, labels=("a", "b"))
    g = GroundSet(3)
    assert g.validate_subset((2, 0)) == frozenset({0, 2})
    with pytest.raises(IndexError):
        g.validate_subset((3,))


def test_component_requires_normalization():
    g = GroundSet(2)
    with pytest.raises(ValueError):
        SubmodularComponent(g, lambda s: len(s) + 1.0)


def test_component_rejects_negative_values():
    g = GroundSet(2)
    c = SubmodularComponent(g, lambda s: -1.0 if s else 0.0)
    with pytest.raises(ValueError):
        c.value((0,))


def test_decomposable_sum_and_weighting():
    g = GroundSet(3)
    comps = [SubmodularComponent(g, lambda s, k=k: float(min(len(s), k)))
             for k in (1, 2)]
    F = DecomposableFunction(g, comps)
    assert F.value((0, 1)) == 1 + 2
    assert F.value(()) == 0.0
    w = np.array([2.0, 0.0])
    assert F.weighted_value(w, (0, 1)) == 2.0
    assert eval_weighted(F, w, (0, 1)) == 2.0
    # all-ones weights reproduce the plain sum
    ones = SparsifierWeights.all_ones(2)
    for mask in range(1, 8):
        s = subset_from_mask(mask)
        assert F.weighted_value(ones, s) == F.value(s)


def test_components_must_share_ground():
    g2, g3 = GroundSet(2), GroundSet(3)
    c = SubmodularComponent(g2, lambda s: float(len(s)))
    with pytest.raises(ValueError):
        DecomposableFunction(g3, [c])


def test_value_table_indexing():
    g = GroundSet(3)
    comps = [SubmodularComponent(g, lambda s: float(len(s)))]
    F = DecomposableFunction(g, comps)
    table = F.value_table()
    assert table.shape == (1, 7)
    for mask in range(1, 8):
        assert table[0, mask - 1] == len(subset_from_mask(mask))
    assert F.value_table() is table  # cached


def test_value_table_budget():
    g = GroundSet(25)
    F = DecomposableFunction(g, [SubmodularComponent(g, lambda s: float(len(s)))])
    with pytest.raises(BudgetExceededError):
        F.value_table()


def test_singleton_values_match_components():
    g = GroundSet(4)
    rng = np.random.default_rng(3)
    rows = rng.random((3, 4))
    comps = [SubmodularComponent(g, lambda s, r=r: float(r[list(s)].max()) if s else 0.0)
             for r in rows]
    F = DecomposableFunction(g, comps)
    singles = F.singleton_values()
    assert singles.shape == (3, 4)
    assert np.allclose(singles, rows)


def test_sparsifier_weights_support_and_size():
    w = SparsifierWeights(weights=np.array([0.0, 2.5, 0.0, 1.0]), seed=0,
                          epsilon=0.5, delta=0.1)
    assert list(w.support) == [1, 3]
    assert w.size == 2
    assert w.num_components == 4
    with pytest.raises(ValueError):
        SparsifierWeights(weights=np.array([-1.0]), seed=0, epsilon=0.5, delta=0.1)


def test_weights_are_immutable():
    w = SparsifierWeights(weights=np.ones(2), seed=0, epsilon=0.5, delta=0.1)
    with pytest.raises(ValueError):
        w.weights[0] = 7.0


def test_marginal_gain():
    f = lambda s: float(min(len(s), 2))
    assert marginal_gain(f, 1, (0,)) == 1.0
    assert marginal_gain(f, 2, (0, 1)) == 0.0
    with pytest.raises(ValueError):
        marginal_gain(f, 0, (0,))


def test_check_submodular_accepts_coverage_like():
    g = GroundSet(3)
    c = SubmodularComponent(g, lambda s: 1.0 if 0 in s or 1 in s else 0.0)
    ok, witness = check_submodular(c)
    assert ok and witness is None


def test_check_submodular_finds_violation():
    # f({0,1}) too large: f(0)+f(1) < f(01)+f(empty)
    t = TableFunction(2, np.array([0.0, 1.0, 1.0, 3.0]))
    ok, witness = check_submodular(t.as_component())
    assert not ok
    s, bigger, e = witness
    assert set(s) <= set(bigger) and e not in bigger
    # the witness triple actually violates diminishing returns
    f = t
    assert f(tuple(set(s) | {e})) - f(s) < f(tuple(set(bigger) | {e})) - f(bigger)


def test_check_monotone():
    g = GroundSet(2)
    mono = SubmodularComponent(g, lambda s: float(len(s)))
    assert check_monotone(mono) == (True, None)
    cut = TableFunction(2, np.array([0.0, 1.0, 1.0, 0.0]))
    ok, witness = check_monotone(cut.as_component())
    assert not ok
    s, e = witness
    assert cut(tuple(set(s) | {e})) < cut(s)
