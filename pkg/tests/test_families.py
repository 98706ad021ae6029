"""Coverage, facility location, hypergraph penalties, table functions,
and the synthetic generators, including the vectorized fast paths against
the generic component-by-component reference."""

import numpy as np
import pytest

from submodsparse import (
    CoverageInstance,
    DecomposableFunction,
    FacilityLocationInstance,
    HypergraphCutInstance,
    TableFunction,
    check_monotone,
    check_submodular,
    coverage_function,
    facility_function,
    gen_coverage,
    gen_facility,
    hypergraph_function,
    table_sum_function,
    uber_transform,
)
from submodsparse.core import subset_from_mask
from submodsparse.families import (
    coverage_component_eval,
    facility_component_eval,
    hypercut_component_eval,
)


def test_coverage_instance_drops_uncovered():
    inst = CoverageInstance(3, [(0,), (), (1, 2)])
    assert inst.universe_size == 2
    assert inst.dropped_uncovered == 1
    assert inst.covers == ((0,), (1, 2))


def test_coverage_instance_validation():
    with pytest.raises(IndexError):
        CoverageInstance(2, [(0, 2)])
    with pytest.raises(ValueError):
        CoverageInstance(2, [(), ()])


def test_coverage_set_sizes_and_incidence(three_set_coverage):
    inst, _ = three_set_coverage
    assert list(inst.set_sizes) == [2, 2, 1]
    assert inst.incidence.shape == (3, 3)
    assert inst.edges() == [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)]


def test_coverage_eval(three_set_coverage):
    inst, F = three_set_coverage
    assert coverage_component_eval(inst, 0, (0,)) == 1.0
    assert coverage_component_eval(inst, 0, (1, 2)) == 0.0
    assert coverage_component_eval(inst, 0, ()) == 0.0
    assert F.value((0,)) == 2.0  # covers elements 0 and 1
    assert F.value((0, 1, 2)) == 3.0
    with pytest.raises(IndexError):
        coverage_component_eval(inst, 0, (5,))


def test_facility_instance_and_eval(two_client_facility):
    inst, F = two_client_facility
    assert facility_component_eval(inst, 0, ()) == 0.0
    assert facility_component_eval(inst, 0, (0, 1)) == 3.0
    assert facility_component_eval(inst, 1, (0,)) == 0.0
    assert F.value((0,)) == 3.0
    assert F.value((1,)) == 3.0
    with pytest.raises(ValueError):
        FacilityLocationInstance(np.array([[-1.0]]))


def test_facility_inert_clients():
    inst = FacilityLocationInstance(np.array([[0.0, 0.0], [1.0, 2.0]]))
    assert list(inst.inert_clients) == [0]


def test_uber_transform_rows_gain_a_zero():
    inst = uber_transform(np.array([[2.0, 5.0]]))
    assert np.array_equal(inst.cost, [[3.0, 0.0]])
    rng = np.random.default_rng(8)
    d = rng.random((6, 4)) * 10
    inst = uber_transform(d)
    assert (inst.cost >= 0).all()
    assert np.allclose(inst.cost.min(axis=1), 0.0)
    with pytest.raises(ValueError):
        uber_transform(np.array([[-1.0]]))


def test_hypergraph_penalties_by_hand():
    inst = HypergraphCutInstance(4, [(0, 1, 2), (0, 1, 2), (0, 1, 2)],
                                 ("cut-indicator", "linear", "quadratic"))
    # S = {0} splits the edge 1|2
    assert hypercut_component_eval(inst, 0, (0,)) == 1.0
    assert hypercut_component_eval(inst, 1, (0,)) == 1.0
    assert hypercut_component_eval(inst, 2, (0,)) == 2.0
    # S = {0,1} splits 2|1
    assert hypercut_component_eval(inst, 1, (0, 1)) == 1.0
    assert hypercut_component_eval(inst, 2, (0, 1)) == 2.0
    # no split: S contains the whole edge or misses it
    for comp in range(3):
        assert hypercut_component_eval(inst, comp, (0, 1, 2)) == 0.0
        assert hypercut_component_eval(inst, comp, (3,)) == 0.0


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        HypergraphCutInstance(2, [(0, 1)], ("nonsense",))
    with pytest.raises(ValueError):
        HypergraphCutInstance(2, [()], ("linear",))
    with pytest.raises(IndexError):
        HypergraphCutInstance(2, [(0, 5)], ("linear",))
    with pytest.raises(ValueError):
        HypergraphCutInstance(2, [(0, 1)], ("linear", "linear"))


def test_hypergraph_components_submodular_not_monotone():
    inst = HypergraphCutInstance(4, [(0, 1, 3), (1, 2, 3), (0, 2)],
                                 ("cut-indicator", "linear", "quadratic"))
    F = hypergraph_function(inst)
    for c in F.components:
        ok, witness = check_submodular(c)
        assert ok, witness
        assert not c.monotone_claim
    ok, _ = check_monotone(F.components[0])
    assert not ok


def test_table_function_contract():
    with pytest.raises(ValueError):
        TableFunction(2, np.array([1.0, 0.0, 0.0, 0.0]))  # not normalized
    with pytest.raises(ValueError):
        TableFunction(2, np.zeros(3))
    with pytest.raises(ValueError):
        TableFunction(11, np.zeros(2 ** 11))
    t = TableFunction(2, np.array([0.0, 1.0, 2.0, 2.5]))
    assert t(()) == 0.0
    assert t((0,)) == 1.0
    assert t((0, 1)) == 2.5


def test_table_sum_function():
    a = TableFunction(2, np.array([0.0, 1.0, 0.0, 1.0]))
    b = TableFunction(2, np.array([0.0, 0.0, 2.0, 2.0]))
    F = table_sum_function([a, b])
    assert F.value((0, 1)) == 3.0
    assert F.num_components == 2


def test_gen_coverage_everything_covered():
    inst = gen_coverage(5, n_sets=6, universe_size=40, density=0.2)
    assert inst.universe_size == 40
    assert all(len(c) >= 1 for c in inst.covers)
    again = gen_coverage(5, n_sets=6, universe_size=40, density=0.2)
    assert inst.covers == again.covers
    with pytest.raises(ValueError):
        gen_coverage(0, n_sets=3, universe_size=10, density=0.1)
    with pytest.raises(ValueError):
        gen_coverage(0, n_sets=3, universe_size=10, density=1.5)


def test_gen_facility_laws():
    uni = gen_facility(3, n_facilities=5, n_clients=20, cost_law="uniform")
    assert uni.cost.shape == (20, 5)
    assert (uni.cost >= 0).all() and (uni.cost < 1).all()
    clu = gen_facility(3, n_facilities=5, n_clients=20, cost_law="clustered")
    assert np.allclose(clu.cost.min(axis=1), 0.0)  # waiting-spot transform ran
    assert np.array_equal(
        clu.cost, gen_facility(3, 5, 20, cost_law="clustered").cost)
    with pytest.raises(ValueError):
        gen_facility(3, 5, 20, cost_law="weird")


def _generic_twin(F):
    return DecomposableFunction(F.ground, F.components)


@pytest.mark.parametrize("maker", [
    lambda: coverage_function(gen_coverage(11, n_sets=5, universe_size=12, density=0.4)),
    lambda: facility_function(gen_facility(11, n_facilities=5, n_clients=8)),
    lambda: hypergraph_function(HypergraphCutInstance(
        5, [(0, 1, 2), (2, 3), (1, 3, 4)], ("cut-indicator", "linear", "quadratic"))),
])
def test_vectorized_paths_match_generic(maker):
    F = maker()
    G = _generic_twin(F)
    rng = np.random.default_rng(0)
    w = rng.random(F.num_components)
    w[rng.random(F.num_components) < 0.4] = 0.0
    for mask in range(1, 2 ** F.n):
        s = subset_from_mask(mask)
        assert F.value(s) == pytest.approx(G.value(s), abs=1e-12)
        assert F.weighted_value(w, s) == pytest.approx(G.weighted_value(w, s), abs=1e-12)
    assert np.allclose(F.value_table(), G.value_table(), atol=1e-12)
    assert np.allclose(F.singleton_values(), G.singleton_values(), atol=1e-12)


def test_random_family_components_pass_checks():
    cov = coverage_function(gen_coverage(2, n_sets=4, universe_size=6, density=0.5))
    fac = facility_function(gen_facility(2, n_facilities=4, n_clients=3))
    for F in (cov, fac):
        for c in F.components:
            ok, witness = check_submodular(c)
            assert ok, witness
            ok, witness = check_monotone(c)
            assert ok, witness
