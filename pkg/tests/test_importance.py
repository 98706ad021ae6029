"""Importance values: brute force, matroid-constrained brute force,
family closed forms, and the monotone upper surrogate."""

import numpy as np
import pytest

from submodsparse import (
    CoverageInstance,
    DecomposableFunction,
    FacilityLocationInstance,
    GroundSet,
    SubmodularComponent,
    UniformMatroid,
    coverage_function,
    facility_function,
    gen_coverage,
    gen_facility,
    hypergraph_function,
    HypergraphCutInstance,
    pi_coverage,
    pi_exact,
    pi_exact_matroid,
    pi_facility,
    pi_upper_monotone,
)


def _single(fn, n=3, monotone=False):
    g = GroundSet(n)
    return DecomposableFunction(g, [SubmodularComponent(g, fn, monotone_claim=monotone)])


def test_single_component_has_importance_one():
    F = _single(lambda s: float(len(s)))
    est = pi_exact(F)
    assert est.p_hat == pytest.approx([1.0])
    assert est.mode == "exact"
    assert est.sum_p == pytest.approx(1.0)


def test_identical_pair_splits_evenly():
    g = GroundSet(3)
    comps = [SubmodularComponent(g, lambda s: float(min(len(s), 2))) for _ in range(2)]
    est = pi_exact(DecomposableFunction(g, comps))
    assert est.p_hat == pytest.approx([0.5, 0.5])


def test_exact_on_coverage_fixture(three_set_coverage):
    _, F = three_set_coverage
    est = pi_exact(F)
    assert est.p_hat == pytest.approx([0.5, 0.5, 1.0])


def test_exact_skips_zero_total_sets():
    # component vanishing everywhere except on {1}; F({0}) stays 0
    g = GroundSet(2)
    comps = [SubmodularComponent(g, lambda s: 1.0 if 1 in s else 0.0)]
    est = pi_exact(DecomposableFunction(g, comps))
    assert est.p_hat == pytest.approx([1.0])


def test_exact_rejects_all_zero():
    F = _single(lambda s: 0.0)
    with pytest.raises(ValueError):
        pi_exact(F)


def test_matroid_full_rank_equals_exact(three_set_coverage):
    _, F = three_set_coverage
    m = UniformMatroid(F.ground, F.n)
    assert pi_exact_matroid(F, m).p_hat == pytest.approx(pi_exact(F).p_hat)


def test_matroid_k1_is_singleton_max():
    inst = gen_facility(4, n_facilities=4, n_clients=5)
    F = facility_function(inst)
    est = pi_exact_matroid(F, UniformMatroid(F.ground, 1))
    singles = F.singleton_values()
    want = (singles / singles.sum(axis=0)).max(axis=1)
    assert est.p_hat == pytest.approx(want)
    assert est.mode == "exact-matroid"


def test_matroid_importance_never_exceeds_unconstrained():
    for seed in range(5):
        inst = gen_coverage(seed, n_sets=5, universe_size=15, density=0.4)
        F = coverage_function(inst)
        un = pi_exact(F).p_hat
        for k in (1, 2, 3):
            con = pi_exact_matroid(F, UniformMatroid(F.ground, k)).p_hat
            assert (con <= un + 1e-12).all()


def test_pi_coverage_fixture_and_singleton(three_set_coverage):
    inst, _ = three_set_coverage
    est = pi_coverage(inst)
    assert est.p_hat == pytest.approx([0.5, 0.5, 1.0])
    assert est.mode == "closed-coverage"
    solo = CoverageInstance(2, [(0,), (0, 1)])
    # element 1 has a covering set of size one, so its best ratio is 1
    assert pi_coverage(solo).p_hat[1] == 1.0
    assert pi_coverage(solo).p_hat[0] == 0.5


def test_pi_coverage_sum_bounded_by_sets():
    for seed in range(20):
        inst = gen_coverage(seed, n_sets=6, universe_size=30, density=0.3)
        assert pi_coverage(inst).sum_p <= inst.n_sets + 1e-12


def test_pi_facility_fixture(two_client_facility):
    inst, _ = two_client_facility
    est = pi_facility(inst)
    assert est.p_hat == pytest.approx([1.0, 2.0 / 3.0])
    assert est.mode == "closed-facility"


def test_pi_facility_single_client_and_sum_bound():
    solo = FacilityLocationInstance(np.array([[1.0, 4.0]]))
    assert pi_facility(solo).p_hat == pytest.approx([1.0])
    for seed in range(20):
        inst = gen_facility(seed, n_facilities=6, n_clients=9)
        assert pi_facility(inst).sum_p <= inst.n_facilities + 1e-12


def test_pi_facility_ignores_dead_columns():
    inst = FacilityLocationInstance(np.array([[0.0, 2.0], [0.0, 1.0]]))
    est = pi_facility(inst)
    assert est.p_hat == pytest.approx([2.0 / 3.0, 1.0 / 3.0])
    with pytest.raises(ValueError):
        pi_facility(FacilityLocationInstance(np.zeros((2, 2))))


def test_closed_forms_equal_exact_small():
    for seed in range(10):
        cov = gen_coverage(seed, n_sets=6, universe_size=14, density=0.4)
        Fc = coverage_function(cov)
        assert np.allclose(pi_coverage(cov).p_hat, pi_exact(Fc).p_hat, atol=1e-12)
        fac = gen_facility(seed, n_facilities=6, n_clients=10)
        Ff = facility_function(fac)
        assert np.allclose(pi_facility(fac).p_hat, pi_exact(Ff).p_hat, atol=1e-12)


def test_upper_monotone_single_component_gives_n():
    F = _single(lambda s: float(len(s)), n=4, monotone=True)
    est = pi_upper_monotone(F)
    assert est.p_hat == pytest.approx([4.0])
    assert est.mode == "upper-monotone"


def test_upper_monotone_fixture_element(three_set_coverage):
    _, F = three_set_coverage
    est = pi_upper_monotone(F)
    # element 2 is covered by set 1 (ratio 1/2 among singleton sums) and
    # set 2 (ratio 1/1), scaled by n = 3
    assert est.p_hat[2] == pytest.approx(3.0)


def test_upper_monotone_dominates_exact():
    for seed in range(50):
        if seed % 2:
            F = coverage_function(gen_coverage(seed, n_sets=6, universe_size=12,
                                               density=0.4))
        else:
            F = facility_function(gen_facility(seed, n_facilities=6, n_clients=8))
        up = pi_upper_monotone(F).p_hat
        ex = pi_exact(F).p_hat
        assert (up >= ex - 1e-12).all()


def test_upper_monotone_requires_monotone_claim():
    inst = HypergraphCutInstance(3, [(0, 1)], ("linear",))
    with pytest.raises(ValueError):
        pi_upper_monotone(hypergraph_function(inst))


def test_exact_importances_in_unit_interval():
    for seed in range(5):
        F = coverage_function(gen_coverage(seed, n_sets=5, universe_size=10,
                                           density=0.5))
        p = pi_exact(F).p_hat
        assert (p > 0).all() and (p <= 1 + 1e-12).all()
