import numpy as np
import pytest

from submodsparse import (
    CoverageInstance,
    FacilityLocationInstance,
    coverage_function,
    facility_function,
)


@pytest.fixture
def three_set_coverage():
    """Three sets over a three-element universe: set 0 covers elements
    {0,1}, set 1 covers {1,2}, set 2 covers {2}. Components are universe
    elements, so element 0 is covered only by set 0, element 1 by sets
    {0,1}, element 2 by sets {1,2}."""
    inst = CoverageInstance(3, [(0,), (0, 1), (1, 2)])
    return inst, coverage_function(inst)


@pytest.fixture
def two_client_facility():
    """Two clients, two facilities, utility rows (3,1) and (0,2)."""
    inst = FacilityLocationInstance(np.array([[3.0, 1.0], [0.0, 2.0]]))
    return inst, facility_function(inst)
