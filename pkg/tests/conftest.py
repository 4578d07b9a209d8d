import os

import pytest

from ydhalg.abgroup import FinAbGroup
from ydhalg.catalog import (DUAL_GROUP_ALGEBRA, GROUP_ALGEBRA,
                            standard_catalog, trivial_instances)
from ydhalg.commalg import primitive_idempotents
from ydhalg.ydhio import load_algebra

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="session")
def catalog():
    """The 30 stock trivial instances."""
    return standard_catalog()


@pytest.fixture(scope="session")
def nontrivial():
    """The first persisted nontrivial search fixture (dim 4 over Z/2)."""
    return load_algebra(fixture_path("nontrivial_z2_d4_00.ydh"))


@pytest.fixture(scope="session")
def nontrivial_analysis(nontrivial):
    return primitive_idempotents(nontrivial)


@pytest.fixture(scope="session")
def small_analyses(catalog):
    """Analyses of the small catalog instances (dim <= 4), keyed by label."""
    out = {}
    for algebra in catalog:
        if algebra.dim <= 4:
            out[algebra.label] = primitive_idempotents(algebra)
    return out


@pytest.fixture(scope="session")
def kz3():
    g2 = FinAbGroup([2])
    return trivial_instances(FinAbGroup([3]), GROUP_ALGEBRA, g2)


@pytest.fixture(scope="session")
def kdual_z2z2():
    g2 = FinAbGroup([2])
    return trivial_instances(FinAbGroup([2, 2]), DUAL_GROUP_ALGEBRA, g2)
