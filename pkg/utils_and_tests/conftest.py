"""
Shared fixtures: the fields and spaces the tests keep coming back to
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import catalog  # noqa: E402
from designs import assemble_space, make_system  # noqa: E402
from field_core import build_field, field_from_order  # noqa: E402
from utils import set_progress_enabled  # noqa: E402

set_progress_enabled(False)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance runs (minutes)")


@pytest.fixture(scope="session")
def z41():
    return build_field(catalog.Z41_ORDER)


@pytest.fixture(scope="session")
def z71():
    return field_from_order(catalog.F71_Q)


@pytest.fixture(scope="session")
def gf243():
    return build_field(catalog.AG211_P, catalog.AG211_N, modulus=catalog.AG211_MODULUS,
                       generator=catalog.AG211_GENERATOR)


@pytest.fixture(scope="session")
def z41_systems(z41):
    return [make_system(z41, catalog.Z41_HALFSET, blocks, name) for name, blocks in catalog.Z41_SYSTEMS.items()]


@pytest.fixture(scope="session")
def z41_space(z41_systems):
    return assemble_space(z41_systems)


@pytest.fixture(scope="session")
def f71_space(z71):
    from construct import develop_packing
    return develop_packing(z71, [catalog.F71_BASE_BLOCK], rho=catalog.F71_RHO)


@pytest.fixture(scope="session")
def f71_extended(z71, f71_space):
    from construct import extend_with_cosets
    return extend_with_cosets(z71, f71_space, rho=catalog.F71_RHO)


@pytest.fixture
def golden_path():
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    return lambda name: os.path.join(root, "golden", name)
