"""Pytest configuration and shared fixtures."""

import os
import sys
import pytest

# Add project root to path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

# Settings are cached on first use, so the test environment goes in before any import
os.environ["METRICS_ENABLED"] = "false"
os.environ["LOG_LEVEL"] = "WARNING"
os.environ["STRUCTURES_REGISTRY_PATH"] = os.path.join(project_root, "config", "structures.yaml")

from gammalab.services.semiring import GammaSemiring
from gammalab.services.structure_registry import StructureRegistryService


@pytest.fixture(scope="session", autouse=True)
def setup_test_environment():
    """Set up test environment variables."""
    os.environ["METRICS_ENABLED"] = "false"
    os.environ["LOG_LEVEL"] = "WARNING"
    yield


@pytest.fixture(scope="session")
def registry():
    """Registry service over the bundled config/structures.yaml."""
    return StructureRegistryService(
        config_file_path=os.path.join(project_root, "config", "structures.yaml")
    )


@pytest.fixture(scope="session")
def e1(registry):
    return registry.resolve("e1")


@pytest.fixture(scope="session")
def e2(registry):
    return registry.resolve("e2")


@pytest.fixture(scope="session")
def e4(registry):
    return registry.resolve("e4")


@pytest.fixture(scope="session")
def asymmetric_example(registry):
    return registry.resolve("asymmetric_example")


@pytest.fixture(scope="session")
def and_4ary(registry):
    return registry.resolve("and_4ary")


def or_table(m: int = 2):
    return [[max(a, b) for b in range(m)] for a in range(m)]


def zero_structure(m: int, n: int = 3, r: int = 1) -> GammaSemiring:
    """Max addition with the zero operation."""
    return GammaSemiring.from_rules(m, n, r, max, lambda gammas, args: 0)


@pytest.fixture
def zero_op():
    """Two elements under OR with the zero operation."""
    return zero_structure(2)
