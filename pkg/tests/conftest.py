import pytest

from conway_table.registry import FamilyRegistry, default_registry_path, verify_all


@pytest.fixture(scope="session")
def registry():
    return FamilyRegistry.load(default_registry_path())


@pytest.fixture(scope="session")
def reports(registry):
    return {r.family_id: r for r in verify_all(list(registry))}
