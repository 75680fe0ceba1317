from pathlib import Path

import pytest

from conway_table.config import Settings
from conway_table.registry import default_registry_path


class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("REGISTRY", "TRIALS", "SEED", "JOBS"):
            monkeypatch.delenv(f"CONWAY_TABLE_{name}", raising=False)
        settings = Settings.from_env()
        assert settings.registry_path == default_registry_path()
        assert settings.registry_path.is_file()
        assert (settings.oracle_trials, settings.seed, settings.jobs) == (100, 1912, 1)

    def test_environment_overrides(self, monkeypatch, tmp_path):
        monkeypatch.setenv("CONWAY_TABLE_REGISTRY", str(tmp_path / "families.json"))
        monkeypatch.setenv("CONWAY_TABLE_TRIALS", "7")
        monkeypatch.setenv("CONWAY_TABLE_SEED", "42")
        monkeypatch.setenv("CONWAY_TABLE_JOBS", "3")
        settings = Settings.from_env()
        assert settings.registry_path == tmp_path / "families.json"
        assert (settings.oracle_trials, settings.seed, settings.jobs) == (7, 42, 3)

    def test_path_coerced(self):
        assert isinstance(Settings(registry_path="families.json").registry_path, Path)

    @pytest.mark.parametrize("kwargs", [{"oracle_trials": -1}, {"jobs": 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            Settings(**kwargs)

    def test_non_integer_names_the_variable(self, monkeypatch):
        monkeypatch.setenv("CONWAY_TABLE_SEED", "1.5")
        with pytest.raises(ValueError, match="CONWAY_TABLE_SEED must be an integer"):
            Settings.from_env()

    def test_blank_keeps_default(self, monkeypatch):
        monkeypatch.setenv("CONWAY_TABLE_TRIALS", " ")
        assert Settings.from_env().oracle_trials == 100
