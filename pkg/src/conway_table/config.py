"""Runtime settings.

Defaults suit the shipped registry. Each value may be overridden from the
environment and, in the command-line tool, by a flag.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .registry import default_registry_path


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got '{raw}'") from None


@dataclass
class Settings:
    """Settings shared by the command-line tool and library callers.

    Attributes:
        registry_path (Path): Registry file to load. Defaults to the file
            shipped inside the package.
        oracle_trials (int): Random points per family for the oracle check.
            Zero disables the oracle.
        seed (int): Seed for oracle points and random identity instances.
        jobs (int): Worker threads used by ``verify_all``.
    """

    registry_path: Path = field(default_factory=default_registry_path)
    oracle_trials: int = 100
    seed: int = 1912
    jobs: int = 1

    def __post_init__(self):
        self.registry_path = Path(self.registry_path)
        if self.oracle_trials < 0:
            raise ValueError(f"oracle_trials must be non-negative, got {self.oracle_trials}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")

    @classmethod
    def from_env(cls) -> "Settings":
        """Read overrides from ``CONWAY_TABLE_*`` environment variables.

        Recognised variables are ``CONWAY_TABLE_REGISTRY``,
        ``CONWAY_TABLE_TRIALS``, ``CONWAY_TABLE_SEED`` and ``CONWAY_TABLE_JOBS``.
        Unset variables keep their defaults.

        Raises:
            ValueError: If a variable is not an integer or is out of range.
        """
        registry: Optional[str] = os.getenv("CONWAY_TABLE_REGISTRY")
        return cls(
            registry_path=Path(registry) if registry else default_registry_path(),
            oracle_trials=_env_int("CONWAY_TABLE_TRIALS", 100),
            seed=_env_int("CONWAY_TABLE_SEED", 1912),
            jobs=_env_int("CONWAY_TABLE_JOBS", 1),
        )
