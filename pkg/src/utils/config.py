import os
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from src.utils.errors import ConfigError

ENV_PREFIX = "DYNPLANAR_"


class Settings(BaseModel):
    """Runtime knobs, read from the environment (or a .env file loaded by the CLI)."""

    backend: Literal["reference", "balanced"] = "reference"
    flip_budget_factor: int = Field(default=10, ge=1)
    exhaustive_edge_limit: int = Field(default=0, ge=0)
    oracle_max_edges: int = Field(default=9, ge=1, le=12)
    check_critical: bool = False
    log_level: str = "WARNING"

    def flip_budget(self, edges: int, vertices: int) -> int:
        return self.flip_budget_factor * (edges + vertices)


def _env_bool(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def load_settings(**overrides) -> Settings:
    """Build Settings from DYNPLANAR_* environment variables plus explicit overrides."""
    raw = {}
    for name in Settings.model_fields:
        value = os.getenv(ENV_PREFIX + name.upper())
        if value is None:
            continue
        raw[name] = _env_bool(value) if name == "check_critical" else value
    raw.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return Settings(**raw)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e


DEFAULT_SETTINGS = Settings()
