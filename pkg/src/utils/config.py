"""Configuration management using Pydantic settings."""

import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..errors import ConfigurationError


class Config(BaseSettings):
    """Process-level settings with validation."""

    model_config = SettingsConfigDict(
        env_prefix="RDWENO_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Output
    output_dir: str = Field(default="results", description="Default directory for run outputs")

    # Iteration budgets
    max_iters_1d: int = Field(default=200000, description="Default iteration cap for 1D runs")
    max_iters_2d: int = Field(default=500000, description="Default iteration cap for 2D runs")
    progress_every: int = Field(
        default=1000, description="Iterations between progress log lines"
    )

    # Logging Configuration
    log_level: str = Field(default="INFO", description="Logging level")
    log_file: str = Field(default="logs/rdweno.log", description="Log file path")
    log_max_size_mb: int = Field(default=100, description="Maximum log file size in MB")
    log_backup_count: int = Field(default=5, description="Number of log backups to keep")

    # Prometheus Metrics
    prometheus_enabled: bool = Field(default=False, description="Enable Prometheus metrics")
    prometheus_port: int = Field(default=9090, description="Prometheus metrics port")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Validate log level."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        v_upper = v.upper()
        if v_upper not in valid_levels:
            raise ValueError(f"Log level must be one of {valid_levels}")
        return v_upper

    @field_validator("max_iters_1d", "max_iters_2d", "progress_every")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("must be positive")
        return v


# Global config instance
_config: Optional[Config] = None


def get_config() -> Config:
    """Get or create global config instance."""
    global _config
    if _config is None:
        _config = Config()
    return _config


def load_config(env_file: Optional[str] = None) -> Config:
    """Load configuration from environment file."""
    global _config
    if env_file and os.path.exists(env_file):
        _config = Config(_env_file=env_file)
    else:
        _config = Config()
    return _config


class RunConfig(BaseModel):
    """One harness run, as given by a ``key = value`` file and/or CLI flags."""

    model_config = ConfigDict(extra="forbid")

    problem: str
    n: Optional[int] = Field(default=None, description="Cell count (1D, or both axes in 2D)")
    nx: Optional[int] = None
    ny: Optional[int] = None
    cfl: float = 0.3
    max_iters: Optional[int] = None
    tol: float = 1e-12
    out_dir: Optional[str] = None
    average_state: Literal["arithmetic", "roe"] = "arithmetic"
    direction: Literal["auto", "velocity", "x", "y"] = "auto"
    sections: List[float] = Field(default_factory=list, description="y values of 2D cross sections")
    gravity: Optional[float] = None
    beta: Optional[float] = None
    pre_shock_mach: Optional[float] = None

    @field_validator("problem")
    @classmethod
    def validate_problem(cls, v: str) -> str:
        v = v.strip().lower()
        if not v:
            raise ValueError("problem must not be empty")
        return v

    @field_validator("n", "nx", "ny", "max_iters")
    @classmethod
    def validate_counts(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("cfl", "tol")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @field_validator("sections", mode="before")
    @classmethod
    def split_sections(cls, v: Any) -> Any:
        if isinstance(v, str):
            return [float(item) for item in v.split(",") if item.strip()]
        return v

    def overrides(self) -> Dict[str, float]:
        """Problem parameter overrides that were explicitly set."""
        names = ("gravity", "beta", "pre_shock_mach")
        return {name: getattr(self, name) for name in names if getattr(self, name) is not None}


def parse_config_file(path: str) -> Dict[str, str]:
    """
    Read a line-oriented ``key = value`` run file.

    ``#`` starts a comment. Keys must be fields of :class:`RunConfig`.

    Raises:
        ConfigurationError: on malformed lines, unknown or duplicate keys
    """
    valid_keys = set(RunConfig.model_fields)
    values: Dict[str, str] = {}

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"Cannot read config file {path}: {e}") from e

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")

        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in valid_keys:
            raise ConfigurationError(
                f"{path}:{lineno}: unknown key {key!r} (valid: {', '.join(sorted(valid_keys))})"
            )
        if key in values:
            raise ConfigurationError(f"{path}:{lineno}: duplicate key {key!r}")
        values[key] = value

    return values


def build_run_config(file_values: Optional[Dict[str, Any]] = None, **cli_values: Any) -> RunConfig:
    """Merge config-file values with CLI flags (flags win) and validate."""
    merged: Dict[str, Any] = dict(file_values or {})
    merged.update({k: v for k, v in cli_values.items() if v is not None and v != ()})

    if "problem" not in merged:
        raise ConfigurationError("A problem name is required (--problem or 'problem = ...')")

    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid run configuration: {e}") from e
