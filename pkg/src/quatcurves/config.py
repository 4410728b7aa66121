"""
Toolkit configuration.

Defaults live in ``ToolkitConfig``; an optional YAML file overrides them and
explicit command-line flags override the file. Environment variables are
never consulted.
"""

from pathlib import Path
from typing import Any, Optional, Union

import yaml
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from quatcurves.errors import CurveIOError, ParameterError


class ToolkitConfig(BaseModel):
    """Numerical defaults shared by every command."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    grid_size: int = Field(default=2001, ge=2)
    fd_step_rel: float = Field(default=1e-4, gt=0)
    tol: float = Field(default=1e-4, gt=0)
    margin: float = Field(default=0.05, gt=0, lt=1)
    frame_tol: float = Field(default=1e-7, gt=0)
    spline_degree: int = Field(default=5, ge=1, le=5)
    precision: int = Field(default=12, ge=1, le=17)

    def merged(self, **overrides: Any) -> "ToolkitConfig":
        """Copy with every non-None override applied and validated."""
        updates = {key: value for key, value in overrides.items() if value is not None}
        if not updates:
            return self
        try:
            return ToolkitConfig.model_validate({**self.model_dump(), **updates})
        except ValidationError as e:
            raise ParameterError(f"invalid configuration override: {e.errors()[0]['msg']}") from e


DEFAULT_CONFIG = ToolkitConfig()


def load_config(path: Optional[Union[str, Path]] = None) -> ToolkitConfig:
    """
    Load configuration from a YAML file on top of the defaults.

    Args:
        path: YAML file with a mapping of ToolkitConfig fields, or None

    Returns:
        The resolved configuration
    """
    if path is None:
        return DEFAULT_CONFIG

    config_path = Path(path)
    try:
        raw = yaml.safe_load(config_path.read_text())
    except OSError as e:
        raise CurveIOError(f"cannot read config file {config_path}: {e}") from e
    except yaml.YAMLError as e:
        raise ParameterError(f"config file {config_path} is not valid YAML: {e}") from e

    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParameterError(f"config file {config_path} must contain a mapping")

    try:
        config = ToolkitConfig.model_validate(raw)
    except ValidationError as e:
        raise ParameterError(f"invalid config file {config_path}: {e.errors()[0]['msg']}") from e

    logger.debug(f"Loaded configuration from {config_path}: {config.model_dump()}")
    return config
