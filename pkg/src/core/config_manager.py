"""
Configuration management for radoforge.

Handles loading and validation of radoforge.yaml files.
"""

import os
from pathlib import Path
from typing import Optional

import yaml
from pydantic import ValidationError

from .errors import BudgetExceededError, ConfigError
from .models import RadoforgeConfig

BUDGET_ENV_VAR = "RADOFORGE_BUDGET"


class ConfigManager:
    """
    Manages configuration loading and access.

    radoforge.yaml is optional: without it every setting takes its default.
    """

    DEFAULT_CONFIG_PATH = Path("radoforge.yaml")

    @classmethod
    def load(cls, project_path: Optional[Path] = None) -> RadoforgeConfig:
        """
        Load configuration from a directory.

        Args:
            project_path: Directory holding radoforge.yaml. If None, uses current directory.

        Returns:
            RadoforgeConfig: Loaded and validated configuration.

        Raises:
            ConfigError: If the file exists but is not valid YAML or fails validation.
        """
        if project_path is None:
            project_path = Path(".")

        config_path = Path(project_path) / cls.DEFAULT_CONFIG_PATH

        if not config_path.exists():
            return RadoforgeConfig()

        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f) or {}
            return RadoforgeConfig(**data)
        except yaml.YAMLError as e:
            raise ConfigError(f"Invalid YAML in {config_path}: {e}") from e
        except (TypeError, ValidationError) as e:
            raise ConfigError(f"Invalid configuration in {config_path}: {e}") from e

    @classmethod
    def save(cls, config: RadoforgeConfig, project_path: Optional[Path] = None):
        """
        Save configuration to a directory.

        Args:
            config: Configuration to save.
            project_path: Target directory.
        """
        if project_path is None:
            project_path = Path(".")

        config_path = Path(project_path) / cls.DEFAULT_CONFIG_PATH

        with open(config_path, 'w', encoding='utf-8') as f:
            yaml.dump(config.model_dump(), f, allow_unicode=True, sort_keys=False)

    @classmethod
    def create_default(cls, project_path: Path) -> RadoforgeConfig:
        """Write a radoforge.yaml holding the defaults and return it."""
        config = RadoforgeConfig()
        cls.save(config, project_path)
        return config

    @staticmethod
    def effective_budget(config: RadoforgeConfig) -> int:
        """
        Work budget after applying the RADOFORGE_BUDGET override.

        Raises:
            ConfigError: If the environment variable is not a positive integer.
        """
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None or raw.strip() == "":
            return config.budget
        try:
            value = int(float(raw)) if "e" in raw.lower() else int(raw)
        except ValueError as e:
            raise ConfigError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from e
        if value <= 0:
            raise ConfigError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
        return value


DEFAULT_BUDGET = RadoforgeConfig().budget


def resolve_budget(budget: Optional[int] = None) -> int:
    """Explicit budget if given, else the default with the environment override applied."""
    if budget is not None:
        if budget <= 0:
            raise ConfigError(f"budget must be positive, got {budget}")
        return int(budget)
    return ConfigManager.effective_budget(RadoforgeConfig())


def ensure_within_budget(what: str, required: int, budget: Optional[int] = None) -> int:
    """
    Charge `required` work units against the budget.

    Returns:
        int: The required work, for reporting.

    Raises:
        BudgetExceededError: If the work does not fit.
    """
    limit = resolve_budget(budget)
    if required > limit:
        raise BudgetExceededError(what, required, limit)
    return required
