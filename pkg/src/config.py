"""Configuration management: packaged defaults, user file, and environment."""

import json
import os
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values

from .constants import (
    CONFIG_CLOSURE_ORDER_CAP,
    CONFIG_LOG_DIR,
    CONFIG_LOG_LEVEL,
    CONFIG_ORDER_CAP,
    CONFIG_SIZE_CAP,
    CONFIG_SVG_SIZE,
    DEFAULT_CLOSURE_ORDER_CAP,
    DEFAULT_LOG_LEVEL,
    DEFAULT_ORDER_CAP,
    DEFAULT_SIZE_CAP,
    DEFAULT_SVG_SIZE,
    DOTENV_FILE,
    ENV_CONFIG_FILE,
    ENV_PREFIX,
    LOG_LEVELS,
)
from .logger import get_module_logger


class ConfigValidationError(Exception):
    pass


DEFAULT_CONFIG: dict[str, object] = {
    CONFIG_ORDER_CAP: DEFAULT_ORDER_CAP,
    CONFIG_SIZE_CAP: DEFAULT_SIZE_CAP,
    CONFIG_CLOSURE_ORDER_CAP: DEFAULT_CLOSURE_ORDER_CAP,
    CONFIG_SVG_SIZE: DEFAULT_SVG_SIZE,
    CONFIG_LOG_LEVEL: DEFAULT_LOG_LEVEL,
    CONFIG_LOG_DIR: "",
}

PACKAGED_CONFIG_PATH = Path(__file__).with_name("config.json")
POSITIVE_INT_FIELDS = [
    CONFIG_ORDER_CAP,
    CONFIG_SIZE_CAP,
    CONFIG_CLOSURE_ORDER_CAP,
    CONFIG_SVG_SIZE,
]

logger = get_module_logger("config")

_cached_config: Optional[dict[str, object]] = None


def _read_json_config(path: Path) -> dict[str, object]:
    try:
        with path.open(encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError:
        logger.debug(f"No config file at {path}")
        return {}
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ConfigValidationError(f"Unreadable config file {path}: {e}")
    if not isinstance(data, dict):
        raise ConfigValidationError(f"Config file {path} must hold a JSON object")
    return data


def _environment_overrides(
    environ: Optional[dict[str, str]] = None,
    dotenv_path: Optional[Path] = None,
) -> dict[str, object]:
    """Collect NV_* overrides from a .env file, then the process environment."""
    values: dict[str, Any] = {}
    env_file = dotenv_path if dotenv_path is not None else Path.cwd() / DOTENV_FILE
    if env_file.exists():
        values.update({k: v for k, v in dotenv_values(env_file).items() if v})
    values.update(os.environ if environ is None else environ)

    overrides: dict[str, object] = {}
    for field in DEFAULT_CONFIG:
        env_key = f"{ENV_PREFIX}{field.upper()}"
        if env_key in values:
            overrides[field] = values[env_key]
    if overrides:
        logger.debug(f"Environment overrides: {sorted(overrides)}")
    return overrides


def validate_config(config: dict[str, object]) -> dict[str, object]:
    validated: dict[str, object] = {}
    for field in POSITIVE_INT_FIELDS:
        raw = config.get(field, DEFAULT_CONFIG[field])
        try:
            value = int(str(raw))
        except Exception as e:
            raise ConfigValidationError(f"{field} must be an integer: {e}")
        if value <= 0:
            raise ConfigValidationError(f"{field} must be a positive integer")
        validated[field] = value
    size = validated[CONFIG_SVG_SIZE]
    assert isinstance(size, int)
    if size & (size - 1):
        raise ConfigValidationError(f"{CONFIG_SVG_SIZE} must be a power of two")
    level = str(config.get(CONFIG_LOG_LEVEL, DEFAULT_LOG_LEVEL)).strip().upper()
    if level not in LOG_LEVELS:
        raise ConfigValidationError(f"Invalid log level: {level}")
    validated[CONFIG_LOG_LEVEL] = level
    validated[CONFIG_LOG_DIR] = str(config.get(CONFIG_LOG_DIR, "") or "")
    return validated


def get_config(
    environ: Optional[dict[str, str]] = None,
    dotenv_path: Optional[Path] = None,
) -> dict[str, object]:
    merged = DEFAULT_CONFIG.copy()
    merged.update(_read_json_config(PACKAGED_CONFIG_PATH))

    env = os.environ if environ is None else environ
    user_file = env.get(ENV_CONFIG_FILE)
    if user_file:
        logger.debug(f"Reading user config: {user_file}")
        merged.update(_read_json_config(Path(user_file)))

    merged.update(_environment_overrides(environ, dotenv_path))
    return validate_config(merged)


def resolved_config(refresh: bool = False) -> dict[str, object]:
    """get_config() read once and reused; refresh rereads every layer."""
    global _cached_config

    if _cached_config is not None and not refresh:
        return _cached_config
    _cached_config = get_config()
    logger.debug("Configuration resolved and cached")
    return _cached_config


def reset_config_cache() -> None:
    global _cached_config
    _cached_config = None


def get_limit(field: str, override: Optional[int] = None) -> int:
    """Return a positive integer limit, preferring an explicit override."""
    if override is not None:
        if override <= 0:
            raise ConfigValidationError(f"{field} must be a positive integer")
        return override
    value = resolved_config()[field]
    assert isinstance(value, int)
    return value
