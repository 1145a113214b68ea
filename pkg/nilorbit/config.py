import json
import logging
import os
from pathlib import Path
from typing import Any

from .constants import DEFAULT_MAX_STEPS, DEFAULT_PRIME_BOUND

logger = logging.getLogger(__name__)

# Default config path should be the project root `config.json`, not the package directory.
DEFAULT_PATH = Path(__file__).resolve().parent.parent / "config.json"

ENV_KEYS = {
    "prime_bound": "NILORBIT_PRIME_BOUND",
    "workers": "NILORBIT_WORKERS",
    "debug": "NILORBIT_DEBUG",
}

BUILTIN_DEFAULTS: dict[str, Any] = {
    "prime_bound": DEFAULT_PRIME_BOUND,
    "workers": 1,
    "max_steps": DEFAULT_MAX_STEPS,
    "seed": 0,
    "format": "json",
    "debug": False,
}


def load_config(path: str | Path = DEFAULT_PATH) -> dict[str, Any]:
    file = Path(path)
    if not file.exists():
        return {}
    try:
        config_data = json.loads(file.read_text())
        if not isinstance(config_data, dict):
            logger.error("Config in %s is not a JSON object", file)
            return {}
        logger.info("Loaded config from %s", file)
        return config_data
    except Exception:
        logger.exception("Failed to load config from %s", file)
        return {}


def cfg_or_env(cfg: dict[str, Any], key: str) -> Any:
    """Return a config value with placeholder-aware fallback to environment."""

    cfg_val = cfg.get(key)
    if isinstance(cfg_val, str):
        stripped = cfg_val.strip()
        if not stripped or (stripped.startswith("<") and stripped.endswith(">")):
            cfg_val = None
    if cfg_val is not None:
        return cfg_val
    env_name = ENV_KEYS.get(key)
    if env_name:
        env_val = os.getenv(env_name)
        if env_val:
            return env_val
    return BUILTIN_DEFAULTS.get(key)


def int_setting(cfg: dict[str, Any], key: str) -> int:
    """Resolve an integer setting, rejecting values that do not parse."""
    value = cfg_or_env(cfg, key)
    try:
        return int(value)
    except (TypeError, ValueError):
        logger.warning("Ignoring non-integer %s=%r", key, value)
        return int(BUILTIN_DEFAULTS[key])
