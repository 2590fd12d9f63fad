"""Configuration from environment variables with defaults and validation."""

import os


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class ConfigError(Exception):
    pass


class Config:
    def __init__(self):
        self.cache_path = os.environ.get("JT_CACHE_PATH", "").strip()
        self.jobs = self._positive_int("JT_JOBS", "1")
        self.max_permutation_degree = self._positive_int("JT_MAX_PERMUTATION_DEGREE", "7")
        self.bialternant_max_vars = self._positive_int("JT_BIALTERNANT_MAX_VARS", "4")
        self.log_level = self._log_level(os.environ.get("JT_LOG_LEVEL", "WARNING"))

    def _positive_int(self, name: str, default: str) -> int:
        raw = os.environ.get(name, default).strip()
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(f"Environment variable {name} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ConfigError(f"Environment variable {name} must be at least 1, got {value}")
        return value

    def _log_level(self, value: str) -> str:
        level = value.strip().upper()
        if level not in LOG_LEVELS:
            raise ConfigError(f"Unknown log level in JT_LOG_LEVEL: {value!r}")
        return level


_config = None


def get_config() -> Config:
    global _config
    if _config is None:
        _config = Config()
    return _config


def reset_config():
    """Reset cached config (for testing)."""
    global _config
    _config = None
