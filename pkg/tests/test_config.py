"""Tests for jtcalc/config.py."""

import pytest

from config import ConfigError, get_config, reset_config

_VARS = ("JT_CACHE_PATH", "JT_JOBS", "JT_MAX_PERMUTATION_DEGREE", "JT_BIALTERNANT_MAX_VARS", "JT_LOG_LEVEL")


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    for name in _VARS:
        monkeypatch.delenv(name, raising=False)
    reset_config()
    yield
    reset_config()


# ---------------------------------------------------------------------------
# Defaults and overrides
# ---------------------------------------------------------------------------


class TestDefaults:
    def test_defaults(self):
        cfg = get_config()
        assert cfg.cache_path == ""
        assert cfg.jobs == 1
        assert cfg.max_permutation_degree == 7
        assert cfg.bialternant_max_vars == 4
        assert cfg.log_level == "WARNING"

    def test_env_overrides(self, monkeypatch):
        monkeypatch.setenv("JT_CACHE_PATH", " /tmp/memo.json ")
        monkeypatch.setenv("JT_JOBS", "4")
        monkeypatch.setenv("JT_MAX_PERMUTATION_DEGREE", "5")
        monkeypatch.setenv("JT_BIALTERNANT_MAX_VARS", "3")
        monkeypatch.setenv("JT_LOG_LEVEL", "debug")
        cfg = get_config()
        assert cfg.cache_path == "/tmp/memo.json"
        assert cfg.jobs == 4
        assert cfg.max_permutation_degree == 5
        assert cfg.bialternant_max_vars == 3
        assert cfg.log_level == "DEBUG"


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


class TestValidation:
    def test_non_integer_jobs(self, monkeypatch):
        monkeypatch.setenv("JT_JOBS", "many")
        with pytest.raises(ConfigError, match="JT_JOBS"):
            get_config()

    def test_zero_is_rejected(self, monkeypatch):
        monkeypatch.setenv("JT_MAX_PERMUTATION_DEGREE", "0")
        with pytest.raises(ConfigError, match="at least 1"):
            get_config()

    def test_unknown_log_level(self, monkeypatch):
        monkeypatch.setenv("JT_LOG_LEVEL", "CHATTY")
        with pytest.raises(ConfigError, match="JT_LOG_LEVEL"):
            get_config()


class TestSingleton:
    def test_cached_until_reset(self, monkeypatch):
        first = get_config()
        monkeypatch.setenv("JT_JOBS", "8")
        assert get_config() is first
        reset_config()
        assert get_config().jobs == 8
