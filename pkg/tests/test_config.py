"""Tests for the environment-driven defaults in gridhom.shared.config."""

import pytest

from gridhom.shared import config

ENV_KEYS = (
    "GRIDHOM_THREADS",
    "GRIDHOM_SEED",
    "GRIDHOM_LOG_LEVEL",
    "GRIDHOM_WINDOW_MARGIN",
    "GRIDHOM_V_DEPTH",
    "GRIDHOM_SAMPLES",
    "GRIDHOM_SIGN_SAMPLES",
)


@pytest.fixture()
def clean_env(monkeypatch):
    for key in ENV_KEYS:
        monkeypatch.delenv(key, raising=False)
    return monkeypatch


class TestDefaults:
    def test_values_without_environment(self, clean_env):
        assert config.threads() == 1
        assert config.seed() == 0
        assert config.log_level() == "WARNING"
        assert config.window_margin(5) == 7
        assert config.v_depth() == 3
        assert config.samples() == 500
        assert config.sign_samples() == 10_000

    def test_blank_values_fall_back(self, clean_env):
        clean_env.setenv("GRIDHOM_SEED", "  ")
        assert config.seed() == 0


class TestOverrides:
    def test_reads_the_environment(self, clean_env):
        clean_env.setenv("GRIDHOM_THREADS", "4")
        clean_env.setenv("GRIDHOM_SEED", "17")
        clean_env.setenv("GRIDHOM_WINDOW_MARGIN", "2")
        clean_env.setenv("GRIDHOM_LOG_LEVEL", "debug")
        assert config.threads() == 4
        assert config.seed() == 17
        assert config.window_margin(9) == 2
        assert config.log_level() == "DEBUG"

    def test_sign_samples_are_separate_from_samples(self, clean_env):
        clean_env.setenv("GRIDHOM_SAMPLES", "20")
        clean_env.setenv("GRIDHOM_SIGN_SAMPLES", "300")
        assert config.samples() == 20
        assert config.sign_samples() == 300

    def test_threads_is_at_least_one(self, clean_env):
        clean_env.setenv("GRIDHOM_THREADS", "0")
        assert config.threads() == 1

    def test_garbage_is_an_error(self, clean_env):
        clean_env.setenv("GRIDHOM_SAMPLES", "many")
        with pytest.raises(ValueError):
            config.samples()


class TestPaths:
    def test_library_ships_with_the_project(self):
        assert config.LIBRARY_DIR.is_dir()
        assert config.REGRESSION_PATH.is_file()
