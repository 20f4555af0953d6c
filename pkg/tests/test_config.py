import logging
import os
from unittest.mock import patch

import pytest

from app.config import Config


class TestConfig:
    def setup_method(self) -> None:
        Config._instance = None

    def teardown_method(self) -> None:
        Config._instance = None

    def test_singleton(self) -> None:
        """Test that Config is a singleton"""
        c1 = Config.get_instance()
        c2 = Config.get_instance()
        assert c1 is c2
        assert Config._instance is c1

    def test_default_values(self) -> None:
        """Test default values when no environment variables are set"""
        with patch.dict(os.environ, {}, clear=True), patch("app.config.os.cpu_count", return_value=6):
            config = Config.get_instance()
        assert config.log_level_name == "INFO"
        assert config.log_level == logging.INFO
        assert config.max_workers == 6
        assert config.simulation_mode == "exact"
        assert config.oracle_tolerance == 1e-8

    def test_unknown_cpu_count(self) -> None:
        """Test a single worker when the CPU count is unavailable"""
        with patch.dict(os.environ, {}, clear=True), patch("app.config.os.cpu_count", return_value=None):
            assert Config.get_instance().max_workers == 1

    def test_env_overrides(self) -> None:
        """Test that environment variables override defaults"""
        env = {
            "LOG_LEVEL": "debug",
            "SCHUR_SYNTH_THREADS": "3",
            "SCHUR_SYNTH_MODE": "FLOAT",
            "SCHUR_SYNTH_ORACLE_TOL": "1e-6",
        }
        with patch.dict(os.environ, env):
            config = Config.get_instance()
        assert config.log_level_name == "DEBUG"
        assert config.max_workers == 3
        assert config.simulation_mode == "float"
        assert config.oracle_tolerance == 1e-6

    def test_threads_at_least_one(self) -> None:
        """Test that zero or negative thread counts are raised to one"""
        with patch.dict(os.environ, {"SCHUR_SYNTH_THREADS": "0"}):
            assert Config.get_instance().max_workers == 1

    @pytest.mark.parametrize(
        "name,value",
        [
            ("SCHUR_SYNTH_THREADS", "many"),
            ("SCHUR_SYNTH_MODE", "symbolic"),
            ("SCHUR_SYNTH_ORACLE_TOL", "tight"),
            ("SCHUR_SYNTH_ORACLE_TOL", "2"),
        ],
    )
    def test_invalid_values_fall_back(self, name: str, value: str, caplog: pytest.LogCaptureFixture) -> None:
        """Test that bad settings are ignored with a warning"""
        with patch.dict(os.environ, {name: value}), patch("app.config.os.cpu_count", return_value=4):
            with caplog.at_level(logging.WARNING, logger="schur_synth"):
                config = Config.get_instance()
        assert name in caplog.text
        assert config.max_workers == 4
        assert config.simulation_mode == "exact"
        assert config.oracle_tolerance == 1e-8
