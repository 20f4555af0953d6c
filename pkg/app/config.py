import logging
import os
from typing import Optional

logger = logging.getLogger("schur_synth")

SIMULATION_MODES = ("exact", "float")


class Config:
    """Centralized configuration management"""

    # Singleton instance
    _instance: Optional["Config"] = None

    @classmethod
    def get_instance(cls) -> "Config":
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    def __init__(self) -> None:
        # Logger configuration
        self.log_level_name: str = os.getenv("LOG_LEVEL", "INFO").upper()
        self.log_level: int = getattr(logging, self.log_level_name, logging.INFO)

        # Verification sweep configuration
        self.max_workers: int = self._read_threads()

        # Simulator configuration
        self.simulation_mode: str = os.getenv("SCHUR_SYNTH_MODE", "exact").lower()
        if self.simulation_mode not in SIMULATION_MODES:
            logger.warning(f"Ignoring SCHUR_SYNTH_MODE={self.simulation_mode!r}, using exact")
            self.simulation_mode = "exact"

        # Oracle configuration
        self.oracle_tolerance: float = self._read_tolerance()

    @staticmethod
    def _read_threads() -> int:
        default = os.cpu_count() or 1
        raw = os.getenv("SCHUR_SYNTH_THREADS")
        if raw is None:
            return default
        try:
            return max(1, int(raw))
        except ValueError:
            logger.warning(f"Ignoring SCHUR_SYNTH_THREADS={raw!r}, using {default}")
            return default

    @staticmethod
    def _read_tolerance() -> float:
        raw = os.getenv("SCHUR_SYNTH_ORACLE_TOL", "1e-8")
        try:
            tolerance = float(raw)
        except ValueError:
            tolerance = -1.0
        if not 0 < tolerance < 1:
            logger.warning(f"Ignoring SCHUR_SYNTH_ORACLE_TOL={raw!r}, using 1e-8")
            return 1e-8
        return tolerance
