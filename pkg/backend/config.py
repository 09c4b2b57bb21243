#!/usr/bin/env python3
"""
Kissing - Runtime Configuration
Tolerances, caps and worker settings read from the environment (.env supported).
CLI global flags override individual fields through dataclasses.replace.
"""

import os
import logging
from dataclasses import dataclass, replace
from typing import Any, Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)


# ============================================================================
# SETTINGS
# ============================================================================

@dataclass(frozen=True)
class Settings:
    """Numeric knobs shared by every module"""
    log_level: str = "WARNING"
    threads: int = 1
    seed: int = 0
    orbit_cap: int = 10_000_000
    hamiltonian_cap: int = 16
    tangency_tol: float = 1e-9
    solver_tol: float = 1e-10
    max_sweeps: int = 50_000
    root_tol: float = 1e-8
    cluster_radius: float = 1e-6
    fixed_tol: float = 1e-7

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Build settings from KISSING_* environment variables

        Returns:
            Settings with defaults for anything unset or unparsable
        """
        defaults = cls()
        return cls(
            log_level=os.getenv("KISSING_LOG_LEVEL", defaults.log_level).upper(),
            threads=_env_number("KISSING_THREADS", defaults.threads, int),
            seed=_env_number("KISSING_SEED", defaults.seed, int),
            orbit_cap=_env_number("KISSING_ORBIT_CAP", defaults.orbit_cap, int),
            hamiltonian_cap=_env_number("KISSING_HAMILTONIAN_CAP", defaults.hamiltonian_cap, int),
            tangency_tol=_env_number("KISSING_TANGENCY_TOL", defaults.tangency_tol, float),
            solver_tol=_env_number("KISSING_SOLVER_TOL", defaults.solver_tol, float),
            max_sweeps=_env_number("KISSING_MAX_SWEEPS", defaults.max_sweeps, int),
            root_tol=_env_number("KISSING_ROOT_TOL", defaults.root_tol, float),
            cluster_radius=_env_number("KISSING_CLUSTER_RADIUS", defaults.cluster_radius, float),
            fixed_tol=_env_number("KISSING_FIXED_TOL", defaults.fixed_tol, float),
        )

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with every non-None override applied"""
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes) if changes else self


def _env_number(name: str, default: Any, cast) -> Any:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = cast(float(raw)) if cast is int else cast(raw)
    except ValueError:
        logger.warning(f"⚠️ {name}={raw!r} is not a number; using {default}")
        return default
    if value <= 0 and name != "KISSING_SEED":
        logger.warning(f"⚠️ {name} must be positive; using {default}")
        return default
    return value


# ============================================================================
# LAZY SINGLETON
# ============================================================================

_SETTINGS_INSTANCE: Optional[Settings] = None


def get_settings() -> Settings:
    """
    Get or create the process-wide settings.
    Loads .env on first use.
    """
    global _SETTINGS_INSTANCE
    if _SETTINGS_INSTANCE is not None:
        return _SETTINGS_INSTANCE

    load_dotenv()
    _SETTINGS_INSTANCE = Settings.from_env()
    logger.debug(f"Settings loaded: {_SETTINGS_INSTANCE}")
    return _SETTINGS_INSTANCE


def set_settings(settings: Settings) -> None:
    """Install settings (CLI overrides, tests)"""
    global _SETTINGS_INSTANCE
    _SETTINGS_INSTANCE = settings


def reset_settings() -> None:
    """Forget cached settings so the next call re-reads the environment"""
    global _SETTINGS_INSTANCE
    _SETTINGS_INSTANCE = None


__all__ = ['Settings', 'get_settings', 'set_settings', 'reset_settings']
