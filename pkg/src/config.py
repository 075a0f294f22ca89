"""Runtime settings read from the environment (and `.env`)."""

import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

load_dotenv(os.path.join(os.path.dirname(__file__), "..", ".env"))

DEFAULT_DB_PATH = os.path.join(os.path.dirname(__file__), "..", "data", "catalog_cache.db")


@dataclass(frozen=True)
class Settings:
    tol: float = 1e-12
    max_iter: int = 1_000_000
    conjecture_tol: float = 1e-7
    seed: int = 20230601
    threads: int = 1
    database_path: str = DEFAULT_DB_PATH
    use_cache: bool = False


_settings_cache = None


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "0").strip().lower() in ("1", "true", "yes", "on")


def get_settings() -> Settings:
    """Load and cache settings from the environment."""
    global _settings_cache
    if _settings_cache is None:
        _settings_cache = Settings(
            tol=float(os.environ.get("TOOLKIT_TOL", Settings.tol)),
            max_iter=int(os.environ.get("TOOLKIT_MAX_ITER", Settings.max_iter)),
            conjecture_tol=float(os.environ.get("TOOLKIT_CONJECTURE_TOL", Settings.conjecture_tol)),
            seed=int(os.environ.get("TOOLKIT_SEED", Settings.seed)),
            threads=max(1, int(os.environ.get("TOOLKIT_THREADS", Settings.threads))),
            database_path=os.environ.get("DATABASE_PATH", DEFAULT_DB_PATH),
            use_cache=_env_flag("TOOLKIT_CACHE"),
        )
        if _settings_cache.tol <= 0 or _settings_cache.conjecture_tol <= 0:
            raise ValueError("tolerances must be positive")
    return _settings_cache


def override_settings(**changes) -> Settings:
    """Replace the cached settings for the rest of the process (CLI flags)."""
    global _settings_cache
    _settings_cache = replace(get_settings(), **changes)
    return _settings_cache


def reset_settings():
    global _settings_cache
    _settings_cache = None
