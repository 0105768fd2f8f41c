"""Environment-driven defaults."""

import os
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent.parent
LIBRARY_DIR = PROJECT_ROOT / "data" / "library"
REGRESSION_PATH = LIBRARY_DIR / "regression_values.json"


def _int_env(name: str, default: int | None) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def threads() -> int:
    return max(1, _int_env("GRIDHOM_THREADS", 1))


def seed() -> int:
    return _int_env("GRIDHOM_SEED", 0)


def log_level() -> str:
    return os.environ.get("GRIDHOM_LOG_LEVEL", "WARNING").upper()


def window_margin(n: int) -> int:
    """Alexander margin below the lowest state grading (default n + 2)."""
    return _int_env("GRIDHOM_WINDOW_MARGIN", n + 2)


def v_depth() -> int:
    """Number of v-steps kept above the highest state band in GHL windows."""
    return _int_env("GRIDHOM_V_DEPTH", 3)


def samples() -> int:
    return _int_env("GRIDHOM_SAMPLES", 500)


def sign_samples() -> int:
    """Composite domains checked by a sampled sign-axiom run."""
    return _int_env("GRIDHOM_SIGN_SAMPLES", 10_000)
