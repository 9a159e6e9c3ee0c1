"""Environment-driven defaults shared by the command line and the API."""
from __future__ import annotations

import logging
import os
from typing import Optional

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 24
DEFAULT_BIVARIATE_ORDER = 12
DEFAULT_MAX_EDGES = 7
DEFAULT_MAX_FACES = 3
DEFAULT_LOG_LEVEL = "WARNING"

_LOG_LEVELS = {"CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"}


def parse_positive_int(value: Optional[str], default: int) -> int:
    try:
        parsed = int(str(value))
        return parsed if parsed > 0 else default
    except (TypeError, ValueError):
        return default


def _env_positive_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    value = parse_positive_int(raw, default)
    if str(value) != raw.strip():
        logger.warning("ignoring invalid %s=%r, using %s", name, raw, default)
    return value


def series_order() -> int:
    return _env_positive_int("PLANAR_MAPS_ORDER", DEFAULT_ORDER)


def bivariate_order() -> int:
    return _env_positive_int("PLANAR_MAPS_BIVARIATE_ORDER", DEFAULT_BIVARIATE_ORDER)


def max_edges() -> int:
    """Upper bound on the number of edges the map oracle enumerates."""

    return _env_positive_int("PLANAR_MAPS_MAX_EDGES", DEFAULT_MAX_EDGES)


def max_faces() -> int:
    return _env_positive_int("PLANAR_MAPS_MAX_FACES", DEFAULT_MAX_FACES)


def log_level() -> str:
    raw = os.getenv("PLANAR_MAPS_LOG_LEVEL")
    if not raw:
        return DEFAULT_LOG_LEVEL
    level = raw.strip().upper()
    if level not in _LOG_LEVELS:
        logger.warning("ignoring invalid PLANAR_MAPS_LOG_LEVEL=%r", raw)
        return DEFAULT_LOG_LEVEL
    return level
