from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .exceptions import MissingConfiguration
from .linalg import DEFAULT_TOLERANCE, Tolerance
from .utils.ini_utils import safe_read_config

SECTION = "gausschan"


class IniManager:
    """Helper for reading settings from ``GAUSSCHAN.INI``."""

    def __init__(self, ini_path: str | None = None) -> None:
        self.ini_path = self.resolve_path(ini_path)
        self._config = safe_read_config(self.ini_path)

    @classmethod
    def resolve_path(cls, ini_path: str | None = None) -> str:
        """Resolve the path to the INI file."""
        return ini_path or os.getenv(
            "GAUSSCHAN_INI_PATH",
            str(Path.home() / ".config" / "gausschan" / "GAUSSCHAN.INI"),
        )

    def get_option(self, section: str, option: str, fallback: str | None = None) -> str | None:
        """Return ``option`` from ``section`` or ``fallback`` when missing."""
        config = self._config
        if config.has_section(section) and option in config[section]:
            return config[section][option]
        return fallback


@dataclass(frozen=True)
class Settings:
    """Resolved CLI settings."""

    tolerance: Tolerance = DEFAULT_TOLERANCE
    log_file: str | None = None
    log_level: str | None = None
    workers: int = 1


def resolve_settings(
    *,
    tol: float | None = None,
    workers: int | None = None,
    ini_path: str | None = None,
) -> Settings:
    """Resolve settings with precedence argument > INI > environment > default."""
    ini = IniManager(ini_path)

    def _get(option: str, default: str | None = None) -> str | None:
        val = ini.get_option(SECTION, option)
        if val is not None:
            return val
        return os.getenv(option, default)

    if tol is None:
        raw = _get("GAUSSCHAN_TOL")
        if raw is not None:
            try:
                tol = float(raw)
            except ValueError as exc:
                raise MissingConfiguration(f"GAUSSCHAN_TOL={raw!r} is not a number") from exc
    try:
        tolerance = Tolerance.uniform(tol) if tol is not None else DEFAULT_TOLERANCE
    except ValueError as exc:
        raise MissingConfiguration(f"bad tolerance: {exc}") from exc

    if workers is None:
        raw = _get("GAUSSCHAN_WORKERS", "1")
        try:
            workers = int(raw)
        except ValueError as exc:
            raise MissingConfiguration(f"GAUSSCHAN_WORKERS={raw!r} is not an integer") from exc

    return Settings(
        tolerance=tolerance,
        log_file=_get("GAUSSCHAN_LOG_FILE"),
        log_level=_get("GAUSSCHAN_LOG_LEVEL"),
        workers=max(1, workers),
    )
