from __future__ import annotations

import configparser
import os
import tempfile


def safe_read_config(ini_path: str) -> configparser.ConfigParser:
    config = configparser.ConfigParser(allow_no_value=True, strict=False)
    config.optionxform = str
    if not ini_path or not os.path.exists(ini_path):
        return config
    config.read(ini_path)
    return config


def atomic_write(file_path: str, content: str) -> None:
    """Write ``content`` to ``file_path`` through a temporary file and rename."""
    if not file_path:
        return
    dir_path = os.path.dirname(file_path)
    if dir_path:
        os.makedirs(dir_path, exist_ok=True)
    temp_dir = dir_path if dir_path else "."
    temp_fd, temp_path = tempfile.mkstemp(
        dir=temp_dir, prefix=f".{os.path.basename(file_path)}.tmp"
    )
    try:
        with os.fdopen(temp_fd, "w") as f:
            f.write(content)
            f.flush()
            os.fsync(f.fileno())
        os.replace(temp_path, file_path)
    except Exception:
        try:
            os.unlink(temp_path)
        except (OSError, FileNotFoundError):
            pass
        raise
