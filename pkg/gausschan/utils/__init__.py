from .ini_utils import atomic_write, safe_read_config

__all__ = ["atomic_write", "safe_read_config"]
