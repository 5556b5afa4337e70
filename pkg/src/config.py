"""Configuration loader: reads config.yaml from the project root."""
import os
import sys
import yaml

_CONFIG = None


def _base_dir() -> str:
    """
    Return the directory that contains config.yaml.
    - When running as a frozen executable: same folder as the executable.
    - When running as a script: project root (parent of src/).
    """
    if getattr(sys, "frozen", False):
        return os.path.dirname(sys.executable)
    return os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_config() -> dict:
    global _CONFIG
    if _CONFIG is not None:
        return _CONFIG

    config_path = os.path.join(_base_dir(), "config.yaml")
    if not os.path.exists(config_path):
        # Every section has in-code defaults
        _CONFIG = {}
        return _CONFIG
    with open(config_path, "r") as f:
        _CONFIG = yaml.safe_load(f) or {}
    return _CONFIG


def scan_threads(config: dict) -> int:
    """Worker count for scans: ONEQ_THREADS, then scan.threads, then cpu count."""
    env = os.environ.get("ONEQ_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    threads = int(config.get("scan", {}).get("threads", 0) or 0)
    if threads > 0:
        return threads
    return os.cpu_count() or 1
