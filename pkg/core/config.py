"""
Config - JSON configuration with defaults.
A missing config.json is not an error; loaded values are merged over DEFAULT_CONFIG.
"""
import copy
import json
import logging
import os

import psutil

logger = logging.getLogger("Config")

CONFIG_PATH = os.path.join(os.path.dirname(os.path.dirname(__file__)), "config.json")

DEFAULT_CONFIG = {
    "checker": {
        "workers": "auto",
        "chunk_size": 1 << 18,
        "exhaustive_limit": 1 << 30,
    },
    "random": {
        "trials": 1000,
        "seed": 2003,
    },
    "hilbert": {
        "dims": [3, 4],
        "entry_range": 3,
        "trials": 1000,
    },
    "accept": {
        "four_variable_free2": True,
    },
    "logging": {
        "level": "WARNING",
    },
}


def merge(defaults: dict, loaded: dict) -> dict:
    """Recursive merge; loaded values win, keys missing from loaded keep their defaults."""
    out = copy.deepcopy(defaults)
    for key, val in loaded.items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], val)
        else:
            out[key] = val
    return out


def load_config(path: str = None) -> dict:
    path = path or CONFIG_PATH
    if not os.path.exists(path):
        logger.warning("%s not found, using defaults.", os.path.basename(path))
        return copy.deepcopy(DEFAULT_CONFIG)
    with open(path, "r", encoding="utf-8") as f:
        loaded = json.load(f)
    logger.info("loaded %s", path)
    return merge(DEFAULT_CONFIG, loaded)


def resolve_workers(value) -> int:
    """'auto' means one worker per physical core."""
    if value in (None, "auto"):
        try:
            count = psutil.cpu_count(logical=False)
        except Exception:
            count = None
        return max(1, count or 1)
    workers = int(value)
    if workers < 1:
        raise ValueError(f"checker.workers must be >= 1 or 'auto', got {value!r}")
    return workers
