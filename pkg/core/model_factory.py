"""
ModelFactory - Creates built-in models by name, or loads a model file.
"""
import logging
import os
import re
import threading
from typing import Dict, List

import numpy as np

from .errors import UnknownName
from .model import Model, data_path, load_file

logger = logging.getLogger("Model")


class ModelFactory:
    """Resolves `boolean_n`, `mo2`, `o6`, `free2`, `woml20`, or a path to a model file."""

    SHIPPED = {
        "o6": "o6.txt",
        "mo2": "mo2.txt",
        "woml20": "woml20.txt",
    }
    MAX_BOOLEAN = 5

    _cache: Dict[str, Model] = {}
    _lock = threading.Lock()

    @staticmethod
    def boolean(n: int) -> Model:
        """The Boolean algebra 2^n; elements are n-bit strings, order is bitwise."""
        if not 1 <= n <= ModelFactory.MAX_BOOLEAN:
            raise UnknownName(f"boolean_n needs 1 <= n <= {ModelFactory.MAX_BOOLEAN}, got {n}")
        size = 1 << n
        values = np.arange(size)
        names = [format(v, f"0{n}b") for v in values]
        le = (values[:, None] & ~values[None, :]) == 0
        ortho = [size - 1 - v for v in range(size)]
        return Model.from_order(f"boolean_{n}", names, le, ortho)

    @staticmethod
    def create(name: str) -> Model:
        with ModelFactory._lock:
            cached = ModelFactory._cache.get(name)
        if cached is not None:
            return cached

        match = re.fullmatch(r"boolean_(\d+)", name)
        if match:
            model = ModelFactory.boolean(int(match.group(1)))
        elif name == "free2":
            from .freeoml import as_model
            model = as_model()
        elif name in ModelFactory.SHIPPED:
            model = load_file(data_path("models", ModelFactory.SHIPPED[name]))
        elif os.path.isfile(name):
            model = load_file(name)
        else:
            raise UnknownName(
                f"unknown model {name!r}; built-ins are {', '.join(ModelFactory.available())}"
            )

        logger.info("built %s (%d elements)", model.name, model.n)
        with ModelFactory._lock:
            ModelFactory._cache[name] = model
        return model

    @staticmethod
    def available() -> List[str]:
        return [f"boolean_1..boolean_{ModelFactory.MAX_BOOLEAN}", "mo2", "o6", "free2", "woml20"]


def builtin(name: str) -> Model:
    return ModelFactory.create(name)
