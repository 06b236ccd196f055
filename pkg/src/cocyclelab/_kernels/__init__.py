"""Backend selection for the hot path kernels.

``COCYCLELAB_BACKEND=numba`` (default) uses the compiled kernels;
``COCYCLELAB_BACKEND=numpy`` selects the pure-numpy fallback.  The numba
backend also falls back to numpy when numba cannot be imported.
"""

import importlib
import os

_NAMES = ("markov_symbols", "vector_walk", "block_walk", "matrix_walk")
_cache = {}


def backend_name() -> str:
    name = os.environ.get("COCYCLELAB_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown COCYCLELAB_BACKEND {name!r}")
    return name


def get_kernels(name: str | None = None):
    """Module exposing the kernel functions for the requested backend."""
    name = name or backend_name()
    if name not in _cache:
        try:
            mod = importlib.import_module(f"._{name}", __name__)
        except ImportError:
            if name != "numba":
                raise
            mod = importlib.import_module("._numpy", __name__)
        _cache[name] = mod
    return _cache[name]
