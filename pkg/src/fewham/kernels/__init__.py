"""Kernel dispatch: numba-compiled by default, plain Python/numpy with ``FEWHAM_JIT=0``.

Both variants stay importable (``jit`` and ``py``) so they can be compared.
"""

from __future__ import annotations

import importlib.util
import types

from .. import _config
from . import _core as py
from . import _numpy

KERNEL_NAMES = (
    "popcount",
    "bit_index",
    "_rest_connected",
    "count_cycles_bt",
    "count_paths_bt",
    "enum_cycles_bt",
    "held_karp",
    "is_max_column_string",
    "negative_cycles",
)


def _compile() -> types.ModuleType | None:
    try:
        import numba
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return None
    # separate module object so compiled functions call each other as dispatchers
    spec = importlib.util.find_spec(py.__name__)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    for name in KERNEL_NAMES:
        setattr(mod, name, numba.njit(cache=True)(getattr(mod, name)))
    return mod


jit = _compile()


class _Fallback:
    """Plain-Python kernels with the vectorized Held-Karp swapped in."""

    def __getattr__(self, name):
        if name == "held_karp":
            return _numpy.held_karp
        return getattr(py, name)


fallback = _Fallback()

active = jit if (_config.JIT_ENABLED and jit is not None) else fallback
USING_JIT = active is jit


def get(use_jit: bool | None = None):
    """Kernel namespace; ``None`` means the environment default."""
    if use_jit is None:
        return active
    if use_jit:
        if jit is None:  # pragma: no cover
            raise RuntimeError("numba is not available")
        return jit
    return fallback
