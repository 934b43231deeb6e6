"""Runtime configuration read from environment variables.

FEWHAM_JIT            "0" selects the pure numpy/python kernels (default "1")
FEWHAM_MAX_VERTICES   MultiGraph order cap (default 64)
FEWHAM_HK_MAX         largest order accepted by the Held-Karp counter (default 24)
FEWHAM_GEN_MAX        largest order accepted by the graph generator (default 14)
"""

from __future__ import annotations

import os


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


JIT_ENABLED = os.environ.get("FEWHAM_JIT", "1").strip().lower() not in ("0", "false", "no", "off")
MAX_VERTICES = _env_int("FEWHAM_MAX_VERTICES", 64)
HK_MAX = _env_int("FEWHAM_HK_MAX", 24)
GEN_MAX = _env_int("FEWHAM_GEN_MAX", 14)

# bitmask kernels keep one sign bit free
KERNEL_MAX_VERTICES = 63


def snapshot() -> dict:
    return {
        "jit": JIT_ENABLED,
        "max_vertices": MAX_VERTICES,
        "hk_max": HK_MAX,
        "gen_max": GEN_MAX,
    }
