"""Runtime knobs: size caps, seeds, and kernel-path selection.

Environment variables:
    FANLOOP_CAP      -- overrides the default analysis order cap (same as --cap).
    FANLOOPS_PURE    -- "1" forces the pure numpy kernel path even when numba
                        is importable (used by the benchmark to compare paths).
"""

import os

DEFAULT_ORDER_CAP = 256
CENSUS_ORDER_CAP = 7
CAYLEY_DICKSON_CAP = 5
DEFAULT_SEED = 12345

# Above this order, FiniteLoop.assoc_tensors() refuses to cache by default
# (the caller can still force it); below it the n^3 tensors are kept.
TENSOR_CACHE_DEFAULT_LIMIT = 64

# Simplex tableau entries past this many bits (numerator plus denominator)
# trigger a BitGrowthWarning; growth itself is allowed.
LP_BIT_ALARM = 4096


def order_cap(explicit=None):
    """Resolve the analysis order cap: explicit argument > env > default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("FANLOOP_CAP")
    if env is not None and env.strip():
        return int(env)
    return DEFAULT_ORDER_CAP


def pure_python_requested():
    return os.environ.get("FANLOOPS_PURE", "") == "1"
