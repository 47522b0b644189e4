"""Backend selection for the numeric kernels.

Set ``HARDYOSC_DISABLE_NUMBA=1`` to run the kernels as plain Python/numpy
(useful for debugging and for the benchmark's reference timings).
"""
import os

DISABLE_ENV = "HARDYOSC_DISABLE_NUMBA"


def _truthy(v):
    return v.strip().lower() in ("1", "true", "yes", "on")


USE_NUMBA = not _truthy(os.environ.get(DISABLE_ENV, "0"))

if USE_NUMBA:
    try:
        import numba  # noqa: F401
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def njit(*args, **kwargs):
    """``numba.njit`` when enabled, identity decorator otherwise."""
    if USE_NUMBA:
        import numba
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


BACKEND = "numba" if USE_NUMBA else "python"

# probe thresholds; the oscillation probe is a heuristic cross-check only
PROBE_OSCILLATING_ZEROS = 5
PROBE_QUIESCENT_ZEROS = 1
PROBE_EXTENSION_FACTOR = 10.0
PROBE_EXTENSION_BUDGET = 1.0e3
PROBE_MAX_STEPS = 200_000

DEFAULT_RTOL = 1e-9
DEFAULT_ATOL = 1e-12
DEFAULT_WINDOW = (10.0, 1.0e6)
