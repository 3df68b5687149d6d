"""Runtime switches read from the environment.

SUBDIRECT_DISABLE_NUMBA=1   use the pure numpy kernels
SUBDIRECT_MAX_ORDER=N       bound on ambient product orders
SUBDIRECT_ENUM_BOUND=N      bound on groups passed to enumerate_subgroups
"""
import os

MAX_TABLE_ORDER = 256


def _flag(name):
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


def _int(name, default):
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


USE_NUMBA = not _flag("SUBDIRECT_DISABLE_NUMBA")
MAX_PRODUCT_ORDER = _int("SUBDIRECT_MAX_ORDER", 1 << 20)
ENUM_BOUND = _int("SUBDIRECT_ENUM_BOUND", 128)
