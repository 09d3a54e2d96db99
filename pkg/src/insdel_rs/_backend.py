"""Backend selection for the hot kernels.

The numba path is used when numba imports cleanly and the environment
variable ``INSDEL_RS_DISABLE_NUMBA`` is unset (or ``0``).  Every kernel has a
vectorised numpy twin that gives identical results.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAS_NUMBA = numba is not None
NUMBA_DISABLED = os.environ.get("INSDEL_RS_DISABLE_NUMBA", "0").lower() not in ("", "0", "false", "no")

BACKENDS = ("numba", "numpy")


def default_backend():
    return "numba" if HAS_NUMBA and not NUMBA_DISABLED else "numpy"


def resolve(backend=None):
    if backend is None:
        return default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return backend


def njit(fn):
    """Compile ``fn`` with numba when available; otherwise return it unchanged."""
    if numba is None:
        return fn
    return numba.njit(cache=True, nogil=True)(fn)
