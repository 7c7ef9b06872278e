"""Optional numba acceleration.

Set ``SSBATH_DISABLE_NUMBA=1`` to force the pure-numpy kernels even when
numba is importable. The choice is made once, at import time.
"""

import os

_FLAG = os.environ.get("SSBATH_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG not in ("", "0", "false", "no")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not DISABLED


def njit(*args, **kwargs):
    """``numba.njit`` when numba is installed, identity decorator otherwise.

    The jitted objects are created even when ``USE_NUMBA`` is false so the
    benchmark can compare both paths in one process.
    """
    if HAVE_NUMBA:
        import numba

        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda f: f


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
