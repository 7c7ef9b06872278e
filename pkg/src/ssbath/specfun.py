"""Riemann and Hurwitz zeta functions and polygammas for integer order.

Only what the Ohmic closed forms need: integer ``s >= 2``, ``Re z > 0``.
The Hurwitz kernel shifts ``z`` with the recurrence
``zeta_s(z) = zeta_s(z + 1) + z**-s`` until ``Re z >= 10`` and finishes
with an Euler-Maclaurin tail.
"""

import math

import numpy as np

from ._kernels import hurwitz_zeta_impl
from .errors import DomainError

POLYGAMMA_ORDERS = (1, 2, 3)


def _check_order(s):
    if isinstance(s, bool) or int(s) != s or s < 2:
        raise DomainError(f"zeta order must be an integer >= 2, got {s!r}")
    return int(s)


def _finite_or_raise(values, what):
    if not np.all(np.isfinite(values)):
        raise OverflowError(f"{what} produced a non-finite value")


def hurwitz_zeta(s, z):
    """Hurwitz zeta ``sum_{n>=0} (n + z)**-s``.

    Parameters
    ----------
    s : int
        Order, ``s >= 2``.
    z : complex or array_like of complex
        Argument(s) with positive real part.

    Returns
    -------
    complex or ndarray
        Same shape as ``z``.
    """
    s = _check_order(s)
    zarr = np.asarray(z, dtype=np.complex128)
    if np.any(~np.isfinite(zarr)):
        raise DomainError("hurwitz_zeta argument must be finite")
    if np.any(zarr.real <= 0.0):
        raise DomainError("hurwitz_zeta requires Re z > 0")
    flat = np.ascontiguousarray(zarr.ravel())
    out = hurwitz_zeta_impl(s, flat).reshape(zarr.shape)
    _finite_or_raise(out, "hurwitz_zeta")
    if out.ndim == 0:
        return complex(out)
    return out


def riemann_zeta(s):
    """Riemann zeta at integer ``s >= 2``."""
    s = _check_order(s)
    return float(hurwitz_zeta(s, 1.0).real)


def polygamma(m, z):
    """Polygamma ``psi_m(z)`` for ``m`` in {1, 2, 3}.

    Evaluated through ``psi_m(z) = (-1)**(m+1) * m! * zeta_{m+1}(z)``.
    """
    if isinstance(m, bool) or m not in POLYGAMMA_ORDERS:
        raise DomainError(f"polygamma order must be one of {POLYGAMMA_ORDERS}, got {m!r}")
    sign = 1.0 if m % 2 == 1 else -1.0
    return sign * math.factorial(m) * hurwitz_zeta(m + 1, z)


ZETA3 = riemann_zeta(3)
