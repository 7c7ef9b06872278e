"""Thermal AC Stark shift function and its sign changes in ``y``.

``F(y) = PV int_0^inf x**3 w(x) [1/(y - x) + 1/(y + x)] dx / D`` where
``w`` is the Bose occupation plus its first-order ``q - 1`` correction and
``D`` is the cavity normalisation. Negative ``F`` means the two levels
attract, positive means they repel.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, optimize

from .errors import ConvergenceError, DomainError
from .qme import d_tv

TAIL_OFFSET = 40.0
SCAN_WINDOW = (0.1, 30.0)
SCAN_POINTS = 300


@dataclass(frozen=True)
class StarkParams:
    y: float
    theta: float = 0.0
    q: float = 1.0
    prefactor: float = 1.0

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError("y must be positive")
        if not self.theta >= 0:
            raise DomainError("theta must be non-negative")
        if not self.prefactor > 0:
            raise DomainError("prefactor must be positive")


def _quad(f, a, b, tol):
    val, err = integrate.quad(f, a, b, epsabs=0.1 * tol, epsrel=0.1 * tol, limit=500)
    return val, err


def pv_integrate(integrand, pole, upper, tol=1e-10, tail=False):
    """Principal value of ``int_0^upper integrand`` across a simple pole.

    ``integrand`` includes the singular factor. The window
    ``[pole - d, pole + d]`` with ``d = min(pole, 1)/2`` is folded onto
    ``u in [0, d]`` as ``integrand(pole + u) + integrand(pole - u)``, where
    the singular parts cancel. With ``tail=True`` the piece beyond
    ``upper`` is added.
    """
    if not 0.0 < pole < upper:
        raise DomainError("pole must lie strictly inside (0, upper)")
    half = 0.5 * min(pole, 1.0)
    if pole + half > upper:
        half = 0.5 * (upper - pole)

    def folded(u):
        return integrand(pole + u) + integrand(pole - u)

    pieces = [
        _quad(integrand, 0.0, pole - half, tol),
        _quad(folded, 0.0, half, tol),
        _quad(integrand, pole + half, upper, tol),
    ]
    if tail:
        pieces.append(_quad(integrand, upper, np.inf, tol))
    val = math.fsum(v for v, _ in pieces)
    err = sum(e for _, e in pieces)
    # pieces on either side of the pole can cancel heavily; judge the
    # error against their combined size
    scale = sum(abs(v) for v, _ in pieces)
    if err > tol * max(1.0, scale):
        raise ConvergenceError("principal value did not converge", val, err)
    return val


def _nbar(x):
    if x > 700.0:
        return math.exp(-x)
    return 1.0 / math.expm1(x)


def occupation_weight(x, q, theta):
    """Bose occupation plus the first-order bracket; zero at ``x = 0`` is not used."""
    n = _nbar(x)
    eps = q - 1.0
    if eps == 0.0:
        return n
    nn1 = n * (n + 1.0)
    bracket = (
        x * x * nn1
        - 2.0 * x * n
        + 2.0 * x * x * nn1 * (2.0 * n + 1.0)
        - 4.0 * x * nn1
        + theta * (2.0 * x * nn1 + 4.0 * n + 2.0 * theta * n)
    )
    return n + 0.25 * eps * bracket


def stark_integrand(y, q, theta):
    def f(x):
        if x <= 0.0:
            return 0.0
        return x**3 * occupation_weight(x, q, theta) * (1.0 / (y - x) + 1.0 / (y + x))

    return f


def stark_tail(p):
    """Contribution of ``x > y + 40`` to the unscaled integral."""
    f = stark_integrand(p.y, p.q, p.theta)
    return integrate.quad(f, p.y + TAIL_OFFSET, np.inf, limit=200)[0]


def stark_f(p, tol=1e-10):
    d = d_tv(p.theta, p.q)
    f = stark_integrand(p.y, p.q, p.theta)
    val = pv_integrate(f, p.y, p.y + TAIL_OFFSET, tol=tol, tail=True)
    return p.prefactor * val / d


def stark_curve(q, theta, ys):
    return np.array([stark_f(StarkParams(float(y), theta, q)) for y in ys])


def stark_roots(q, theta, window=SCAN_WINDOW, n_scan=SCAN_POINTS, xtol=1e-8):
    """All sign changes of ``F`` in ``y`` over a log-spaced scan, refined by Brent."""
    ys = np.geomspace(window[0], window[1], n_scan)
    vals = stark_curve(q, theta, ys)

    def g(y):
        return stark_f(StarkParams(y, theta, q))

    roots = []
    for i in range(n_scan - 1):
        if vals[i] == 0.0:
            roots.append(float(ys[i]))
        elif vals[i] * vals[i + 1] < 0:
            roots.append(optimize.brentq(g, ys[i], ys[i + 1], xtol=xtol))
    return roots


def critical_y(q, theta):
    """First attraction-to-repulsion crossing, or ``None`` if the window has none."""
    roots = stark_roots(q, theta)
    return roots[0] if roots else None
