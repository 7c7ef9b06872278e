"""Tsallis thermodynamics of the Ohmic bath to first order in ``q - 1``.

Everything is written through the Boltzmann cumulants of the bath energy
at the parameter ``beta_tilde``::

    log_z                 log partition function
    k1, k2, k3            mean, variance and third cumulant of H

For the Ohmic density of states these are ``zeta(3)/b**2`` and
``(n+1)! zeta(3)/b**(n+2)``; a discrete bath supplies plain mode sums.
Quantities are densities (omega_c = 1, hbar = k_B = 1).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .bath import j_integral
from .errors import DomainError, ValidityError
from .specfun import ZETA3


@dataclass(frozen=True)
class Cumulants:
    log_z: float
    k1: float
    k2: float
    k3: float


@dataclass(frozen=True)
class FirstOrder:
    """First-order thermodynamics at one ``(beta_tilde, q)``."""

    u: float
    s: float
    trace_rho_q: float
    # Tr[rho^q H], the unnormalised energy entering the temperature map
    u_q: float


def ohmic_cumulants(beta_tilde):
    if not beta_tilde > 0:
        raise DomainError("beta_tilde must be positive")
    b = float(beta_tilde)
    k1 = j_integral(1, 1, b)
    k2 = j_integral(2, 2, b) + j_integral(1, 2, b)
    return Cumulants(ZETA3 / b**2, k1, k2, 24.0 * ZETA3 / b**5)


def first_order(c, beta_tilde, q):
    """First-order ``U``, ``S``, ``Tr[rho^q]`` and ``Tr[rho^q H]`` from cumulants."""
    b = beta_tilde
    eps = q - 1.0
    s_eq = c.log_z + b * c.k1
    if eps == 0.0:
        return FirstOrder(c.k1, s_eq, 1.0, c.k1)
    skew = c.k3 + 2.0 * c.k1 * c.k2
    u1 = -b * c.k2 + 0.5 * b * b * skew
    l2 = 0.5 * (b * b * c.k2 - b**3 * skew)
    return FirstOrder(
        u=c.k1 + eps * u1,
        s=s_eq - eps * (0.5 * s_eq * s_eq + l2),
        trace_rho_q=1.0 - eps * s_eq,
        u_q=c.k1 + eps * (u1 - s_eq * c.k1),
    )


def _ohmic(beta_tilde, q):
    return first_order(ohmic_cumulants(beta_tilde), beta_tilde, q)


def internal_energy(beta_tilde, q):
    return _ohmic(beta_tilde, q).u


def tsallis_entropy(beta_tilde, q):
    return _ohmic(beta_tilde, q).s


def trace_rho_q(beta_tilde, q):
    tr = _ohmic(beta_tilde, q).trace_rho_q
    if not tr > 0:
        raise ValidityError(f"Tr[rho^q] = {tr!r} <= 0 at beta_tilde={beta_tilde}, q={q}")
    return tr


def beta_from_pieces(beta_tilde, q, fo):
    """Physical inverse temperature from first-order pieces."""
    if q == 1.0:
        return float(beta_tilde)
    tr = fo.trace_rho_q
    if not tr > 0:
        raise ValidityError(f"Tr[rho^q] = {tr!r} <= 0 at beta_tilde={beta_tilde}, q={q}")
    denom = 1.0 - (1.0 - q) * beta_tilde * fo.u_q / tr
    if not denom > 0:
        raise ValidityError(f"temperature map denominator {denom!r} <= 0 at beta_tilde={beta_tilde}, q={q}")
    return float(beta_tilde * tr / denom)


def renormalized_beta(beta_tilde, q):
    return beta_from_pieces(beta_tilde, q, _ohmic(beta_tilde, q))


def beta_tilde_for(beta, q, bracket=(1e-3, 1e3)):
    """Invert :func:`renormalized_beta` on the low-temperature branch.

    Scans downward from the large-``beta_tilde`` end, where the map is
    close to the identity, and returns the first root found.
    """
    if not beta > 0:
        raise DomainError("beta must be positive")
    if q == 1.0:
        return float(beta)

    def gap(bt):
        try:
            return renormalized_beta(bt, q) - beta
        except ValidityError:
            return math.nan

    grid = np.geomspace(bracket[1], bracket[0], 400)
    prev_b, prev_g = grid[0], gap(grid[0])
    for bt in grid[1:]:
        g = gap(bt)
        if not (np.isfinite(g) and np.isfinite(prev_g)):
            break
        if g == 0.0:
            return float(bt)
        if np.sign(g) != np.sign(prev_g):
            return optimize.brentq(gap, bt, prev_b, xtol=1e-14, rtol=1e-14)
        prev_b, prev_g = bt, g
    raise ValidityError(f"no physical beta_tilde maps to beta={beta} at q={q}")


# ------------------------------------------------------------ the gate


@dataclass(frozen=True)
class ThermoPoint:
    beta_tilde: float
    q: float
    u: float
    s: float
    trace_rho_q: float
    beta_physical: float | None
    physical: bool
    # dS/dU along the parametric curve, None where U folds back
    slope: float | None = None


FD_STEP = 1e-4


def _local_check(beta_tilde, q):
    """Value, slope and a pass/fail verdict at one grid point."""
    fo = _ohmic(beta_tilde, q)
    h = FD_STEP * beta_tilde
    up = _ohmic(beta_tilde + h, q)
    dn = _ohmic(beta_tilde - h, q)
    du = up.u - dn.u
    ds = up.s - dn.s
    # U must fall as beta_tilde grows, otherwise S(U) folds back
    slope = ds / du if du < 0 else None
    ok = slope is not None and slope > 0 and fo.trace_rho_q > 0
    beta = None
    if ok:
        try:
            beta = beta_from_pieces(beta_tilde, q, fo)
        except ValidityError:
            ok = False
    return fo, slope, beta, ok


def su_plane(q, beta_tilde_grid):
    """Points of the ``(U, S)`` curve with their physicality flag.

    A point fails when ``U`` is not decreasing in ``beta_tilde`` (S is not
    single valued in U there), when ``dS/dU <= 0``, or when the trace or
    the temperature map is invalid. The gate runs from the coldest grid
    point toward hotter ones; past the first failure every hotter point is
    discarded as well.
    """
    grid = np.asarray(beta_tilde_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 3:
        raise DomainError("su_plane needs at least three grid points")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise DomainError("beta_tilde grid must be positive and strictly ascending")
    rows = [_local_check(bt, q) for bt in grid]
    out = [None] * grid.size
    tripped = False
    for idx in range(grid.size - 1, -1, -1):
        fo, slope, beta, ok = rows[idx]
        tripped = tripped or not ok
        physical = not tripped
        out[idx] = ThermoPoint(
            beta_tilde=float(grid[idx]),
            q=q,
            u=fo.u,
            s=fo.s,
            trace_rho_q=fo.trace_rho_q,
            beta_physical=beta if physical else None,
            physical=physical,
            slope=slope,
        )
    return out


def temp_map(q, t_tilde_grid):
    """Pairs ``(T_tilde, T)`` with ``T = None`` where the gate discards the point."""
    t = np.asarray(t_tilde_grid, dtype=float)
    if np.any(~(t > 0)):
        raise DomainError("T_tilde grid must be positive")
    order = np.argsort(1.0 / t, kind="stable")
    points = su_plane(q, 1.0 / t[order])
    result = [None] * t.size
    for pos, pt in zip(order, points):
        if not pt.physical:
            temp = None
        elif q == 1.0:
            temp = float(t[pos])
        else:
            temp = 1.0 / pt.beta_physical
        result[pos] = (float(t[pos]), temp)
    return result
