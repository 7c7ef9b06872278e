"""Damped two-level atom in a fluctuating-temperature radiation bath.

Rates carry the first-order ``q - 1`` corrections; the 2x2 density matrix
is integrated with fixed-step RK4. Natural units ``hbar = k_B = c = 1``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from ._kernels import rk4_two_level_impl
from .bath import bose_mean
from .errors import ConfigurationError, DomainError, ValidityError

STEP_FRACTION = 0.05


@dataclass(frozen=True)
class AtomParams:
    """Atom and bath parameters.

    Attributes
    ----------
    y : float
        Transition energy over temperature.
    gamma0 : float
        Spontaneous emission rate.
    theta : float
        Cavity parameter ``pi**2 V T**3 / 15``.
    q : float
        Fluctuation index.
    omega_a : float
        Atomic frequency driving the coherence phase.
    """

    y: float
    gamma0: float = 1.0
    theta: float = 0.0
    q: float = 1.0
    omega_a: float = 1.0

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError("y must be positive")
        if not self.gamma0 > 0:
            raise DomainError("gamma0 must be positive")
        if not self.theta >= 0:
            raise DomainError("theta must be non-negative")
        if not self.omega_a > 0:
            raise DomainError("omega_a must be positive")


@dataclass(frozen=True)
class DensityMatrix2:
    rho_ee: float
    rho_gg: float
    rho_eg: complex = 0j

    @classmethod
    def excited(cls):
        return cls(1.0, 0.0, 0j)

    @classmethod
    def ground(cls):
        return cls(0.0, 1.0, 0j)

    @property
    def trace(self):
        return self.rho_ee + self.rho_gg

    def min_eigenvalue(self):
        mean = 0.5 * (self.rho_ee + self.rho_gg)
        half_gap = math.hypot(0.5 * (self.rho_ee - self.rho_gg), abs(self.rho_eg))
        return mean - half_gap


def cavity_theta(volume, t_tilde):
    if volume < 0 or not t_tilde > 0:
        raise DomainError("cavity_theta needs volume >= 0 and t_tilde > 0")
    return math.pi**2 * volume * t_tilde**3 / 15.0


def cavity_theta_si(volume_m3, t_kelvin):
    """Cavity parameter from SI volume and temperature."""
    thermal_wavenumber = constants.k * t_kelvin / (constants.hbar * constants.c)
    return cavity_theta(volume_m3, 1.0) * thermal_wavenumber**3


def d_tv(theta, q):
    if theta < 0:
        raise DomainError("theta must be non-negative")
    d = 1.0 + 0.5 * (q - 1.0) * theta * (theta + 2.0)
    if not d > 0:
        raise ValidityError(f"cavity normalisation {d!r} <= 0 at theta={theta}, q={q}")
    return d


def cal_f(y, theta):
    n = bose_mean(1.0, y)
    return 0.5 * y * y * n * (n + 1.0) - y * n + 0.5 * theta * theta


def cal_g(y, theta):
    n = bose_mean(1.0, y)
    nn1 = n * (n + 1.0)
    return 0.5 * y * y * nn1 * (2.0 * n + 1.0) - y * nn1 + 0.5 * theta * (2.0 * y * nn1 + 2.0 * n + theta * n)


def rates(p):
    """Emission and absorption rates ``(gamma1, gamma2)``."""
    eps = p.q - 1.0
    d = d_tv(p.theta, p.q)
    n = bose_mean(1.0, p.y)
    if eps == 0.0:
        g1 = 0.5 * p.gamma0 * (n + 1.0)
        g2 = 0.5 * p.gamma0 * n
    else:
        g = cal_g(p.y, p.theta)
        g1 = 0.5 * p.gamma0 * ((n + 1.0) / d + eps * (cal_f(p.y, p.theta) + g))
        g2 = 0.5 * p.gamma0 * (n / d + eps * g)
    if not g1 > 0 or g2 < 0:
        raise ValidityError(f"unphysical rates gamma1={g1!r}, gamma2={g2!r}")
    return g1, g2


def lindblad_rhs(rho, p, gamma1, gamma2, shift=0.0):
    flow = -2.0 * gamma1 * rho.rho_ee + 2.0 * gamma2 * rho.rho_gg
    coh = complex(-(gamma1 + gamma2), -(p.omega_a + shift)) * rho.rho_eg
    return DensityMatrix2(flow, -flow, coh)


def steady_state(gamma1, gamma2):
    ee = gamma2 / (gamma1 + gamma2)
    return DensityMatrix2(ee, 1.0 - ee, 0j)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    rho_ee: np.ndarray
    rho_gg: np.ndarray
    rho_eg: np.ndarray
    gamma1: float
    gamma2: float

    def state(self, idx=-1):
        return DensityMatrix2(float(self.rho_ee[idx]), float(self.rho_gg[idx]), complex(self.rho_eg[idx]))


def evolve(rho0, p, t_max, dt, shift=0.0, stride=1, rate_pair=None):
    """Integrate the master equation from ``rho0`` up to ``t_max``.

    ``rate_pair`` overrides the rates computed from ``p``. Samples are kept
    every ``stride`` steps.
    """
    g1, g2 = rates(p) if rate_pair is None else rate_pair
    omega = p.omega_a + shift
    if not dt > 0 or not t_max > 0:
        raise ConfigurationError("dt and t_max must be positive")
    if dt > STEP_FRACTION / (g1 + g2) or dt > STEP_FRACTION / abs(omega):
        raise ConfigurationError(
            f"dt={dt} exceeds {STEP_FRACTION}/(gamma1+gamma2)={STEP_FRACTION / (g1 + g2)} "
            f"or {STEP_FRACTION}/omega={STEP_FRACTION / abs(omega)}"
        )
    nsteps = int(round(t_max / dt))
    if abs(nsteps * dt - t_max) > 1e-9 * t_max:
        raise ConfigurationError("t_max must be an integer multiple of dt")
    if stride < 1:
        raise ConfigurationError("stride must be at least 1")
    ee, gg, eg = rk4_two_level_impl(
        float(rho0.rho_ee), float(rho0.rho_gg), complex(rho0.rho_eg), g1, g2, float(omega), float(dt), nsteps, int(stride)
    )
    t = np.arange(ee.shape[0]) * (stride * dt)
    return Trajectory(t, ee, gg, eg, g1, g2)
