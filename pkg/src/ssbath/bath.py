"""Ohmic bath: spectral density, Bose moments and the master integrals.

Units: hbar = k_B = 1. ``rho(w) = 2 alpha w_c w exp(-w / w_c)`` and the
density of states is ``g(w) = w``.

    I(k, l, tau) = int_0^inf dw exp(i w tau) rho(w) nbar(w)**k w**l
    J(k, l)      = int_0^inf dw g(w) nbar(w)**k w**l

with ``nbar(w) = 1 / (exp(beta_tilde w) - 1)``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ConvergenceError, DomainError
from .specfun import ZETA3, hurwitz_zeta, polygamma

SMALL_X = 1e-8

I_INDICES = ((0, 0), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2), (3, 2))
J_INDICES = ((1, 1), (1, 2), (2, 2))

Q_WINDOW = (0.5, 1.5)


@dataclass(frozen=True)
class BathParams:
    """Ohmic model parameters plus the q-exponential inverse temperature.

    Attributes
    ----------
    alpha : float
        Coupling normalisation.
    omega_c : float
        Cutoff frequency.
    beta_tilde : float
        Inverse-temperature parameter of the q-exponential state.
    q : float
        Fluctuation index, restricted to ``(0.5, 1.5)``.
    """

    alpha: float = 1.0
    omega_c: float = 1.0
    beta_tilde: float = 1.0
    q: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "omega_c", "beta_tilde"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")
        if not (Q_WINDOW[0] < self.q < Q_WINDOW[1]):
            raise DomainError(f"q must lie in {Q_WINDOW}, got {self.q!r}")

    def with_q(self, q):
        return BathParams(self.alpha, self.omega_c, self.beta_tilde, q)


def bose_mean(beta_tilde, omega):
    """Bose-Einstein occupation ``1 / (exp(beta_tilde * omega) - 1)``.

    Uses ``1/x - 1/2 + x/12`` below ``x = 1e-8``. Accepts arrays.
    """
    x = np.asarray(beta_tilde * np.asarray(omega, dtype=float), dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("bose_mean requires beta_tilde * omega > 0")
    with np.errstate(over="ignore"):
        big = 1.0 / np.expm1(np.minimum(x, 700.0))
    out = np.where(x < SMALL_X, 1.0 / x - 0.5 + x / 12.0, np.where(x > 700.0, np.exp(-x), big))
    return float(out) if out.ndim == 0 else out


def bose_moment(k, beta_tilde, omega):
    """Raw moment ``<n**k>`` of the geometric (Bose) occupation distribution."""
    n = bose_mean(beta_tilde, omega)
    if k == 1:
        return n
    if k == 2:
        return 2.0 * n * n + n
    if k == 3:
        return 6.0 * n**3 + 6.0 * n * n + n
    raise DomainError(f"bose_moment supports k in (1, 2, 3), got {k!r}")


def spectral_density(omega, p):
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise DomainError("spectral_density requires omega >= 0")
    out = 2.0 * p.alpha * p.omega_c * w * np.exp(-w / p.omega_c)
    return float(out) if out.ndim == 0 else out


def lambda_arg(tau, p):
    """Hurwitz argument ``1 + 1/(beta_tilde w_c) - i tau / beta_tilde``.

    This is the ``-`` branch; negative ``tau`` gives the ``+`` branch at ``|tau|``.
    """
    tau = np.asarray(tau, dtype=float)
    return 1.0 + 1.0 / (p.beta_tilde * p.omega_c) - 1j * tau / p.beta_tilde


def j_integral(k, l, beta_tilde):
    """Closed-form ``J(k, l)`` for the Ohmic density of states."""
    if not beta_tilde > 0:
        raise DomainError("beta_tilde must be positive")
    b = float(beta_tilde)
    if (k, l) == (1, 1):
        return 2.0 * ZETA3 / b**3
    if (k, l) == (1, 2):
        return math.pi**4 / (15.0 * b**4)
    if (k, l) == (2, 2):
        return -(math.pi**4 - 90.0 * ZETA3) / (15.0 * b**4)
    raise DomainError(f"j_integral supports {J_INDICES}, got {(k, l)!r}")


def i_integral(k, l, tau, p):
    """Closed-form ``I(k, l, tau)``; ``tau`` may be a scalar or an array.

    The polygamma forms are written for general ``omega_c``; at
    ``omega_c = 1`` they coincide term by term with the usual printed forms.
    """
    if (k, l) not in I_INDICES:
        raise DomainError(f"i_integral supports {I_INDICES}, got {(k, l)!r}")
    tau_arr = np.asarray(tau, dtype=float)
    if np.any(~np.isfinite(tau_arr)):
        raise DomainError("tau must be finite")
    a, wc, b = p.alpha, p.omega_c, p.beta_tilde
    pref = a * wc
    if (k, l) == (0, 0):
        out = 2.0 * pref * wc * wc / (1.0 - 1j * wc * tau_arr) ** 2
    else:
        z = lambda_arg(tau_arr, p)
        # b z = beta_tilde + 1/omega_c - i tau
        bz = b * z
        if (k, l) == (1, 0):
            out = 2.0 * pref / b**2 * hurwitz_zeta(2, z)
        elif (k, l) == (1, 1):
            out = 4.0 * pref / b**3 * hurwitz_zeta(3, z)
        elif (k, l) == (1, 2):
            out = 12.0 * pref / b**4 * hurwitz_zeta(4, z)
        elif (k, l) == (2, 1):
            out = 2.0 * pref / b**4 * (2.0 * b * polygamma(1, z) + bz * polygamma(2, z))
        elif (k, l) == (2, 2):
            out = -2.0 * pref / b**5 * (3.0 * b * polygamma(2, z) + bz * polygamma(3, z))
        else:  # (3, 2)
            c = 1.0 / wc - 1j * tau_arr
            out = pref / b**6 * (
                6.0 * b * b * polygamma(1, z)
                + 3.0 * b * (3.0 * b + 2.0 * c) * polygamma(2, z)
                + (2.0 * b * b + 3.0 * b * c + c * c) * polygamma(3, z)
            )
    out = np.asarray(out, dtype=np.complex128)
    if not np.all(np.isfinite(out)):
        raise OverflowError("i_integral produced a non-finite value")
    return complex(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- quadrature


def _wpow_nbar(beta_tilde, w, k, m):
    """``w**m * nbar(w)**k`` including its finite limit at ``w = 0``."""
    if w == 0.0:
        return beta_tilde ** (-k) if m == k else 0.0
    if k == 0:
        return w**m
    return w**m * bose_mean(beta_tilde, w) ** k


def _quad(f, a, b, rel, limit=400):
    res = integrate.quad(f, a, b, limit=limit, epsabs=0.0, epsrel=rel, full_output=1)
    val, err = res[0], res[1]
    if len(res) > 3 and res[3] and "roundoff" not in str(res[3]).lower():
        raise ConvergenceError(str(res[3]).splitlines()[0], val, err)
    return val, err


def quad_j(k, l, beta_tilde, rel=1e-12):
    """Adaptive quadrature of the defining integral of ``J(k, l)``."""
    if not beta_tilde > 0:
        raise DomainError("beta_tilde must be positive")
    if k == 0:
        raise ConvergenceError(f"J(0,{l}) diverges at omega -> inf")
    if l + 1 - k <= -1:
        raise ConvergenceError(f"J({k},{l}) diverges at omega -> 0")

    def f(w):
        return _wpow_nbar(beta_tilde, w, k, l + 1)

    rate = k * beta_tilde
    scale = (l + 1) / rate
    edge = scale + 60.0 / rate
    v1, e1 = _quad(f, 0.0, scale, rel)
    v2, e2 = _quad(f, scale, edge, rel)
    v3, e3 = _quad(f, edge, np.inf, rel)
    val = v1 + v2 + v3
    err = e1 + e2 + e3
    if err > 100 * rel * abs(val):
        raise ConvergenceError("quad_j did not reach the requested accuracy", val, err)
    return val


def quad_i(k, l, tau, p, rel=1e-11):
    """Adaptive quadrature of the defining integral of ``I(k, l, tau)``.

    The cosine and sine parts are integrated separately with an oscillatory
    rule. The interval is cut at a point beyond which the integrand
    ``<= exp(-40)`` times its scale, and that remainder is integrated by a
    Fourier-weighted rule on the half line.
    """
    if l + 1 - k <= -1:
        raise ConvergenceError(f"I({k},{l}) diverges at omega -> 0")
    b, wc = p.beta_tilde, p.omega_c
    pref = 2.0 * p.alpha * wc

    def f(w):
        return pref * np.exp(-w / wc) * _wpow_nbar(b, w, k, l + 1)

    rate = 1.0 / wc + k * b
    edge = (l + 2) / rate + 60.0 / rate
    tau = float(tau)
    # magnitude scale for absolute error control of oscillating parts
    mag, _ = _quad(f, 0.0, edge, 1e-10)
    absl = rel * mag
    if tau == 0.0:
        re = _quad(f, 0.0, edge, rel)[0] + _quad(f, edge, np.inf, rel)[0]
        return complex(re, 0.0)
    parts = []
    for weight in ("cos", "sin"):
        v1, _ = _quad_abs(f, 0.0, edge, absl, weight, abs(tau))
        v2, _ = _quad_abs(f, edge, np.inf, absl, weight, abs(tau))
        parts.append(v1 + v2)
    re, im = parts
    if tau < 0:
        im = -im
    return complex(re, im)


def _quad_abs(f, a, b, absl, weight, wvar):
    if np.isinf(b):
        res = integrate.quad(f, a, b, weight=weight, wvar=wvar, epsabs=absl, limlst=200, full_output=1)
    else:
        res = integrate.quad(f, a, b, weight=weight, wvar=wvar, epsabs=absl, epsrel=0.0, limit=800, full_output=1)
    val, err = res[0], res[1]
    if err > 100 * absl + 1e-300:
        raise ConvergenceError("quad_i did not converge", val, err)
    return val, err
