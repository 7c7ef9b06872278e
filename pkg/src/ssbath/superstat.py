"""Gamma superstatistics, the q-exponential and first-order bath correlators.

The correlators are assembled from master-integral values by
:func:`assemble_numerator`, :func:`assemble_denominator` and
:func:`assemble_reverse`. Those take lookup callables, so the same algebra
serves the Ohmic continuum (closed-form integrals) and a discrete bath
(plain mode sums, see :mod:`ssbath.oracle`).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .bath import BathParams, i_integral, j_integral
from .errors import ConvergenceError, DomainError, ValidityError


@dataclass(frozen=True)
class GammaDist:
    """Gamma density over inverse temperatures with scale ``b`` and shape ``c``."""

    b: float
    c: float

    def __post_init__(self):
        if not (self.b > 0 and self.c > 0 and np.isfinite(self.b) and np.isfinite(self.c)):
            raise DomainError(f"GammaDist needs b > 0 and c > 0, got b={self.b!r}, c={self.c!r}")

    @classmethod
    def from_tsallis(cls, beta, q):
        """Distribution with mean ``beta`` and shape ``1/(q-1)``; needs ``q > 1``."""
        if not q > 1:
            raise DomainError("the gamma representation needs q > 1")
        c = 1.0 / (q - 1.0)
        return cls(beta / c, c)

    @property
    def mean(self):
        return self.b * self.c

    @property
    def variance(self):
        return self.b * self.b * self.c


def gamma_pdf(d, beta_bar):
    """Normalised gamma density ``(beta_bar/b)**(c-1) exp(-beta_bar/b) / (b Gamma(c))``."""
    x = np.asarray(beta_bar, dtype=float)
    if np.any(x < 0):
        raise DomainError("gamma_pdf requires beta_bar >= 0")
    with np.errstate(divide="ignore"):
        log_pdf = special.xlogy(d.c - 1.0, x / d.b) - x / d.b - math.log(d.b) - special.gammaln(d.c)
    out = np.exp(log_pdf)
    return float(out) if out.ndim == 0 else out


def q_exp(x, q):
    """Tsallis q-exponential ``[1 + (1-q) x]**(1/(1-q))``, ``exp(x)`` at ``q = 1``."""
    if q == 1.0:
        return math.exp(x)
    one_minus_q = 1.0 - q
    if not 1.0 + one_minus_q * x > 0:
        raise DomainError(f"x={x!r} lies outside the q-exponential support for q={q!r}")
    # log1p keeps accuracy when 1/(1-q) is large
    return math.exp(math.log1p(one_minus_q * x) / one_minus_q)


def q_from_sigma(sigma, beta):
    if not beta > 0:
        raise DomainError("beta must be positive")
    if sigma < 0:
        raise DomainError("sigma must be non-negative")
    return 1.0 + (sigma / beta) ** 2


def gamma_laplace(d, energy, rel=1e-12):
    """``int_0^inf gamma_pdf(d, x) exp(-x E) dx`` by adaptive quadrature.

    The integrand is a scaled gamma density peaked near ``(c-1)/rate``;
    the range is split around the peak so narrow (large ``c``) shapes are
    resolved.
    """
    if energy < 0:
        raise DomainError("energy must be non-negative")
    rate = 1.0 / d.b + energy
    log_norm = -d.c * math.log(d.b) - special.gammaln(d.c)

    def f(x):
        if x == 0.0:
            return math.exp(log_norm) if d.c == 1.0 else 0.0
        return math.exp(log_norm + (d.c - 1.0) * math.log(x) - rate * x)

    peak = max(d.c - 1.0, 0.0) / rate
    width = math.sqrt(d.c) / rate
    cuts = [0.0]
    for m in (-8.0, -3.0, 0.0, 3.0, 8.0, 40.0):
        x = peak + m * width
        if x > cuts[-1]:
            cuts.append(x)
    total = 0.0
    err = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        v, e = integrate.quad(f, a, b, epsabs=0.0, epsrel=rel, limit=200)
        total += v
        err += e
    v, e = integrate.quad(f, cuts[-1], np.inf, epsabs=0.0, epsrel=rel, limit=200)
    total += v
    err += e
    if err > 1e3 * rel * abs(total) + 1e-300:
        raise ConvergenceError("gamma average did not converge", total, err)
    return total


def ss_boltzmann_scalar(beta, q, energy):
    """Gamma-averaged Boltzmann factor with mean ``beta`` and shape ``1/(q-1)``."""
    if not q > 1:
        raise DomainError("the gamma average is defined for q > 1 only")
    if not beta > 0:
        raise DomainError("beta must be positive")
    return gamma_laplace(GammaDist.from_tsallis(beta, q), energy)


# ------------------------------------------------------------ assembly


def assemble_denominator(j, eps, beta_tilde):
    """First-order normalisation ``D`` from ``j(k, l)`` lookups."""
    j11 = j(1, 1)
    b = beta_tilde
    return 1.0 - 0.5 * eps * b * (2.0 * j11 - b * (j(2, 2) + j(1, 2) + j11 * j11))


def assemble_numerator(i, j, eps, beta_tilde):
    """First-order occupation-weighted numerator ``N`` from ``i(k, l)`` and ``j(k, l)``."""
    i10 = i(1, 0)
    if eps == 0.0:
        return i10
    b = beta_tilde
    j11 = j(1, 1)
    i11 = i(1, 1)
    i21 = i(2, 1)
    quad_part = (
        j11 * j11 * i10
        + 2.0 * i(3, 2)
        + 3.0 * i(2, 2)
        + i(1, 2)
        + i10 * (j(2, 2) + j(1, 2))
        + 2.0 * j11 * (i21 + i11)
    )
    lin_part = i21 + i11 + j11 * i10
    return i10 + 0.5 * eps * b * b * quad_part - eps * b * lin_part


def assemble_reverse(i_rev, j, eps, beta_tilde, literal=False):
    """Reverse-order term ``M`` from ``i_rev(k, l)`` (integrals at ``-tau``).

    The default is ``I(0,0,-tau) * D``, which is what the discrete traces
    give. ``literal=True`` returns the alternative bracket
    ``I00 + eps b/2 [b (J11^2 I00 + I22 + I12) - 2 I11]`` instead.
    """
    i00 = i_rev(0, 0)
    if eps == 0.0:
        return i00
    b = beta_tilde
    if literal:
        j11 = j(1, 1)
        return i00 + 0.5 * eps * b * (b * (j11 * j11 * i00 + i_rev(2, 2) + i_rev(1, 2)) - 2.0 * i_rev(1, 1))
    return i00 * assemble_denominator(j, eps, beta_tilde)


# ------------------------------------------------------- Ohmic continuum


def _j_lookup(p):
    return lambda k, l: j_integral(k, l, p.beta_tilde)


def _i_lookup(tau, p):
    cache = {}

    def i(k, l):
        if (k, l) not in cache:
            cache[(k, l)] = i_integral(k, l, tau, p)
        return cache[(k, l)]

    return i


def corr_d(p):
    """Normalisation ``D``; raises :class:`ValidityError` when it is not positive."""
    d = assemble_denominator(_j_lookup(p), p.q - 1.0, p.beta_tilde)
    if not d > 0:
        raise ValidityError(f"first-order normalisation D = {d!r} <= 0 at beta_tilde={p.beta_tilde}, q={p.q}")
    return d


def corr_n(tau, p):
    return assemble_numerator(_i_lookup(tau, p), _j_lookup(p), p.q - 1.0, p.beta_tilde)


def corr_m(tau, p, literal=False):
    neg = -np.asarray(tau, dtype=float)
    return assemble_reverse(_i_lookup(neg, p), _j_lookup(p), p.q - 1.0, p.beta_tilde, literal=literal)


@dataclass(frozen=True)
class CorrelationSample:
    tau: float
    c_q: complex
    c_q_star: complex
    c_eq: complex


def correlation(tau, p, literal=False):
    """Bath correlators at lag ``tau`` with their ``q = 1`` reference.

    ``c_q = N/D`` and ``c_q_star = (conj N + M)/D``; ``c_eq`` is the
    equilibrium ``I(1,0,tau)``.
    """
    tau = float(tau)
    d = corr_d(p)
    n = corr_n(tau, p)
    m = corr_m(tau, p, literal=literal)
    c_eq = n if p.q == 1.0 else i_integral(1, 0, tau, p)
    return CorrelationSample(tau, n / d, (n.conjugate() + m) / d, c_eq)


__all__ = [
    "BathParams",
    "CorrelationSample",
    "GammaDist",
    "assemble_denominator",
    "assemble_numerator",
    "assemble_reverse",
    "corr_d",
    "corr_m",
    "corr_n",
    "correlation",
    "gamma_laplace",
    "gamma_pdf",
    "q_exp",
    "q_from_sigma",
    "ss_boltzmann_scalar",
]
