"""Brute-force references on a bath of a few discrete modes.

Two independent routes are kept for every exact quantity:

* direct sums over the truncated product Fock space (compiled kernel);
* per-mode geometric closed forms, and for ``q > 1`` a one-dimensional
  gamma average of those Boltzmann traces (no truncation at all).

The first-order counterparts reuse the assembly in :mod:`ssbath.superstat`
and :mod:`ssbath.thermo` with mode sums in place of the Ohmic integrals.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ._kernels import BOLTZMANN, QPOWER, fock_sums_impl
from .errors import ConfigurationError, ConvergenceError, DomainError
from .superstat import (
    GammaDist,
    assemble_denominator,
    assemble_numerator,
    assemble_reverse,
    gamma_laplace,
    q_exp,
)
from .thermo import Cumulants, beta_from_pieces, first_order

OBSERVABLES = ("one", "H", "H2", "n", "Hn", "H2n")
TRUNCATION_TOL = 1e-12


@dataclass(frozen=True)
class DiscreteBath:
    """Modes ``omegas`` with couplings ``kappas``, each truncated at ``n_max`` quanta."""

    omegas: tuple
    n_max: int = 50
    kappas: tuple = field(default=None)

    def __post_init__(self):
        om = tuple(float(w) for w in self.omegas)
        if not om or any(not w > 0 for w in om):
            raise DomainError("mode frequencies must be positive")
        kap = tuple(1.0 for _ in om) if self.kappas is None else tuple(float(k) for k in self.kappas)
        if len(kap) != len(om):
            raise DomainError("kappas and omegas differ in length")
        if self.n_max < 1:
            raise DomainError("n_max must be at least 1")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "kappas", kap)

    @property
    def w(self):
        return np.array(self.omegas)

    @property
    def k2(self):
        return np.array(self.kappas) ** 2

    def check_truncation(self, beta):
        """Raise if the Boltzmann weight at the cut is not negligible."""
        worst = math.exp(-beta * min(self.omegas) * self.n_max)
        if worst >= TRUNCATION_TOL:
            raise ConfigurationError(
                f"n_max={self.n_max} too small at beta={beta}: exp(-beta*w_min*n_max)={worst:.3g}"
            )


DEFAULT_BATH = DiscreteBath((0.7, 1.0, 1.9), n_max=50)


# ------------------------------------------------------------ Boltzmann traces


def _nbar(beta, w):
    with np.errstate(over="ignore"):
        return 1.0 / np.expm1(beta * w)


def _log_z(beta, w):
    return float(-np.sum(np.log(-np.expm1(-beta * w))))


def boltzmann_averages(b, beta):
    """Normalised ``<H>, <H^2>, <n_j>, <H n_j>, <H^2 n_j>`` in closed form."""
    w = b.w
    n = _nbar(beta, w)
    s1 = float(np.sum(w * n))
    w2 = float(np.sum(w * w * n * (n + 1.0)))
    h_n = n * (w * (n + 1.0) + s1)
    h2_n = n * (w * w * (2.0 * n * n + 3.0 * n + 1.0) + s1 * s1 + w2 + 2.0 * w * (n + 1.0) * s1)
    return s1, w2 + s1 * s1, n, h_n, h2_n


def exact_trace(b, beta_bar, observable, mode=0, method="closed"):
    """``Tr[exp(-beta_bar H) X]`` on the discrete bath.

    ``observable`` is one of ``one, H, H2, n, Hn, H2n``; the ``n`` family
    refers to ``b_j^dagger b_j`` with ``j = mode``. Off-diagonal
    ``b_j^dagger b_l`` traces vanish and are not listed.
    """
    if observable not in OBSERVABLES:
        raise DomainError(f"observable must be one of {OBSERVABLES}")
    if not beta_bar > 0:
        raise DomainError("beta_bar must be positive")
    b.check_truncation(beta_bar)
    k = len(b.omegas)
    if method == "direct":
        sums = fock_sums_impl(b.w, b.n_max, BOLTZMANN, float(beta_bar), 0.0, 0.0)
        index = {"one": 0, "H": 1, "H2": 2, "n": 3 + mode, "Hn": 3 + k + mode, "H2n": 3 + 2 * k + mode}
        return float(sums[index[observable]])
    if method != "closed":
        raise DomainError("method must be 'closed' or 'direct'")
    z = math.exp(_log_z(beta_bar, b.w))
    h, h2, n, h_n, h2_n = boltzmann_averages(b, beta_bar)
    avg = {"one": 1.0, "H": h, "H2": h2, "n": n[mode], "Hn": h_n[mode], "H2n": h2_n[mode]}
    return z * float(avg[observable])


# ----------------------------------------------------------- q-traces


@dataclass(frozen=True)
class QTraces:
    """Unnormalised traces of ``e_q(-beta H)**q`` (``wq_*``) and ``Tr e_q(-beta H)`` (``z``)."""

    wq_one: float
    wq_h: float
    wq_n: np.ndarray
    z: float


def _gamma_trace(shape, scale, fn, rel=1e-12):
    """``int gamma_pdf(x) fn(x) dx`` for vector-valued ``fn``, split around the peak."""
    d = GammaDist(scale, shape)
    peak = (d.c - 1.0) * d.b
    width = math.sqrt(d.c) * d.b
    cuts = [0.0]
    for m in (-6.0, -2.0, 0.0, 2.0, 6.0, 20.0, 60.0):
        x = peak + m * width
        if x > cuts[-1]:
            cuts.append(x)
    pieces = list(zip(cuts[:-1], cuts[1:])) + [(cuts[-1], np.inf)]

    def f(x):
        return _pdf(d, x) * np.atleast_1d(fn(x))

    total = 0.0
    err = 0.0
    for a, c in pieces:
        v, e = integrate.quad_vec(f, a, c, epsabs=0.0, epsrel=rel, norm="max", limit=400)
        total = total + v
        err += e
    if err > 1e3 * rel * np.max(np.abs(total)):
        raise ConvergenceError("gamma-averaged trace did not converge", total, err)
    return total


def _pdf(d, x):
    if x <= 0.0:
        return 0.0
    return math.exp((d.c - 1.0) * math.log(x / d.b) - x / d.b - math.log(d.b) - math.lgamma(d.c))


def q_traces(b, beta, q, method=None):
    """Exact traces of the q-exponential state.

    ``method="gamma"`` (default for ``q > 1``) writes each power of the
    q-exponential as a gamma average of Boltzmann traces, which the
    geometric closed forms give without truncation. ``method="direct"``
    sums the truncated Fock space with the Tsallis cutoff ``[.]_+``.
    """
    if method is None:
        method = "gamma" if q > 1 else "direct"
    eps = q - 1.0
    if q == 1.0:
        z = math.exp(_log_z(beta, b.w))
        h, _, n, _, _ = boltzmann_averages(b, beta)
        return QTraces(z, z * h, z * n, z)
    if method == "gamma":
        if not q > 1:
            raise DomainError("the gamma route needs q > 1")

        def weighted(x):
            z = math.exp(_log_z(x, b.w))
            h, _, n, _, _ = boltzmann_averages(b, x)
            return np.concatenate(([z, z * h], z * n))

        # e_q(-beta E)**q = (1 + eps beta E)**(-q/eps): shape q/eps, scale eps*beta
        wq = _gamma_trace(q / eps, eps * beta, weighted)
        z = _gamma_trace(1.0 / eps, eps * beta, lambda x: math.exp(_log_z(x, b.w)))[0]
        return QTraces(float(wq[0]), float(wq[1]), wq[2:].copy(), float(z))
    if method != "direct":
        raise DomainError("method must be 'gamma' or 'direct'")
    _check_q_truncation(b, beta, q)
    k = len(b.omegas)
    wq = fock_sums_impl(b.w, b.n_max, QPOWER, float(beta), float(eps), -q / eps)
    z = fock_sums_impl(b.w, b.n_max, QPOWER, float(beta), float(eps), -1.0 / eps)[0]
    return QTraces(float(wq[0]), float(wq[1]), wq[3 : 3 + k].copy(), float(z))


def _check_q_truncation(b, beta, q):
    """The truncated box must hold all of the q-weight that matters."""
    eps = q - 1.0
    edge = min(b.omegas) * b.n_max
    if eps < 0:
        # compact support: nothing beyond the cutoff energy carries weight
        if edge * (-eps) * beta < 1.0:
            raise ConfigurationError(f"n_max={b.n_max} does not reach the Tsallis cutoff at beta={beta}, q={q}")
        return
    if (1.0 + eps * beta * edge) ** (-q / eps) >= TRUNCATION_TOL:
        raise ConfigurationError(f"n_max={b.n_max} leaves a power-law tail above {TRUNCATION_TOL} at beta={beta}, q={q}")


@dataclass(frozen=True)
class ExactResult:
    """Exact counterparts of the first-order quantities at one ``(beta, q)``."""

    numerator: complex
    denominator: float
    c_q: complex
    c_q_star: complex
    u: float
    s: float
    trace_rho_q: float


def exact_quantities(b, beta, q, tau=0.0, method=None):
    """``N``, ``D``, ``C_q``, ``C_q*``, ``U``, ``S`` and ``Tr[rho^q]`` from exact traces.

    ``N`` and ``D`` are normalised by the Boltzmann partition function at
    ``beta``, which is the factor the first-order expressions divide out.
    """
    t = q_traces(b, beta, q, method)
    z_b = math.exp(_log_z(beta, b.w))
    phase = b.k2 * np.exp(1j * b.w * tau)
    numer = complex(np.sum(phase * t.wq_n)) / z_b
    denom = t.wq_one / z_b
    c_q = numer / denom
    c_q_star = c_q.conjugate() + complex(np.sum(b.k2 * np.exp(-1j * b.w * tau)))
    u = t.wq_h / t.wq_one
    tr = t.wq_one / t.z**q
    s = math.log(t.z) + beta * u if q == 1.0 else (1.0 - tr) / (q - 1.0)
    return ExactResult(numer, denom, c_q, c_q_star, u, s, tr)


def exact_correlation(b, beta, q, tau, method=None):
    """Exact ``C_q(tau)`` of the q-exponential state on the discrete bath.

    Configurations beyond the Tsallis support carry zero weight.
    """
    if q == 1.0:
        b.check_truncation(beta)
    return exact_quantities(b, beta, q, tau, method).c_q


# ------------------------------------------------------ first-order mirrors


def discrete_lookups(b, beta, tau=0.0):
    """``i(k, l)`` and ``j(k, l)`` as mode sums, the discrete image of the master integrals."""
    w = b.w
    n = _nbar(beta, w)
    phase = b.k2 * np.exp(1j * w * tau)

    def i(k, l):
        return complex(np.sum(phase * n**k * w**l))

    def j(k, l):
        return float(np.sum(n**k * w**l))

    return i, j


def discrete_cumulants(b, beta):
    w = b.w
    n = _nbar(beta, w)
    k1 = float(np.sum(w * n))
    k2 = float(np.sum(w**2 * n * (n + 1.0)))
    k3 = float(np.sum(w**3 * n * (n + 1.0) * (2.0 * n + 1.0)))
    return Cumulants(_log_z(beta, w), k1, k2, k3)


def first_order_quantities(b, beta, q, tau=0.0):
    """Same fields as :func:`exact_quantities`, from the first-order algebra."""
    eps = q - 1.0
    i, j = discrete_lookups(b, beta, tau)
    i_rev, _ = discrete_lookups(b, beta, -tau)
    numer = assemble_numerator(i, j, eps, beta)
    denom = assemble_denominator(j, eps, beta)
    rev = assemble_reverse(i_rev, j, eps, beta)
    fo = first_order(discrete_cumulants(b, beta), beta, q)
    return ExactResult(
        numer, denom, numer / denom, (numer.conjugate() + rev) / denom, fo.u, fo.s, fo.trace_rho_q
    )


def first_order_beta(b, beta, q):
    return beta_from_pieces(beta, q, first_order(discrete_cumulants(b, beta), beta, q))


def gamma_average_check(beta, q, energy_levels):
    """Per-level gamma average by quadrature against the q-exponential."""
    if not 1.0 < q <= 1.3:
        raise DomainError("gamma_average_check covers q in (1, 1.3]")
    d = GammaDist.from_tsallis(beta, q)
    quad = [gamma_laplace(d, float(e)) for e in energy_levels]
    closed = [q_exp(-beta * float(e), q) for e in energy_levels]
    return quad, closed
