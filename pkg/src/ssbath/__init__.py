"""Superstatistical corrections for bosonic baths, Tsallis thermodynamics and a damped two-level atom."""

from ._accel import backend
from .bath import BathParams, bose_mean, bose_moment, i_integral, j_integral, quad_i, quad_j, spectral_density
from .errors import ConfigurationError, ConvergenceError, DomainError, ValidityError
from .qme import AtomParams, DensityMatrix2, cavity_theta, d_tv, evolve, rates, steady_state
from .specfun import hurwitz_zeta, polygamma, riemann_zeta
from .stark import StarkParams, critical_y, pv_integrate, stark_f, stark_roots
from .superstat import (
    CorrelationSample,
    GammaDist,
    corr_d,
    corr_m,
    corr_n,
    correlation,
    gamma_pdf,
    q_exp,
    q_from_sigma,
    ss_boltzmann_scalar,
)
from .thermo import (
    ThermoPoint,
    internal_energy,
    renormalized_beta,
    su_plane,
    temp_map,
    trace_rho_q,
    tsallis_entropy,
)

__version__ = "0.1.0"
