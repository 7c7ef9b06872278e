import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssbath.bath import (
    I_INDICES,
    J_INDICES,
    BathParams,
    bose_mean,
    bose_moment,
    i_integral,
    j_integral,
    lambda_arg,
    quad_i,
    quad_j,
    spectral_density,
)
from ssbath.errors import ConvergenceError, DomainError

UNIT = BathParams()


def test_bose_mean_values():
    assert bose_mean(1.0, math.log(2.0)) == pytest.approx(1.0, rel=1e-15)
    assert bose_mean(1.0, 1.0) == pytest.approx(0.5819767068693265, rel=1e-15)
    assert bose_mean(1.0, 800.0) == 0.0 or bose_mean(1.0, 800.0) < 1e-300


def test_bose_mean_small_argument_series():
    x = 1e-9
    assert bose_mean(1.0, x) == pytest.approx(1 / x - 0.5 + x / 12, rel=1e-15)


def test_bose_mean_vectorised():
    out = bose_mean(2.0, np.array([0.1, 1.0, 5.0]))
    assert out.shape == (3,)
    assert out[1] == pytest.approx(1 / math.expm1(2.0))


@pytest.mark.parametrize("bw", [0.0, -1.0])
def test_bose_mean_domain(bw):
    with pytest.raises(DomainError):
        bose_mean(1.0, bw)


def test_bose_moment_identities():
    ln2 = math.log(2.0)
    assert bose_moment(2, 1.0, ln2) == pytest.approx(3.0)
    assert bose_moment(3, 1.0, ln2) == pytest.approx(13.0)
    # truncated geometric sum with 200 terms
    assert bose_moment(2, 1.0, 1.0) == pytest.approx(1.2593704815462583, rel=1e-14)
    with pytest.raises(DomainError):
        bose_moment(4, 1.0, 1.0)


@given(st.integers(1, 3), st.floats(0.05, 20.0))
def test_bose_moment_matches_series(k, x):
    n = np.arange(4000, dtype=float)
    w = np.exp(-x * n)
    ref = math.fsum(n**k * w) / math.fsum(w)
    assert bose_moment(k, 1.0, x) == pytest.approx(ref, rel=1e-11)


def test_spectral_density():
    assert spectral_density(0.0, UNIT) == 0.0
    assert spectral_density(1.0, UNIT) == pytest.approx(2 * math.exp(-1))
    p = BathParams(omega_c=2.5)
    w = np.linspace(0.1, 10, 2001)
    assert w[np.argmax(spectral_density(w, p))] == pytest.approx(2.5, abs=5e-3)
    with pytest.raises(DomainError):
        spectral_density(-0.1, UNIT)


def test_params_validation():
    with pytest.raises(DomainError):
        BathParams(q=1.5)
    with pytest.raises(DomainError):
        BathParams(alpha=0.0)
    with pytest.raises(DomainError):
        BathParams(beta_tilde=float("inf"))
    assert BathParams(q=1.1).with_q(0.9).q == 0.9


def test_lambda_arg_real_part():
    z = lambda_arg(np.array([-3.0, 0.0, 4.0]), BathParams(beta_tilde=2.0, omega_c=0.5))
    assert np.allclose(z.real, 2.0)
    assert z[0].imag == -z[2].imag * 3 / 4


def test_j_values():
    assert j_integral(1, 1, 1.0) == pytest.approx(2.4041138063191885, rel=1e-14)
    assert j_integral(1, 2, 1.0) == pytest.approx(6.493939402266829, rel=1e-14)
    assert j_integral(2, 2, 1.0) == pytest.approx(0.7184020, rel=1e-7)
    with pytest.raises(DomainError):
        j_integral(2, 1, 1.0)


@pytest.mark.parametrize("k, l", J_INDICES)
@pytest.mark.parametrize("b", [0.5, 1.0, 3.5, 15.0])
def test_j_against_quadrature(k, l, b):
    assert j_integral(k, l, b) == pytest.approx(quad_j(k, l, b), rel=1e-10)


@pytest.mark.parametrize("k, l", J_INDICES)
@given(b=st.floats(0.05, 50.0))
def test_j_scaling_law(k, l, b):
    assert j_integral(k, l, b) == pytest.approx(b ** (-(l + 2)) * j_integral(k, l, 1.0), rel=1e-13)


def test_quad_j_divergent_inputs():
    with pytest.raises(ConvergenceError):
        quad_j(0, 1, 1.0)
    with pytest.raises(ConvergenceError):
        quad_j(3, 0, 1.0)


def test_i_values():
    assert i_integral(1, 0, 0.0, UNIT) == pytest.approx(1.289868133696453, rel=1e-14)
    assert i_integral(0, 0, 0.0, UNIT) == pytest.approx(2.0, rel=1e-15)
    # oscillatory quadrature reference
    assert i_integral(2, 1, 1.0, UNIT) == pytest.approx(0.7929064121526634 + 0.37321690648114025j, rel=1e-12)


def test_i_unsupported():
    with pytest.raises(DomainError):
        i_integral(2, 0, 0.0, UNIT)
    with pytest.raises(DomainError):
        i_integral(1, 0, float("nan"), UNIT)


@pytest.mark.parametrize("k, l", I_INDICES)
@pytest.mark.parametrize("tau", [0.0, 0.37, 2.0, 9.5])
@pytest.mark.parametrize("p", [BathParams(beta_tilde=3.5), BathParams(alpha=0.3, omega_c=2.0, beta_tilde=1.2)])
def test_i_against_quadrature(k, l, tau, p):
    assert i_integral(k, l, tau, p) == pytest.approx(quad_i(k, l, tau, p), rel=1e-9)


@pytest.mark.parametrize("k, l", I_INDICES)
@given(tau=st.floats(-50.0, 50.0), b=st.floats(0.2, 30.0))
def test_i_conjugation(k, l, tau, b):
    p = BathParams(beta_tilde=b)
    a = i_integral(k, l, -tau, p)
    c = i_integral(k, l, tau, p).conjugate()
    assert abs(a - c) <= 1e-14 * abs(c)


def test_i_negative_tau_matches_quadrature():
    p = BathParams(beta_tilde=2.0)
    assert i_integral(2, 1, -1.0, p) == pytest.approx(quad_i(2, 1, -1.0, p), rel=1e-9)


def test_i_array_input():
    taus = np.linspace(0, 3, 7)
    arr = i_integral(1, 1, taus, UNIT)
    assert arr.shape == taus.shape
    assert arr[3] == i_integral(1, 1, taus[3], UNIT)


def test_quad_i_decays():
    mags = [abs(quad_i(1, 0, t, UNIT)) for t in (0.0, 2.0, 20.0, 200.0)]
    assert mags == sorted(mags, reverse=True)
    assert mags[-1] < 0.02 * mags[0]


def test_quad_i_reference_value():
    assert quad_i(1, 0, 0.0, UNIT).real == pytest.approx(2 * (math.pi**2 / 6 - 1), rel=1e-10)
