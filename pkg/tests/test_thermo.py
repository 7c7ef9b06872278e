import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from ssbath.errors import DomainError, ValidityError
from ssbath.oracle import DEFAULT_BATH, exact_quantities, first_order_quantities
from ssbath.specfun import ZETA3
from ssbath.thermo import (
    beta_tilde_for,
    internal_energy,
    ohmic_cumulants,
    renormalized_beta,
    su_plane,
    temp_map,
    trace_rho_q,
    tsallis_entropy,
)


def _nbar(w):
    return 1.0 / math.expm1(w)


def test_equilibrium_energy():
    assert internal_energy(1.0, 1.0) == pytest.approx(2.404113806319188, rel=1e-14)
    assert internal_energy(2.0, 1.0) == pytest.approx(internal_energy(1.0, 1.0) / 8, rel=1e-14)


def test_equilibrium_entropy_against_quadrature():
    def integrand(w):
        n = _nbar(w)
        return w * ((1 + n) * math.log1p(n) - n * math.log(n))

    ref = integrate.quad(integrand, 0, 60, limit=200)[0]
    assert tsallis_entropy(1.0, 1.0) == pytest.approx(ref, rel=1e-12)
    assert tsallis_entropy(1.0, 1.0) == pytest.approx(3.606170709478781, rel=1e-14)


def test_entropy_free_energy_relation():
    log_z = -integrate.quad(lambda w: w * math.log(-math.expm1(-w)), 0, 60, limit=200)[0]
    assert log_z == pytest.approx(ZETA3, rel=1e-12)
    # S = beta (U - F) with F = -log Z / beta
    assert tsallis_entropy(1.0, 1.0) == pytest.approx(internal_energy(1.0, 1.0) + log_z, rel=1e-12)


def test_trace_values():
    assert trace_rho_q(1.0, 1.0) == 1.0
    assert trace_rho_q(1.0, 1.01) == pytest.approx(1 - 0.01 * 3 * ZETA3, rel=1e-14)
    assert trace_rho_q(1.0, 0.99) == pytest.approx(1.0360617070947878, rel=1e-14)
    with pytest.raises(ValidityError):
        trace_rho_q(0.5, 1.2)


def test_ohmic_cumulants_closed_forms():
    c = ohmic_cumulants(2.0)
    assert c.k1 == pytest.approx(2 * ZETA3 / 8)
    assert c.k2 == pytest.approx(6 * ZETA3 / 16)
    # third cumulant is -dk2/dbeta
    h = 1e-5
    deriv = (ohmic_cumulants(2.0 + h).k2 - ohmic_cumulants(2.0 - h).k2) / (2 * h)
    assert c.k3 == pytest.approx(-deriv, rel=1e-8)


@pytest.mark.parametrize("fn", [internal_energy, tsallis_entropy, trace_rho_q])
@given(b=st.floats(1.0, 20.0))
def test_affine_in_q(fn, b):
    qs = (0.97, 1.02, 1.08)
    v = [fn(b, q) for q in qs]
    pred = v[0] + (v[1] - v[0]) / (qs[1] - qs[0]) * (qs[2] - qs[0])
    assert pred == pytest.approx(v[2], rel=1e-12, abs=1e-12)


def test_renormalized_beta():
    assert renormalized_beta(1.7, 1.0) == 1.7
    b = 3.0
    slopes = [(renormalized_beta(b, 1 + e) - b) / e for e in (1e-3, 5e-4, 2.5e-4)]
    assert slopes[1] == pytest.approx(slopes[0], rel=2e-2)
    assert slopes[2] == pytest.approx(slopes[1], rel=1e-2)
    with pytest.raises(ValidityError):
        renormalized_beta(0.3, 1.2)


def test_beta_tilde_inverse():
    for q in (0.9, 1.1, 1.2):
        for b in (2.0, 8.0, 15.0):
            bt = beta_tilde_for(renormalized_beta(b, q), q)
            assert bt == pytest.approx(b, rel=1e-10)
    assert beta_tilde_for(2.5, 1.0) == 2.5


def test_legendre_identity_at_q1():
    grid = np.geomspace(0.1, 20.0, 120)
    for pt in su_plane(1.0, grid):
        assert pt.physical
        assert pt.slope == pytest.approx(pt.beta_tilde, rel=1e-6)
        assert pt.beta_physical == pt.beta_tilde
        assert pt.trace_rho_q == 1.0


def test_su_plane_validation():
    with pytest.raises(DomainError):
        su_plane(1.0, [1.0, 2.0])
    with pytest.raises(DomainError):
        su_plane(1.0, [1.0, 3.0, 2.0])


def _boundary(q, grid):
    pts = su_plane(q, grid)
    bad = [p.beta_tilde for p in pts if not p.physical]
    return max(bad) if bad else None


def test_gate_discards_hot_points_for_q_below_one():
    grid = np.geomspace(0.1, 20.0, 300)
    bounds = {q: _boundary(q, grid) for q in (0.8, 0.9, 0.98, 0.99)}
    assert all(v is not None for v in bounds.values())
    # stronger fluctuations discard more of the hot end
    assert bounds[0.8] > bounds[0.9] > bounds[0.98] > bounds[0.99]
    pts = su_plane(0.9, grid)
    flags = [p.physical for p in pts]
    # gated region is contiguous from the hottest point
    first_ok = flags.index(True)
    assert not any(flags[:first_ok]) and all(flags[first_ok:])


def test_gate_slope_sign_at_boundary():
    grid = np.geomspace(0.1, 20.0, 300)
    pts = su_plane(0.8, grid)
    kept = [p for p in pts if p.physical]
    assert all(p.slope > 0 for p in kept)
    assert all(p.beta_physical > 0 for p in kept)


def test_temp_map():
    t = np.geomspace(0.05, 10.0, 50)
    for tt, tp in temp_map(1.0, t):
        assert tp == tt
    mapped = temp_map(0.98, t)
    assert mapped[-1][1] is None
    assert mapped[0][1] is not None
    phys = [tp for _, tp in mapped if tp is not None]
    assert np.all(np.diff(phys) > 0)
    with pytest.raises(DomainError):
        temp_map(1.0, [0.0, 1.0, 2.0])


def test_temp_map_preserves_input_order():
    t = [2.0, 0.1, 0.5, 1.0]
    assert [tt for tt, _ in temp_map(0.99, t)] == t


@pytest.mark.parametrize("b", [1.0, 3.5])
def test_first_order_matches_discrete_oracle(b):
    # residual shrinks roughly quadratically
    res = []
    for eps in (0.02, 0.01):
        ex = exact_quantities(DEFAULT_BATH, b, 1 + eps)
        fo = first_order_quantities(DEFAULT_BATH, b, 1 + eps)
        res.append((abs(fo.u - ex.u), abs(fo.s - ex.s), abs(fo.trace_rho_q - ex.trace_rho_q)))
    for big, small in zip(*res):
        assert 3.6 < big / small < 4.5


def test_discrete_q1_exact():
    ex = exact_quantities(DEFAULT_BATH, 2.0, 1.0)
    fo = first_order_quantities(DEFAULT_BATH, 2.0, 1.0)
    assert fo.u == pytest.approx(ex.u, rel=1e-14)
    assert fo.s == pytest.approx(ex.s, rel=1e-14)
    assert ex.trace_rho_q == pytest.approx(1.0, rel=1e-14)
