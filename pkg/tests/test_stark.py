import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from ssbath.errors import DomainError, ValidityError
from ssbath.stark import (
    StarkParams,
    critical_y,
    pv_integrate,
    stark_f,
    stark_roots,
    stark_tail,
)


def _plain_integrand(x):
    return 0.0 if x <= 0 else x**3 / math.expm1(x) * (1 / (1 - x) + 1 / (1 + x))


def test_pv_elementary():
    assert pv_integrate(lambda x: 1 / (1 - x), 1.0, 2.0) == pytest.approx(0.0, abs=1e-11)
    assert pv_integrate(lambda x: 1 / (1 - x), 1.0, 3.0) == pytest.approx(-math.log(2), abs=1e-11)


def test_pv_domain():
    with pytest.raises(DomainError):
        pv_integrate(lambda x: x, 3.0, 2.0)


def test_pv_against_cauchy_weight():
    # quadpack's Cauchy-weight rule as an independent reference
    def g(x):
        return 0.0 if x <= 0 else x**3 / math.expm1(x)

    a = integrate.quad(lambda x: -g(x), 0, 41, weight="cauchy", wvar=1.0, epsabs=1e-13, limit=500)[0]
    b = integrate.quad(lambda x: g(x) / (1 + x), 0, 41, epsabs=1e-14, limit=500)[0]
    ours = pv_integrate(_plain_integrand, 1.0, 41.0, tail=True)
    assert ours == pytest.approx(a + b, abs=1e-10)
    assert ours == pytest.approx(-1.999407606863945, rel=1e-12)


@given(st.floats(0.3, 20.0))
def test_pv_window_independent(pole):
    def f(x):
        return 0.0 if x <= 0 else x**3 / math.expm1(x) / (pole - x)

    full = pv_integrate(f, pole, pole + 40.0, tail=True)
    # shifting the upper cut moves the pole window and integration pieces
    alt = pv_integrate(f, pole, pole + 55.0, tail=True)
    assert full == pytest.approx(alt, abs=1e-9 * max(1.0, abs(full)))


def test_sign_structure_at_q1():
    assert stark_f(StarkParams(0.5)) < 0
    assert stark_f(StarkParams(10.0)) > 0


def test_single_crossing_at_q1():
    roots = stark_roots(1.0, 0.0)
    assert len(roots) == 1
    assert 0.1 < roots[0] < 30
    assert critical_y(1.0, 0.0) == roots[0]
    assert stark_f(StarkParams(roots[0] * 0.9)) < 0 < stark_f(StarkParams(roots[0] * 1.1))


def test_root_ordering_with_q():
    theta = 1e-3
    lo, mid, hi = (stark_roots(q, theta) for q in (0.8, 1.0, 1.2))
    assert hi[0] > mid[0] > lo[0]
    # extra repulsion-to-attraction crossing for q < 1
    assert len(lo) == 2


def test_no_crossing_reports_none():
    assert stark_roots(1.0, 0.0, window=(5.0, 30.0), n_scan=20) == []
    assert critical_y(1.2, 0.0) is not None


@given(st.floats(0.2, 25.0), st.floats(0.0, 5.0))
def test_affine_in_q(y, theta):
    # affine in q once the cavity normalisation is divided out
    qs = (0.95, 1.0, 1.1)
    vals = []
    for q in qs:
        d = 1 + 0.5 * (q - 1) * theta * (theta + 2)
        vals.append(stark_f(StarkParams(y, theta, q)) * d)
    pred = vals[0] + (vals[1] - vals[0]) / (qs[1] - qs[0]) * (qs[2] - qs[0])
    assert pred == pytest.approx(vals[2], rel=1e-8, abs=1e-9)


def test_prefactor_scales():
    a = stark_f(StarkParams(3.0, 0.5, 1.1))
    assert stark_f(StarkParams(3.0, 0.5, 1.1, prefactor=2.5)) == pytest.approx(2.5 * a, rel=1e-15)
    with pytest.raises(DomainError):
        StarkParams(1.0, prefactor=0.0)


def test_tail_negligible():
    for y in (0.1, 3.0, 30.0):
        for q in (0.8, 1.2):
            assert abs(stark_tail(StarkParams(y, 2.0, q))) < 1e-10


def test_invalid_normalisation():
    with pytest.raises(ValidityError):
        stark_f(StarkParams(1.0, 3.0, 0.8))


def test_splitting_shrinks_with_theta():
    ys = np.geomspace(0.1, 30, 40)

    def split(theta):
        return max(abs(stark_f(StarkParams(y, theta, 1.2)) - stark_f(StarkParams(y, theta, 1.0))) for y in ys)

    s1, s10, s100 = split(1.0), split(10.0), split(100.0)
    assert s1 > s10 > s100
