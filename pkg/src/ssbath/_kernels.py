"""Hot numerical kernels, each in a numba and a pure-numpy flavour.

Public modules import the ``*_impl`` names, which point at the numba
version unless numba is missing or ``SSBATH_DISABLE_NUMBA`` is set. Both
flavours stay importable for tests and the benchmark.
"""

import math

import numpy as np

from ._accel import USE_NUMBA, njit

# Shift target for the Hurwitz recurrence and number of Euler-Maclaurin
# correction terms. With |w| >= 10 the k = 13 term is below 1e-25 relative.
HURWITZ_SHIFT = 10.0
EM_TERMS = 12

# B_{2k} / (2k)! for k = 1..EM_TERMS
_B2K = np.array(
    [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
        43867.0 / 798.0,
        -174611.0 / 330.0,
        854513.0 / 138.0,
        -236364091.0 / 2730.0,
    ]
)
EM_COEFFS = _B2K / np.array([math.factorial(2 * k) for k in range(1, EM_TERMS + 1)], dtype=float)


# ---------------------------------------------------------------- Hurwitz zeta


@njit
def _recip_nb(wr, wi):
    d = wr * wr + wi * wi
    return wr / d, -wi / d


@njit
def _cmul_nb(ar, ai, br, bi):
    return ar * br - ai * bi, ar * bi + ai * br


@njit
def _hurwitz_scalar_nb(s, zr, zi, coeffs, shift_to):
    # sum of the first terms explicitly until Re(z + n) >= shift_to
    nshift = 0
    if zr < shift_to:
        nshift = int(math.ceil(shift_to - zr))
    acc_r = 0.0
    acc_i = 0.0
    for n in range(nshift - 1, -1, -1):
        ir, ii = _recip_nb(zr + n, zi)
        pr, pi = ir, ii
        for _ in range(s - 1):
            pr, pi = _cmul_nb(pr, pi, ir, ii)
        acc_r += pr
        acc_i += pi
    wr = zr + nshift
    wi = zi
    ir, ii = _recip_nb(wr, wi)
    # ws = w^{-s}
    wsr, wsi = ir, ii
    for _ in range(s - 1):
        wsr, wsi = _cmul_nb(wsr, wsi, ir, ii)
    inv2r, inv2i = _cmul_nb(ir, ii, ir, ii)
    tr, ti = _cmul_nb(wsr, wsi, ir, ii)
    poch = float(s)
    tail_r = 0.0
    tail_i = 0.0
    terms_r = np.empty(coeffs.shape[0])
    terms_i = np.empty(coeffs.shape[0])
    for k in range(coeffs.shape[0]):
        terms_r[k] = coeffs[k] * poch * tr
        terms_i[k] = coeffs[k] * poch * ti
        poch *= (s + 2 * k + 1) * (s + 2 * k + 2)
        tr, ti = _cmul_nb(tr, ti, inv2r, inv2i)
    # smallest corrections first
    for k in range(coeffs.shape[0] - 1, -1, -1):
        tail_r += terms_r[k]
        tail_i += terms_i[k]
    # w^{1-s}/(s-1) + w^{-s}/2
    lead_r, lead_i = _cmul_nb(wsr, wsi, wr, wi)
    lead_r /= s - 1
    lead_i /= s - 1
    tail_r += 0.5 * wsr
    tail_i += 0.5 * wsi
    return (acc_r + tail_r) + lead_r, (acc_i + tail_i) + lead_i


@njit
def hurwitz_zeta_nb(s, z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for j in range(z.shape[0]):
        re, im = _hurwitz_scalar_nb(s, z[j].real, z[j].imag, EM_COEFFS, HURWITZ_SHIFT)
        out[j] = complex(re, im)
    return out


def _recip_np(w):
    d = w.real * w.real + w.imag * w.imag
    return (w.real - 1j * w.imag) / d


def _ipow_np(inv, s):
    p = inv.copy()
    for _ in range(s - 1):
        p = p * inv
    return p


def hurwitz_zeta_np(s, z):
    """Vectorised Hurwitz zeta for integer ``s >= 2`` and ``Re z > 0``."""
    z = np.asarray(z, dtype=np.complex128)
    nshift = np.where(z.real < HURWITZ_SHIFT, np.ceil(HURWITZ_SHIFT - z.real), 0.0).astype(np.int64)
    acc = np.zeros_like(z)
    for n in range(int(nshift.max(initial=0)) - 1, -1, -1):
        mask = n < nshift
        if mask.any():
            acc[mask] += _ipow_np(_recip_np(z[mask] + n), s)
    w = z + nshift
    inv = _recip_np(w)
    ws = _ipow_np(inv, s)
    inv2 = inv * inv
    t = ws * inv
    poch = float(s)
    terms = []
    for k in range(EM_TERMS):
        terms.append(EM_COEFFS[k] * poch * t)
        poch *= (s + 2 * k + 1) * (s + 2 * k + 2)
        t = t * inv2
    tail = np.zeros_like(z)
    for term in reversed(terms):
        tail += term
    tail += 0.5 * ws
    lead = ws * w / (s - 1)
    return (acc + tail) + lead


# ------------------------------------------------------------ two-level RK4


@njit
def rk4_two_level_nb(ee, gg, eg, g1, g2, omega, dt, nsteps, stride):
    nout = nsteps // stride + 1
    out_ee = np.empty(nout)
    out_gg = np.empty(nout)
    out_eg = np.empty(nout, dtype=np.complex128)
    out_ee[0] = ee
    out_gg[0] = gg
    out_eg[0] = eg
    lam = complex(-(g1 + g2), -omega)
    h = 0.5 * dt
    j = 1
    for step in range(1, nsteps + 1):
        k1 = -2.0 * g1 * ee + 2.0 * g2 * gg
        c1 = lam * eg
        e2 = ee + h * k1
        k2 = -2.0 * g1 * e2 + 2.0 * g2 * (gg - h * k1)
        c2 = lam * (eg + h * c1)
        e3 = ee + h * k2
        k3 = -2.0 * g1 * e3 + 2.0 * g2 * (gg - h * k2)
        c3 = lam * (eg + h * c2)
        e4 = ee + dt * k3
        k4 = -2.0 * g1 * e4 + 2.0 * g2 * (gg - dt * k3)
        c4 = lam * (eg + dt * c3)
        incr = dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        ee = ee + incr
        gg = gg - incr
        eg = eg + dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        if step % stride == 0:
            out_ee[j] = ee
            out_gg[j] = gg
            out_eg[j] = eg
            j += 1
    return out_ee, out_gg, out_eg


def rk4_two_level_np(ee, gg, eg, g1, g2, omega, dt, nsteps, stride):
    """Same integrator as the numba kernel; state packed in a small array."""
    gen = np.array([[-2.0 * g1, 2.0 * g2], [2.0 * g1, -2.0 * g2]])
    lam = complex(-(g1 + g2), -omega)
    pop = np.array([ee, gg], dtype=float)
    nout = nsteps // stride + 1
    out_pop = np.empty((nout, 2))
    out_eg = np.empty(nout, dtype=np.complex128)
    out_pop[0] = pop
    out_eg[0] = eg
    j = 1
    for step in range(1, nsteps + 1):
        k1 = gen @ pop
        k2 = gen @ (pop + 0.5 * dt * k1)
        k3 = gen @ (pop + 0.5 * dt * k2)
        k4 = gen @ (pop + dt * k3)
        incr = dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        pop = np.array([pop[0] + incr, pop[1] - incr])
        c1 = lam * eg
        c2 = lam * (eg + 0.5 * dt * c1)
        c3 = lam * (eg + 0.5 * dt * c2)
        c4 = lam * (eg + dt * c3)
        eg = eg + dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4)
        if step % stride == 0:
            out_pop[j] = pop
            out_eg[j] = eg
            j += 1
    return out_pop[:, 0].copy(), out_pop[:, 1].copy(), out_eg


# ------------------------------------------------------- Fock-space sums

# weight kinds
BOLTZMANN = 0
QPOWER = 1


@njit
def _weight_nb(kind, beta, eps, power, energy):
    if kind == 0:
        return math.exp(-beta * energy)
    base = 1.0 + eps * beta * energy
    if base <= 0.0:
        return 0.0
    return base ** power


@njit
def fock_sums_nb(omegas, n_max, kind, beta, eps, power):
    k = omegas.shape[0]
    nout = 3 + 3 * k
    acc = np.zeros(nout)
    comp = np.zeros(nout)
    vals = np.empty(nout)
    occ = np.zeros(k, dtype=np.int64)
    total = (n_max + 1) ** k
    for _ in range(total):
        e = 0.0
        for m in range(k):
            e += omegas[m] * occ[m]
        wgt = _weight_nb(kind, beta, eps, power, e)
        vals[0] = wgt
        vals[1] = wgt * e
        vals[2] = wgt * e * e
        for m in range(k):
            vals[3 + m] = wgt * occ[m]
            vals[3 + k + m] = wgt * e * occ[m]
            vals[3 + 2 * k + m] = wgt * e * e * occ[m]
        # Neumaier summation
        for i in range(nout):
            t = acc[i] + vals[i]
            if abs(acc[i]) >= abs(vals[i]):
                comp[i] += (acc[i] - t) + vals[i]
            else:
                comp[i] += (vals[i] - t) + acc[i]
            acc[i] = t
        # odometer increment, last mode fastest
        m = k - 1
        while m >= 0:
            occ[m] += 1
            if occ[m] <= n_max:
                break
            occ[m] = 0
            m -= 1
    return acc + comp


def fock_sums_np(omegas, n_max, kind, beta, eps, power):
    """Weighted sums over the truncated product Fock space.

    Returns ``[sum W, sum W E, sum W E^2, sum W n_j..., sum W E n_j...,
    sum W E^2 n_j...]`` with ``W`` the Boltzmann or q-power weight.
    """
    omegas = np.asarray(omegas, dtype=float)
    k = omegas.shape[0]
    n = np.arange(n_max + 1, dtype=float)
    if k == 1:
        rest_occ = [np.zeros(1)]
        rest_e = np.zeros(1)
    else:
        grids = np.meshgrid(*([n] * (k - 1)), indexing="ij")
        rest_occ = [g.ravel() for g in grids]
        rest_e = sum(w * g for w, g in zip(omegas[1:], rest_occ))
    out = np.zeros((n_max + 1, 3 + 3 * k))
    for i0 in range(n_max + 1):
        occ = [np.full(rest_e.shape, float(i0))] + (rest_occ if k > 1 else [])
        e = omegas[0] * i0 + rest_e
        if kind == BOLTZMANN:
            wgt = np.exp(-beta * e)
        else:
            base = 1.0 + eps * beta * e
            wgt = np.where(base > 0.0, np.abs(base) ** power, 0.0)
        out[i0, 0] = wgt.sum()
        out[i0, 1] = (wgt * e).sum()
        out[i0, 2] = (wgt * e * e).sum()
        for m in range(k):
            out[i0, 3 + m] = (wgt * occ[m]).sum()
            out[i0, 3 + k + m] = (wgt * e * occ[m]).sum()
            out[i0, 3 + 2 * k + m] = (wgt * e * e * occ[m]).sum()
    return np.array([math.fsum(col) for col in out.T])


if USE_NUMBA:
    hurwitz_zeta_impl = hurwitz_zeta_nb
    rk4_two_level_impl = rk4_two_level_nb
    fock_sums_impl = fock_sums_nb
else:
    hurwitz_zeta_impl = hurwitz_zeta_np
    rk4_two_level_impl = rk4_two_level_np
    fock_sums_impl = fock_sums_np
