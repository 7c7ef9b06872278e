"""Acceptance criteria as plain functions.

Each ``criterion_N`` returns a :class:`CriterionResult`. The test suite and
``ssbath selfcheck`` both run them from here, so a criterion has one
definition only.
"""

import math
import time
from dataclasses import dataclass

import numpy as np

from . import qme, stark, superstat, thermo
from .bath import BathParams, I_INDICES, J_INDICES, bose_mean, i_integral, j_integral, quad_i, quad_j
from .errors import ValidityError
from .oracle import DEFAULT_BATH, exact_quantities, first_order_quantities
from .specfun import hurwitz_zeta, polygamma


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f} s)"


def _timed(number, name, budget=None):
    def wrap(fn):
        def run():
            t0 = time.perf_counter()
            passed, detail = fn()
            dt = time.perf_counter() - t0
            if budget is not None:
                detail += f"; runtime {dt:.1f}/{budget:.0f} s"
                passed = passed and dt < budget
            return CriterionResult(number, name, bool(passed), detail, dt)

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def _rel(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.abs(np.asarray(b))))


# --------------------------------------------------------------- 1


@_timed(1, "special-function recurrences", budget=5.0)
def criterion_1(n_points=1000, seed=20240601):
    rng = np.random.default_rng(seed)
    z = rng.uniform(1.0, 100.0, n_points) + 1j * rng.uniform(-1e3, 1e3, n_points)
    z.real[z.real <= 1.0] = np.nextafter(1.0, 2.0)
    worst_rec = 0.0
    for s in (2, 3, 4):
        lhs = hurwitz_zeta(s, z) - hurwitz_zeta(s, z + 1.0)
        worst_rec = max(worst_rec, _rel(lhs, z ** (-s)))
    worst_pg = 0.0
    for m in (1, 2, 3):
        ref = (-1) ** (m + 1) * math.factorial(m) * hurwitz_zeta(m + 1, z)
        worst_pg = max(worst_pg, _rel(polygamma(m, z), ref))
    ok = worst_rec <= 1e-12 and worst_pg <= 1e-12
    return ok, f"recurrence {worst_rec:.2e}, polygamma identity {worst_pg:.2e} (tol 1e-12)"


# --------------------------------------------------------------- 2


@_timed(2, "closed forms vs quadrature", budget=60.0)
def criterion_2():
    worst_j = 0.0
    for b in (0.5, 1.0, 3.5, 15.0):
        for k, l in J_INDICES:
            worst_j = max(worst_j, abs(j_integral(k, l, b) - quad_j(k, l, b)) / abs(quad_j(k, l, b)))
    taus = np.linspace(0.0, 10.0, 101)
    worst_i = 0.0
    for b in (3.5, 15.0):
        p = BathParams(beta_tilde=b)
        for k, l in I_INDICES:
            closed = i_integral(k, l, taus, p)
            ref = np.array([quad_i(k, l, t, p) for t in taus])
            worst_i = max(worst_i, _rel(closed, ref))
    ok = worst_j <= 1e-10 and worst_i <= 1e-8
    return ok, f"J worst {worst_j:.2e} (tol 1e-10), I worst {worst_i:.2e} (tol 1e-8)"


# --------------------------------------------------------------- 3


@_timed(3, "gamma average equals q-exponential")
def criterion_3():
    worst = 0.0
    for q in (1.01, 1.05, 1.1, 1.2):
        for be in np.linspace(0.0, 5.0, 51):
            quad = superstat.ss_boltzmann_scalar(1.0, q, be)
            worst = max(worst, abs(quad - superstat.q_exp(-be, q)) / superstat.q_exp(-be, q))
    return worst <= 1e-8, f"worst relative gap {worst:.2e} (tol 1e-8)"


# --------------------------------------------------------------- 4

RESIDUAL_FIELDS = (("N", "numerator"), ("D", "denominator"), ("C(0)", "c_q"), ("U", "u"), ("S", "s"))


def residual_ratios(eps_pair=(0.1, 0.05), betas=(1.0, 3.5), bath=DEFAULT_BATH):
    """``|first - exact|`` at ``eps_pair[0]`` over the same at ``eps_pair[1]``."""
    out = {}
    for b in betas:
        res = []
        for eps in eps_pair:
            ex = exact_quantities(bath, b, 1.0 + eps)
            fo = first_order_quantities(bath, b, 1.0 + eps)
            res.append({k: abs(getattr(fo, f) - getattr(ex, f)) for k, f in RESIDUAL_FIELDS})
        for k, _ in RESIDUAL_FIELDS:
            out[(b, k)] = res[0][k] / res[1][k]
    return out


@_timed(4, "discrete-oracle residual scaling")
def criterion_4():
    ratios = residual_ratios()
    bad = {key: r for key, r in ratios.items() if not 3.5 <= r <= 4.5}
    text = ", ".join(f"b={b:g} {k} {r:.2f}" for (b, k), r in ratios.items())
    return not bad, f"ratios [{text}] (band [3.5, 4.5]); {len(bad)} outside"


# --------------------------------------------------------------- 5


@_timed(5, "q = 1 reductions")
def criterion_5():
    failures = []
    for b in (0.5, 1.0, 3.5, 15.0):
        p = BathParams(beta_tilde=b, q=1.0)
        if superstat.corr_d(p) != 1.0:
            failures.append(f"D at b={b}")
        for tau in np.linspace(-5.0, 10.0, 31):
            s = superstat.correlation(tau, p)
            ref = i_integral(1, 0, tau, p)
            if s.c_q != ref or s.c_eq != ref:
                failures.append(f"C at b={b}, tau={tau}")
        if thermo.renormalized_beta(b, 1.0) != b:
            failures.append(f"beta at b={b}")
    for y in (0.1, math.log(2.0), 1.0, 5.0, 20.0):
        for theta in (0.0, 0.5, 3.0):
            a = qme.AtomParams(y=y, gamma0=1.3, theta=theta, q=1.0)
            g1, g2 = qme.rates(a)
            n = bose_mean(1.0, y)
            if g1 != 0.5 * 1.3 * (n + 1.0) or g2 != 0.5 * 1.3 * n:
                failures.append(f"rates at y={y}")
            if abs(g2 / g1 - math.exp(-y)) > 1e-14 * math.exp(-y):
                failures.append(f"detailed balance at y={y}")
    t_grid = np.geomspace(0.05, 10.0, 40)
    for t, temp in thermo.temp_map(1.0, t_grid):
        if temp is None or abs(temp - t) > 1e-14 * t:
            failures.append(f"T map at {t}")
    detail = "all exact" if not failures else "; ".join(failures[:5])
    return not failures, detail


# --------------------------------------------------------------- 6

GATE_QS = (0.8, 0.9, 0.98, 0.99)


def gate_summary(q, grid):
    pts = thermo.su_plane(q, grid)
    flags = np.array([not p.physical for p in pts])
    # an up-set: once discarded at some beta_tilde, discarded at every larger one
    first = int(np.argmax(flags)) if flags.any() else len(flags)
    is_upset = bool(flags.any()) and bool(np.all(flags[first:]))
    return flags, is_upset


@_timed(6, "thermodynamic gate")
def criterion_6():
    grid = np.geomspace(0.1, 20.0, 400)
    pts = thermo.su_plane(1.0, grid)
    worst = max(abs(p.slope - p.beta_tilde) / p.beta_tilde for p in pts)
    legendre = worst <= 1e-6 and all(p.physical for p in pts)
    parts = [f"q=1 slope vs beta_tilde {worst:.1e} (tol 1e-6)"]
    ok = legendre
    for q in GATE_QS:
        flags, upset = gate_summary(q, grid)
        exists = bool(flags.any())
        ok = ok and exists and upset
        where = f"beta_tilde <= {grid[flags].max():.3g}" if exists else "none"
        parts.append(f"q={q}: discarded {where}, up-set {upset}")
    return ok, "; ".join(parts)


# --------------------------------------------------------------- 7


@_timed(7, "QME evolution", budget=5.0)
def criterion_7():
    p = qme.AtomParams(y=math.log(2.0), gamma0=1.0, theta=0.5, q=1.1, omega_a=3.0)
    g1, g2 = qme.rates(p)
    t_end = 20.0 / (g1 + g2)
    dt_max = min(qme.STEP_FRACTION / (g1 + g2), qme.STEP_FRACTION / p.omega_a)
    nsteps = math.ceil(t_end / dt_max)
    traj = qme.evolve(qme.DensityMatrix2(0.3, 0.7, 0.2 + 0.3j), p, t_end, t_end / nsteps)
    drift = float(np.max(np.abs(traj.rho_ee + traj.rho_gg - 1.0)))
    pos = min(traj.state(i).min_eigenvalue() for i in range(traj.t.size))
    steady = abs(traj.rho_ee[-1] - g2 / (g1 + g2))
    # order check on pure decay
    decay = qme.AtomParams(y=50.0, q=1.0, omega_a=1.0)
    errs = []
    for dt in (0.05, 0.025):
        tr = qme.evolve(qme.DensityMatrix2.excited(), decay, 2.0, dt, rate_pair=(0.5, 0.0))
        errs.append(abs(tr.rho_ee[-1] - math.exp(-2.0)))
    order = errs[0] / errs[1]
    ok = drift <= 1e-12 and pos >= -1e-10 and steady <= 1e-8 and 15.0 <= order <= 17.0
    return ok, (
        f"trace drift {drift:.1e}, min eigenvalue {pos:.3g}, steady gap {steady:.1e}, "
        f"dt-halving factor {order:.2f} (band [15, 17])"
    )


# --------------------------------------------------------------- 8

SUBWAVELENGTH = dict(volume_m3=(500e-9) ** 3, t_kelvin=300.0)


def splitting_norms(thetas=(1.0, 10.0, 100.0), q=1.2, n=300):
    ys = np.geomspace(stark.SCAN_WINDOW[0], stark.SCAN_WINDOW[1], n)
    gaps = [np.abs(stark.stark_curve(q, th, ys) - stark.stark_curve(1.0, th, ys)) for th in thetas]
    return ys, gaps


@_timed(8, "Stark shift qualitative structure", budget=120.0)
def criterion_8():
    theta = qme.cavity_theta_si(**SUBWAVELENGTH)
    roots = {q: stark.stark_roots(q, theta) for q in (0.8, 1.0, 1.2)}
    lo = stark.stark_f(stark.StarkParams(stark.SCAN_WINDOW[0], theta, 1.0))
    hi = stark.stark_f(stark.StarkParams(stark.SCAN_WINDOW[1], theta, 1.0))
    shape = lo < 0 < hi and len(roots[1.0]) == 1
    have_all = all(roots[q] for q in roots)
    order = have_all and roots[1.2][0] > roots[1.0][0] > roots[0.8][0]
    second = len(roots[0.8]) >= 2
    ys, gaps = splitting_norms()
    sup = [float(g.max()) for g in gaps]
    shrinking = sup[0] > sup[1] > sup[2]
    pointwise = int(np.sum((gaps[1] < gaps[0]) & (gaps[2] < gaps[1])))
    root_txt = ", ".join(f"q={q}: {[round(r, 4) for r in rs]}" for q, rs in roots.items())
    detail = (
        f"theta={theta:.3g}; F(0.1)={lo:.3g}, F(30)={hi:.3g}; roots {root_txt}; "
        f"sup splitting {sup[0]:.3g} > {sup[1]:.3g} > {sup[2]:.3g} "
        f"(pointwise shrinking at {pointwise}/{ys.size} y)"
    )
    return shape and order and second and shrinking, detail


# --------------------------------------------------------------- 9


def magnitude_ratio(beta_tilde, q):
    """``|C_q(0)| / |C_1(0)|`` at a common ``beta_tilde``."""
    p = BathParams(beta_tilde=beta_tilde, q=q)
    s = superstat.correlation(0.0, p)
    return abs(s.c_q) / abs(s.c_eq)


def matched_ratio(temperature, q):
    """Same ratio with both states at the physical temperature ``T``."""
    beta = 1.0 / temperature
    bt = thermo.beta_tilde_for(beta, q)
    cq = superstat.correlation(0.0, BathParams(beta_tilde=bt, q=q)).c_q
    c1 = i_integral(1, 0, 0.0, BathParams(beta_tilde=beta, q=1.0))
    return abs(cq) / abs(c1)


@_timed(9, "correlation suppression regime")
def criterion_9():
    cold = magnitude_ratio(15.0, 1.2)
    warm = magnitude_ratio(3.5, 1.2)
    part_a = cold < 1.0
    part_b = (1.0 - cold) > (1.0 - warm)
    temps = np.geomspace(0.1, 3.0, 60)
    scan = []
    for t in temps:
        try:
            scan.append(matched_ratio(t, 1.2))
        except ValidityError:
            scan.append(math.nan)
    scan = np.array(scan)
    finite = scan[np.isfinite(scan)]
    part_c = finite.size > 0 and float(finite.min()) < 0.5
    where = float(temps[np.nanargmin(scan)]) if finite.size else math.nan
    detail = (
        f"|Cq/C1| at b=15: {cold:.3f} (<1: {part_a}); at b=3.5: {warm:.3f} "
        f"(stronger suppression when colder: {part_b}); matched-T scan min {finite.min():.3f} "
        f"at T={where:.3g} (<0.5: {part_c})"
    )
    return part_a and part_b and part_c, detail


# --------------------------------------------------------------- 10


@_timed(10, "CLI determinism")
def criterion_10():
    import tempfile
    from pathlib import Path

    from .cli import main

    runs = {
        "correlate": ["correlate", "--q", "1.2", "--beta-tilde", "3.5", "--n-points", "41"],
        "stark": ["stark", "--q", "0.8", "--theta", "0.5", "--n", "40"],
    }
    same = {}
    with tempfile.TemporaryDirectory() as tmp:
        for name, argv in runs.items():
            blobs = []
            for rep in range(2):
                path = Path(tmp) / f"{name}{rep}.csv"
                code = main(argv + ["--output", str(path)])
                blobs.append((code, path.read_bytes()))
            same[name] = blobs[0] == blobs[1] and blobs[0][0] == 0
    return all(same.values()), ", ".join(f"{k} identical: {v}" for k, v in same.items())


CRITERIA = (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
)


def run_all(echo=print):
    results = []
    for crit in CRITERIA:
        res = crit()
        if echo is not None:
            echo(res.line())
        results.append(res)
    return results
