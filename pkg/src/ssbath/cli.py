"""Command-line front end writing deterministic CSV or JSON tables.

Subcommands: correlate, su-plane, temp-map, stark, qme, selfcheck.
Floats are written with 17 significant digits and LF line endings.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import qme, stark, superstat, thermo
from .bath import BathParams, i_integral
from .errors import ConfigurationError, ConvergenceError, DomainError, ValidityError

NUMERIC_ERRORS = (ValidityError, ConvergenceError, DomainError, OverflowError, ConfigurationError)
EXIT_NUMERIC = 2


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return format(float(value), ".17g")


def _json_value(value):
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    v = float(value)
    return v if math.isfinite(v) else None


def write_table(columns, rows, output, fmt):
    if fmt == "json":
        payload = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        text = json.dumps(payload, indent=1) + "\n"
    else:
        lines = [",".join(columns)] + [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"
    if output == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _ratio(a, b):
    if a == 0.0 and b == 0.0:
        return 1.0
    if b == 0.0:
        return math.copysign(math.inf, a)
    return a / b


def _grid_error(what, exc):
    print(f"ssbath: {what}: {exc}", file=sys.stderr)


# ------------------------------------------------------------ commands


def cmd_correlate(args):
    taus = np.linspace(0.0, args.tau_max, args.n_points)
    cols = ["tau", "re_cq", "im_cq", "re_ceq", "im_ceq", "re_ratio", "im_ratio"]
    rows = []
    failed = 0
    try:
        p = BathParams(alpha=args.alpha, omega_c=args.omega_c, beta_tilde=args.beta_tilde, q=args.q)
    except DomainError as exc:
        _grid_error("invalid bath parameters", exc)
        return EXIT_NUMERIC
    for tau in taus:
        try:
            s = superstat.correlation(tau, p)
        except NUMERIC_ERRORS as exc:
            failed += 1
            ceq = i_integral(1, 0, tau, p)
            rows.append([tau, None, None, ceq.real, ceq.imag, None, None])
            last = exc
            continue
        rows.append(
            [
                tau,
                s.c_q.real,
                s.c_q.imag,
                s.c_eq.real,
                s.c_eq.imag,
                _ratio(s.c_q.real, s.c_eq.real),
                _ratio(s.c_q.imag, s.c_eq.imag),
            ]
        )
    write_table(cols, rows, args.output, args.format)
    if failed:
        _grid_error(f"{failed} of {len(taus)} rows outside expansion validity", last)
        return EXIT_NUMERIC
    return 0


def _t_grid(args):
    if not (0 < args.t_tilde_min < args.t_tilde_max):
        raise DomainError("need 0 < t-tilde-min < t-tilde-max")
    return np.geomspace(args.t_tilde_min, args.t_tilde_max, args.n)


def cmd_su_plane(args):
    t = _t_grid(args)
    # coldest first so beta_tilde ascends
    pts = thermo.su_plane(args.q, 1.0 / t[::-1])[::-1]
    cols = ["t_tilde", "beta_tilde", "u", "s", "trace_rho_q", "slope", "t_physical", "physical"]
    rows = []
    for tt, pt in zip(t, pts):
        t_phys = 1.0 / pt.beta_physical if pt.physical else None
        rows.append([tt, pt.beta_tilde, pt.u, pt.s, pt.trace_rho_q, pt.slope, t_phys, pt.physical])
    write_table(cols, rows, args.output, args.format)
    return 0


def cmd_temp_map(args):
    t = _t_grid(args)
    cols = ["q", "t_tilde", "t_physical", "physical"]
    rows = []
    for q in args.q_list:
        for tt, tp in thermo.temp_map(q, t):
            rows.append([q, tt, tp, tp is not None])
    write_table(cols, rows, args.output, args.format)
    return 0


def _theta(args):
    if args.volume is not None or args.t_tilde is not None:
        if args.volume is None or args.t_tilde is None:
            raise ConfigurationError("--volume and --t-tilde go together")
        return qme.cavity_theta(args.volume, args.t_tilde)
    return args.theta


def cmd_stark(args):
    theta = _theta(args)
    ys = np.geomspace(args.y_min, args.y_max, args.n)
    cols = ["y", "f"]
    rows = []
    failed = 0
    for y in ys:
        try:
            rows.append([y, stark.stark_f(stark.StarkParams(float(y), theta, args.q))])
        except NUMERIC_ERRORS as exc:
            failed += 1
            last = exc
            rows.append([y, None])
    write_table(cols, rows, args.output, args.format)
    if failed:
        _grid_error(f"{failed} of {len(ys)} rows failed", last)
        return EXIT_NUMERIC
    return 0


INITIAL_STATES = {
    "excited": qme.DensityMatrix2(1.0, 0.0, 0j),
    "ground": qme.DensityMatrix2(0.0, 1.0, 0j),
    "plus": qme.DensityMatrix2(0.5, 0.5, 0.5 + 0j),
}


def cmd_qme(args):
    theta = _theta(args)
    p = qme.AtomParams(y=args.y, gamma0=args.gamma0, theta=theta, q=args.q, omega_a=args.omega_a)
    traj = qme.evolve(INITIAL_STATES[args.init], p, args.t_max, args.dt, shift=args.shift, stride=args.stride)
    cols = ["t", "rho_ee", "rho_gg", "re_rho_eg", "im_rho_eg"]
    rows = [
        [t, ee, gg, eg.real, eg.imag] for t, ee, gg, eg in zip(traj.t, traj.rho_ee, traj.rho_gg, traj.rho_eg)
    ]
    write_table(cols, rows, args.output, args.format)
    return 0


def cmd_selfcheck(args):
    from .acceptance import run_all

    results = run_all(echo=lambda line: print(line, flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", flush=True)
    return 0 if not failed else 1


# ------------------------------------------------------------ parser


def _q_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _positive_int(text):
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError("need at least 2 points")
    return v


def _add_output(sp):
    sp.add_argument("--output", default="-", help="file path, '-' for stdout (default)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_theta(sp):
    sp.add_argument("--theta", type=float, default=0.0, help="cavity parameter (default 0)")
    sp.add_argument("--volume", type=float, default=None, help="cavity volume, natural units")
    sp.add_argument("--t-tilde", type=float, default=None, help="temperature paired with --volume")


def build_parser():
    parser = argparse.ArgumentParser(prog="ssbath", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("correlate", help="bath correlation function over a lag grid", allow_abbrev=False)
    sp.add_argument("--q", type=float, default=1.2)
    sp.add_argument("--beta-tilde", type=float, default=3.5)
    sp.add_argument("--omega-c", type=float, default=1.0)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--tau-max", type=float, default=10.0)
    sp.add_argument("--n-points", type=_positive_int, default=101)
    _add_output(sp)
    sp.set_defaults(func=cmd_correlate)

    sp = sub.add_parser("su-plane", help="entropy-energy curve with the physicality gate", allow_abbrev=False)
    sp.add_argument("--q", type=float, default=0.9)
    sp.add_argument("--t-tilde-min", type=float, default=0.05)
    sp.add_argument("--t-tilde-max", type=float, default=10.0)
    sp.add_argument("--n", type=_positive_int, default=200)
    _add_output(sp)
    sp.set_defaults(func=cmd_su_plane)

    sp = sub.add_parser("temp-map", help="physical temperature against the parameter temperature", allow_abbrev=False)
    sp.add_argument("--q-list", type=_q_list, default=[0.8, 0.9, 0.98, 0.99, 1.0, 1.1, 1.2])
    sp.add_argument("--t-tilde-min", type=float, default=0.05)
    sp.add_argument("--t-tilde-max", type=float, default=10.0)
    sp.add_argument("--n", type=_positive_int, default=200)
    _add_output(sp)
    sp.set_defaults(func=cmd_temp_map)

    sp = sub.add_parser("stark", help="thermal Stark function over y", allow_abbrev=False)
    sp.add_argument("--q", type=float, default=1.0)
    _add_theta(sp)
    sp.add_argument("--y-min", type=float, default=0.1)
    sp.add_argument("--y-max", type=float, default=30.0)
    sp.add_argument("--n", type=_positive_int, default=300)
    _add_output(sp)
    sp.set_defaults(func=cmd_stark)

    sp = sub.add_parser("qme", help="two-level atom trajectory", allow_abbrev=False)
    sp.add_argument("--q", type=float, default=1.0)
    sp.add_argument("--y", type=float, default=1.0)
    _add_theta(sp)
    sp.add_argument("--gamma0", type=float, default=1.0)
    sp.add_argument("--omega-a", type=float, default=1.0)
    sp.add_argument("--shift", type=float, default=0.0, help="extra frequency shift of the coherence")
    sp.add_argument("--t-max", type=float, default=10.0)
    sp.add_argument("--dt", type=float, default=0.01)
    sp.add_argument("--stride", type=int, default=10)
    sp.add_argument("--init", choices=sorted(INITIAL_STATES), default="excited")
    _add_output(sp)
    sp.set_defaults(func=cmd_qme)

    sp = sub.add_parser("selfcheck", help="run the acceptance criteria", allow_abbrev=False)
    sp.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NUMERIC_ERRORS as exc:
        _grid_error(args.command, exc)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
