"""Time the numba kernels against their numpy fallbacks.

Run with ``python3 benchmarks/bench_kernels.py``. Each kernel is called once
to trigger compilation, then timed over several repeats; the table reports
the best wall time per call and the largest disagreement between backends.
"""

import argparse
import timeit

import numpy as np

from ssbath import _kernels as k
from ssbath._accel import HAVE_NUMBA


def _cases(size):
    rng = np.random.default_rng(7)
    z = rng.uniform(0.2, 6.0, size) + 1j * rng.uniform(-40.0, 40.0, size)
    omegas = np.array([0.7, 1.0, 1.9])
    return {
        "hurwitz_zeta": (
            lambda: k.hurwitz_zeta_nb(4, z),
            lambda: k.hurwitz_zeta_np(4, z),
        ),
        "rk4_two_level": (
            lambda: k.rk4_two_level_nb(1.0, 0.0, 0.5 + 0j, 0.6, 0.4, 1.0, 1e-3, 20000, 100),
            lambda: k.rk4_two_level_np(1.0, 0.0, 0.5 + 0j, 0.6, 0.4, 1.0, 1e-3, 20000, 100),
        ),
        "fock_sums": (
            lambda: k.fock_sums_nb(omegas, 50, k.BOLTZMANN, 1.0, 0.0, 1.0),
            lambda: k.fock_sums_np(omegas, 50, k.BOLTZMANN, 1.0, 0.0, 1.0),
        ),
    }


def _max_gap(a, b):
    a = a if isinstance(a, tuple) else (a,)
    b = b if isinstance(b, tuple) else (b,)
    return max(float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) for x, y in zip(a, b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=2000, help="points per Hurwitz call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy column is meaningful")
    print(f"{'kernel':<16}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>10}{'max gap':>12}")
    for name, (fast, slow) in _cases(args.size).items():
        gap = _max_gap(fast(), slow())
        t_fast = min(timeit.repeat(fast, number=1, repeat=args.repeat)) * 1e3
        t_slow = min(timeit.repeat(slow, number=1, repeat=args.repeat)) * 1e3
        print(f"{name:<16}{t_fast:>12.3f}{t_slow:>12.3f}{t_slow / t_fast:>10.1f}{gap:>12.2e}")


if __name__ == "__main__":
    main()
