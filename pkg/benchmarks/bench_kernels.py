"""Benchmark the compiled kernels against the pure NumPy fallback.

Times the four hot kernels over realistic problem sizes (basis construction,
coefficient quadrature, and contour evaluation all reduce to these calls) and
prints a table with the speedup of the compiled backend.  Run from the
repository root::

    python benchmarks/bench_kernels.py [--repeat 7]

If the compiled extension is unavailable the script still runs and reports
fallback timings only.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from ohpade._kernels import _fallback

try:
    from ohpade._kernels import _core
except ImportError:
    _core = None


def _measure(fn, args, repeat: int) -> float:
    """Best-of-repeat wall time in seconds for one call."""
    timer = timeit.Timer(lambda: fn(*args))
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def _cases(rng):
    n_deg, n_nodes, n_targets = 60, 4096, 512
    alpha = rng.standard_normal(n_deg + 1) * 0.01
    sqrt_beta = 0.5 + rng.random(n_deg + 2)
    x = rng.uniform(-1.0, 1.0, n_nodes)
    z_big = np.exp(2j * np.pi * rng.random(n_nodes))
    weights = rng.random(n_nodes) / n_nodes
    coeffs = weights * rng.standard_normal(n_nodes)
    targets = 1.5 * np.exp(2j * np.pi * rng.random(n_targets))
    table = _fallback.recurrence_table(alpha, sqrt_beta, x)
    return [
        ("recurrence_table", (alpha, sqrt_beta, x)),
        ("power_table", (z_big, n_deg)),
        ("cauchy_sum", (coeffs.astype(complex), x.astype(complex), targets)),
        ("cauchy_table", (weights.astype(complex), table.astype(complex), x.astype(complex), targets)),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=7, help="timing repetitions (best is kept)")
    parser.add_argument("--seed", type=int, default=1234)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    cases = _cases(rng)

    print(f"{'kernel':<18} {'fallback':>12} {'compiled':>12} {'speedup':>9}")
    for name, call_args in cases:
        t_fb = _measure(getattr(_fallback, name), call_args, args.repeat)
        if _core is not None:
            got = getattr(_core, name)(*call_args)
            want = getattr(_fallback, name)(*call_args)
            err = float(np.max(np.abs(np.asarray(got) - np.asarray(want))))
            if err > 1e-10 * max(1.0, float(np.max(np.abs(want)))):
                raise SystemExit(f"{name}: backends disagree (max abs diff {err:.3e})")
            t_co = _measure(getattr(_core, name), call_args, args.repeat)
            print(f"{name:<18} {t_fb * 1e6:>10.1f}us {t_co * 1e6:>10.1f}us {t_fb / t_co:>8.2f}x")
        else:
            print(f"{name:<18} {t_fb * 1e6:>10.1f}us {'-':>12} {'-':>9}")
    if _core is None:
        print("\ncompiled extension not available; showing fallback only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
