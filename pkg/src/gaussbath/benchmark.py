"""Benchmark of the compiled Volterra loop against the numpy fallback.

Run as ``python -m gaussbath.benchmark [--sizes 2000,8000,20000]``.  Both
backends integrate the same dressed kernel, so the table also reports the
sup-norm difference between their results as a consistency check.
"""

import argparse
import importlib
import time

import numpy as np


def _load_backends():
    backends = {}
    try:
        backends["compiled"] = importlib.import_module("gaussbath._volterra_cy")
    except ImportError:
        pass
    backends["python"] = importlib.import_module("gaussbath._volterra_py")
    return backends


def _sample_kernel(M, h):
    # dressed array kernel: narrow band at detuning 0.2, the shape that
    # dominates real workloads
    ts = h * np.arange(M + 1)
    from scipy.special import j0

    return 0.02**2 * np.exp(-1j * 0.2 * ts) * j0(2 * 0.05 * ts)


def run(sizes):
    backends = _load_backends()
    if "compiled" not in backends:
        print("compiled backend unavailable; timing the fallback only")
    print(f"{'M':>8}  " + "".join(f"{name:>12}  " for name in backends) + "sup|diff|")
    for M in sizes:
        h = 500.0 / M
        kernel = _sample_kernel(M, h)
        results = {}
        line = f"{M:>8}  "
        for name, mod in backends.items():
            t0 = time.perf_counter()
            results[name] = mod.heun_volterra(kernel, h)
            line += f"{time.perf_counter() - t0:>11.3f}s  "
        if len(results) == 2:
            diff = float(np.abs(results["compiled"] - results["python"]).max())
            line += f"{diff:.2e}"
        print(line)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="python -m gaussbath.benchmark")
    parser.add_argument("--sizes", default="2000,8000,20000",
                        help="comma-separated step counts")
    args = parser.parse_args(argv)
    run([int(s) for s in args.sizes.split(",")])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
