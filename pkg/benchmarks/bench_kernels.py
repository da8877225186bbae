"""Benchmark the compiled quadrature kernels against the pure-numpy fallback.

The kernel backend is chosen at import time from the CAVITY1D_DISABLE_NUMBA
environment variable, so each backend runs in its own subprocess and reports
the wall time of a coefficient sweep.

Usage: python3 benchmarks/bench_kernels.py [--points N] [--repeats R]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOAD = """
import json, sys, time
import numpy as np
from cavity1d import CavityConfig, LorentzianMirror, coefficients_partial

points, repeats = int(sys.argv[1]), int(sys.argv[2])
cutoffs = np.geomspace(1.0, 100.0, points)
cfgs = [CavityConfig(1.0, LorentzianMirror(w), LorentzianMirror(w))
        for w in cutoffs]
coefficients_partial(cfgs[0])  # warm-up / JIT compile
best = min(
    (lambda t0: (sum(coefficients_partial(c).mu_sum for c in cfgs),
                 time.perf_counter() - t0))(time.perf_counter())[1]
    for _ in range(repeats))
print(json.dumps({"seconds": best,
                  "per_point_ms": 1e3 * best / points}))
"""


def run(disable_numba, points, repeats):
    env = dict(os.environ)
    if disable_numba:
        env["CAVITY1D_DISABLE_NUMBA"] = "1"
    else:
        env.pop("CAVITY1D_DISABLE_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(points), str(repeats)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=40,
                    help="cutoff values per sweep")
    ap.add_argument("--repeats", type=int, default=3,
                    help="repeats; best time is reported")
    args = ap.parse_args()

    numba = run(False, args.points, args.repeats)
    numpy_only = run(True, args.points, args.repeats)
    speedup = numpy_only["seconds"] / numba["seconds"]
    print(f"{'backend':<14}{'sweep [s]':>12}{'per point [ms]':>18}")
    print(f"{'numba':<14}{numba['seconds']:>12.4f}"
          f"{numba['per_point_ms']:>18.3f}")
    print(f"{'numpy':<14}{numpy_only['seconds']:>12.4f}"
          f"{numpy_only['per_point_ms']:>18.3f}")
    print(f"speedup (numba vs numpy): {speedup:.2f}x")


if __name__ == "__main__":
    main()
