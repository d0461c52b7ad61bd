"""Compare the compiled kernels against the pure-numpy fallback.

Two views:
  * microkernels: both modules imported side by side, timed on fixed inputs;
  * end-to-end: a seeded symbol-computation workload run in a subprocess per
    backend (selection happens at import, so separate processes keep it fair).

Usage: python benchmarks/bench_backends.py [--trials N]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from schubertcells import _kernels_py as kpy

try:
    from schubertcells import _kernels_c as kc
except ImportError:
    kc = None

WORKLOAD = r"""
import numpy as np
import schubertcells as sc

rng = np.random.default_rng(7)
H = sc.Field.QUATERNION
trials = {trials}
for t in range(trials):
    n = int(rng.integers(1, 5))
    m = int(rng.integers(n, 8))
    pool = sc.enumerate_elementary(n, m)
    sigma = pool[int(rng.integers(len(pool)))]
    u = sc.sample_V_sigma(H, sigma, rng)
    x = sc.span(u)
    assert sc.schubert_symbol_subspace(x) == sigma
    rep = sc.canonical_representative(x)
    assert rep.frobenius_distance(u) < 1e-9
sig = sc.FlagSignature((1, 3), 5)
pool = list(sc.enumerate_general(sig))
for t in range(trials // 2):
    target = pool[int(rng.integers(len(pool)))]
    flag = sc.sample_flag_cell(H, target, rng)
    assert sc.schubert_symbol_flag(flag) == target
print(sc.BACKEND)
"""


def bench_micro(label, kernels, reps=2000):
    rng = np.random.default_rng(0)
    a = rng.standard_normal((8, 5, 4))
    b = rng.standard_normal((5, 3, 4))
    rows = {}
    start = time.perf_counter()
    for _ in range(reps):
        kernels.compose(a, b)
    rows["compose 8x5 . 5x3"] = time.perf_counter() - start
    start = time.perf_counter()
    for _ in range(reps):
        kernels.gram(a, a)
    rows["gram 8x5"] = time.perf_counter() - start
    start = time.perf_counter()
    for _ in range(reps):
        kernels.mgs(a, 1e-9)
    rows["mgs 8x5"] = time.perf_counter() - start
    print(f"\n{label}:")
    for name, secs in rows.items():
        print(f"  {name:<20} {1e6 * secs / reps:9.1f} us/call")
    return rows


def bench_end_to_end(backend, trials):
    env = dict(os.environ, SCHUBERT_BACKEND=backend)
    code = WORKLOAD.format(trials=trials)
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - start
    if proc.returncode != 0:
        raise RuntimeError(f"workload failed under {backend}:\n{proc.stderr}")
    used = proc.stdout.strip().splitlines()[-1]
    print(f"  backend={backend:<7} ({used:<6}) {elapsed:7.2f} s")
    return elapsed


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=300,
                        help="roundtrip count for the end-to-end workload")
    args = parser.parse_args()

    micro_py = bench_micro("numpy fallback", kpy)
    if kc is None:
        print("\ncompiled backend not built; skipping comparison")
        return
    micro_c = bench_micro("compiled", kc)
    print("\nmicrokernel speedups (numpy / compiled):")
    for name in micro_py:
        print(f"  {name:<20} {micro_py[name] / micro_c[name]:6.1f}x")

    print("\nend-to-end symbol workload (subprocess per backend, "
          f"{args.trials} roundtrips):")
    t_py = bench_end_to_end("py", args.trials)
    t_c = bench_end_to_end("c", args.trials)
    print(f"  speedup: {t_py / t_c:.1f}x")


if __name__ == "__main__":
    main()
