"""Benchmark the Jost marching kernels: numba jit vs vectorized numpy.

The numpy fallback is selected by the environment flag DNLS_IST_NO_NUMBA=1;
this script runs itself in a subprocess with the flag set so both paths are
timed in one invocation, and checks that the results agree.

Usage: python benchmarks/bench_jost.py [n_zeta] [n_grid]
"""

import json
import os
import subprocess
import sys
import time

import numpy as np


def run_batch(n_zeta, n_grid):
    from dnls_ist._kernels import using_numba
    from dnls_ist.jost import JostEngine
    from dnls_ist.potentials import Potential

    q = Potential.sech(0.3, n=n_grid)
    eng = JostEngine(q)
    rng = np.random.default_rng(0)
    # continuous-spectrum workload: zeta on the real and imaginary axes
    half = n_zeta // 2
    zetas = np.concatenate([rng.uniform(0.2, 2.0, n_zeta - half) + 0j,
                            1j * rng.uniform(0.2, 2.0, half)])
    eng.coefficients(zetas[:2])  # warm up (jit compile / table build)
    t0 = time.perf_counter()
    a, abrk, b, bbrk = eng.coefficients(zetas)
    dt = time.perf_counter() - t0
    return using_numba(), dt, a


def main():
    n_zeta = int(sys.argv[1]) if len(sys.argv) > 1 else 256
    n_grid = int(sys.argv[2]) if len(sys.argv) > 2 else 8001

    if os.environ.get("_BENCH_CHILD") == "1":
        used, dt, a = run_batch(n_zeta, n_grid)
        print(json.dumps({"numba": used, "seconds": dt,
                          "a": [[v.real, v.imag] for v in a[:8]]}))
        return

    used, dt, a = run_batch(n_zeta, n_grid)
    label = "numba" if used else "numpy"
    print(f"{label:6s}: {n_zeta} zetas x {n_grid - 1} intervals "
          f"-> {dt:.3f} s ({1e6 * dt / n_zeta:.0f} us/zeta)")

    env = dict(os.environ, _BENCH_CHILD="1",
               DNLS_IST_NO_NUMBA="0" if not used else "1")
    out = subprocess.run([sys.executable, __file__, str(n_zeta), str(n_grid)],
                         env=env, capture_output=True, text=True, check=True)
    other = json.loads(out.stdout.strip().splitlines()[-1])
    label2 = "numba" if other["numba"] else "numpy"
    dt2 = other["seconds"]
    print(f"{label2:6s}: {n_zeta} zetas x {n_grid - 1} intervals "
          f"-> {dt2:.3f} s ({1e6 * dt2 / n_zeta:.0f} us/zeta)")
    aa = np.array([complex(r, i) for r, i in other["a"]])
    dev = np.abs(aa - a[:8]).max()
    print(f"paths agree to {dev:.2e}")
    slow, fast = max(dt, dt2), min(dt, dt2)
    print(f"speedup: {slow / fast:.1f}x")


if __name__ == "__main__":
    main()
