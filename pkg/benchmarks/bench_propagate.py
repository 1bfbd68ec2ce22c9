"""Compare the compiled and NumPy integrator kernels on the fig2 preset workload.

Usage::

    python3 benchmarks/bench_propagate.py [--repeat N]

Each run propagates both bath presets (tau_c = 0.01 and 5 us) over 2 us
with 2000 output points and reports the best wall time per kernel, the
step count and the largest state difference between kernels.
"""

import argparse
import time

import numpy as np

from cptlab import _backend
from cptlab.dynamics import propagate
from cptlab.generator import GeneratorSpec
from cptlab.model import SystemParams, basis_state
from cptlab.noise import CorrelationModel

PARAMS = SystemParams(gamma=7.0, omega1=46.0, omega2=46.0)
GRID = np.linspace(0.0, 2.0, 2000)


def run(backend):
    out = []
    for tau_c in (0.01, 5.0):
        spec = GeneratorSpec(PARAMS, CorrelationModel(c0=1.0, tau_c=tau_c))
        out.append(propagate(spec, basis_state(1), 2.0, GRID, backend=backend))
    return out


def best_time(backend, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        trajs = run(backend)
        times.append(time.perf_counter() - start)
    return min(times), trajs


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    results = {name: best_time(name, args.repeat) for name in sorted(_backend.KERNELS)}
    print(f"{'backend':<8s} {'best time (s)':>14s} {'steps':>8s}")
    for name, (t, trajs) in results.items():
        print(f"{name:<8s} {t:14.4f} {sum(tr.nsteps for tr in trajs):8d}")
    if "cython" in results:
        py_t, py = results["python"]
        cy_t, cy = results["cython"]
        diff = max(float(np.max(np.abs(a.states - b.states))) for a, b in zip(py, cy))
        print(f"speed-up: {py_t / cy_t:.1f}x   max |state difference|: {diff:.2e}")
    else:
        print("compiled kernel not built; only the NumPy fallback was timed")


if __name__ == "__main__":
    main()
