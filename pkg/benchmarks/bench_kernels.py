"""Benchmark the numba and numpy gate-kernel backends against each other.

Two views:
  * raw kernel throughput on single states and dense batches, per register size
  * one full optimizer step (cost + parameter-shift gradient) of the
    3-qubit, 8-layer observable synthesis, the workload that dominates runs

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

import vqgf.kernels as kernels
from vqgf.circuit import basic_entangled_ansatz
from vqgf.cost import observable_cost_direct, toffoli_truth_table
from vqgf.optimize import init_params, param_shift_gradient


def _time(fn, repeat):
    fn()  # warm up (jit compile, index caches)
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_raw(repeat):
    sets = {"numpy": kernels.NUMPY_KERNELS, "numba": kernels.make_numba_kernels()}
    rng = np.random.default_rng(0)
    h = 1.0 / np.sqrt(2.0)
    print(f"{'kernel':<28}{'shape':<14}" + "".join(f"{name:>12}" for name in sets))
    for n in (3, 5, 7, 10):
        d = 1 << n
        for rows, label in ((1, f"state {d}"), (min(d, 128), f"batch {min(d, 128)}x{d}")):
            base = rng.normal(size=(rows, d)) + 1j * rng.normal(size=(rows, d))
            base = np.ascontiguousarray(base, dtype=np.complex128)
            row = {}
            for name, ks in sets.items():
                batch = base.copy()
                calls = 200
                row[name] = _time(
                    lambda: [ks["apply_1q"](batch, h, h, h, -h, 1) for _ in range(calls)],
                    repeat,
                ) / calls
            print(
                f"{'apply_1q':<28}{label:<14}"
                + "".join(f"{row[name] * 1e6:>10.2f}us" for name in sets)
            )
            row = {}
            for name, ks in sets.items():
                batch = base.copy()
                calls = 200
                row[name] = _time(
                    lambda: [ks["apply_ctrl_x"](batch, d >> 1, 1) for _ in range(calls)],
                    repeat,
                ) / calls
            print(
                f"{'apply_ctrl_x':<28}{label:<14}"
                + "".join(f"{row[name] * 1e6:>10.2f}us" for name in sets)
            )


def bench_optimizer_step(repeat):
    ansatz = basic_entangled_ansatz(3, 8)
    table = toffoli_truth_table(3)
    params = init_params(ansatz.param_count, 1)
    cost = lambda p: observable_cost_direct(ansatz, p, table)

    def one_step():
        cost(params)
        param_shift_gradient(cost, params)

    sets = {"numpy": kernels.NUMPY_KERNELS, "numba": kernels.make_numba_kernels()}
    print(f"\n{'workload':<42}" + "".join(f"{name:>12}" for name in sets))
    original = (kernels.apply_1q, kernels.apply_ctrl_x)
    timings = {}
    try:
        for name, ks in sets.items():
            kernels.apply_1q = ks["apply_1q"]
            kernels.apply_ctrl_x = ks["apply_ctrl_x"]
            timings[name] = _time(one_step, repeat)
    finally:
        kernels.apply_1q, kernels.apply_ctrl_x = original
    print(
        f"{'n=3 8-layer observable step (145 evals)':<42}"
        + "".join(f"{timings[name] * 1e3:>10.1f}ms" for name in sets)
    )
    if timings["numba"] > 0:
        print(f"\nnumba speedup on the optimizer step: {timings['numpy'] / timings['numba']:.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions, best kept")
    args = parser.parse_args()
    print(f"active backend at import: {kernels.BACKEND}\n")
    bench_raw(args.repeat)
    bench_optimizer_step(args.repeat)


if __name__ == "__main__":
    main()
