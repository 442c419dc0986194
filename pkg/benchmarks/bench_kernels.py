#!/usr/bin/env python3
"""Compare the compiled and pure-Python kernels on the workloads that
dominate the package: exact products and inversions of small rational
matrices, plus one end-to-end pseudo-root table build."""

import random
import time
from fractions import Fraction

from ncroots.backend import available_backends, kernels, use_backend
from ncroots.exact_linalg import RatMatrix
from ncroots.pseudoroots import build_table, random_generic_rootset


def random_flat(rng, n):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n * n)]


def time_call(fn, batch, repeats=5):
    """Best per-call time over several batched runs, in seconds."""
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(batch):
            fn()
        best = min(best, (time.perf_counter() - t0) / batch)
    return best


def bench_kernels(backend, sizes):
    use_backend(backend)
    rng = random.Random(42)
    out = {}
    for n in sizes:
        a = random_flat(rng, n)
        b = random_flat(rng, n)
        batch = max(10, 4000 // (n * n))
        out[f"mul {n}x{n}"] = time_call(lambda: kernels.mul(a, b, n, n, n), batch) * 1e6
        out[f"inv {n}x{n}"] = time_call(lambda: kernels.inv(a, n), batch) * 1e6
    return out


def bench_table(backend):
    use_backend(backend)
    rs = random_generic_rootset(3, 2, seed=11)
    return time_call(lambda: build_table(rs), 3) * 1e3


def main():
    backends = sorted(available_backends())
    if "compiled" not in backends:
        print("compiled backend unavailable; run pip install -e . first")
    sizes = (2, 4, 6, 8)
    rows = {name: bench_kernels(name, sizes) for name in backends}
    table_ms = {name: bench_table(name) for name in backends}

    width = max(len(k) for k in rows[backends[0]]) + 2
    header = "case".ljust(width) + "".join(f"{name:>14}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for case in rows[backends[0]]:
        line = case.ljust(width) + "".join(f"{rows[name][case]:>12.1f}us" for name in backends)
        if len(backends) == 2:
            line += f"{rows['pure'][case] / rows['compiled'][case]:>9.2f}x"
        print(line)
    line = "table n=3 d=2".ljust(width) + "".join(f"{table_ms[name]:>12.1f}ms" for name in backends)
    if len(backends) == 2:
        line += f"{table_ms['pure'] / table_ms['compiled']:>9.2f}x"
    print(line)


if __name__ == "__main__":
    main()
