"""Time the hot sweeps under both kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload is run once per backend to warm up (numba compiles or loads
its cache), then timed ``--repeat`` times; the best time is reported.
Verdicts are compared across backends as a sanity check.
"""

from __future__ import annotations

import argparse
import json
import time

from multimodular import kernels
from multimodular.checks import is_lnat, is_multimodular, is_submodular
from multimodular.core import IntBox
from multimodular.harness import GeneratorRecipe, random_multimodular
from multimodular.minimize import local_minimize
from multimodular.ops import convolve
from multimodular.transforms import lift_multimodular, to_lnat


def workloads():
    # quadratic recipes are finite on the whole box, so the sweeps see every point
    big = random_multimodular(GeneratorRecipe("quadratic-L-class", 4, IntBox.cube(-4, 4, 4), seed=1))
    mid = random_multimodular(GeneratorRecipe("quadratic-L-class", 3, IntBox.cube(-4, 4, 3), seed=2))
    small = random_multimodular(GeneratorRecipe("separable-conjugated", 3, IntBox.cube(-2, 2, 3), seed=3))
    g = to_lnat(mid)
    lifted = lift_multimodular(small)
    corner = big.effective_domain()[-1]
    return [
        ("is_multimodular  n=4, 9^4 box", lambda: is_multimodular(big).holds),
        ("is_lnat          n=3, 729 points", lambda: is_lnat(g).holds),
        ("is_submodular    lift of n=3, pairs", lambda: is_submodular(lifted, "pairs").holds),
        ("convolve         9^3 with 5^3", lambda: convolve(mid, small).dom_size),
        ("local_minimize   n=4 from a corner", lambda: local_minimize(big, corner).value),
    ]


def best_time(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    backends = kernels.available_backends()
    rows = []
    for name, fn in workloads():
        row = {"workload": name.split()[0], "detail": " ".join(name.split()[1:])}
        results = {}
        for b in backends:
            with kernels.use_backend(b):
                fn()
                row[b], results[b] = best_time(fn, args.repeat)
        if len(set(map(str, results.values()))) != 1:
            raise SystemExit(f"{name}: backends disagree: {results}")
        if "numba" in row:
            row["speedup"] = row["numpy"] / row["numba"] if row["numba"] > 0 else float("inf")
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'workload':<16} {'detail':<22}" + "".join(f"{b:>11}" for b in backends) + ("    speedup" if "numba" in backends else ""))
    for r in rows:
        line = f"{r['workload']:<16} {r['detail']:<22}" + "".join(f"{r[b] * 1e3:>9.1f}ms" for b in backends)
        if "speedup" in r:
            line += f"  {r['speedup']:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
