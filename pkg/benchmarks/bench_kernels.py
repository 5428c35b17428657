"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import random
import timeit

from jointsot import _pykernels

try:
    from jointsot import _ckernels
except ImportError:
    _ckernels = None


def workloads(seed=0):
    rng = random.Random(seed)
    seqs = [([rng.randrange(50) for _ in range(30)], [rng.randrange(50) for _ in range(30)])
            for _ in range(200)]
    logs = []
    for _ in range(2000):
        T = rng.randint(5000, 20000)
        logs.append((sorted(rng.randint(0, T) for _ in range(25)), float(T), 20))
    aligns = []
    for _ in range(2000):
        m, n = rng.randint(8, 30), rng.randint(8, 30)
        links = sorted({(i, min(n - 1, i * n // m + rng.randint(-1, 1))) for i in range(m)})
        aligns.append((m, n, [i for i, _ in links], [max(0, j) for _, j in links]))
    return {
        "edit_distance": lambda k: [k.edit_distance(a, b) for a, b in seqs],
        "lagging": lambda k: [k.lagging(d, T, r) for d, T, r in logs],
        "gamma_schedule": lambda k: [k.gamma_schedule(30, 30, 3, 10) for _ in range(2000)],
        "block_cuts": lambda k: [k.block_cuts(m, n, s, t) for m, n, s, t in aligns],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; only the Python timings are shown")
    print(f"{'kernel':<16}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in workloads().items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1000
        if _ckernels is None:
            print(f"{name:<16}{py:>12.2f}{'-':>12}{'-':>10}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1000
        print(f"{name:<16}{py:>12.2f}{cy:>12.2f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
