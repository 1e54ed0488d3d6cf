"""Compare the compiled kernels with the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each workload is timed
with both backends on identical inputs and the outputs are compared.
"""
from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

from unipinv import _pykernels

try:
    from unipinv import _ckernels
except ImportError:
    _ckernels = None


def random_terms(rng, n, count, degree):
    out = {}
    while len(out) < count:
        e = [0] * n
        for _ in range(rng.randint(0, degree)):
            e[rng.randrange(n)] += 1
        out[tuple(e)] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 4))
    return out


def random_rows(rng, rows, cols, density):
    out = []
    for _ in range(rows):
        r = {c: rng.randint(-5, 5) for c in range(cols) if rng.random() < density}
        out.append({c: v for c, v in r.items() if v})
    return out


def timed(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    a = random_terms(rng, 6, 300, 6)
    b = random_terms(rng, 6, 300, 6)
    rows = random_rows(rng, 160, 200, 0.05)
    workloads = [
        ("mul_terms 300x300 terms", lambda k: k.mul_terms(a, b)),
        ("add_terms 300+300 terms", lambda k: k.add_terms(a, b, -1)),
        ("echelon 160x200 sparse", lambda k: k.echelon(rows)),
    ]
    print(f"{'workload':28} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, work in workloads:
        tp, rp = timed(lambda: work(_pykernels), args.repeat)
        if _ckernels is None:
            print(f"{name:28} {tp * 1e3:9.2f}ms {'n/a':>10} {'':>8}")
            continue
        tc, rc = timed(lambda: work(_ckernels), args.repeat)
        assert rp == rc, f"backends disagree on {name}"
        print(f"{name:28} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.2f}x")


if __name__ == "__main__":
    main()
