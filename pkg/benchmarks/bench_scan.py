"""Benchmark the compiled GF(2^m) scan kernel against the pure-Python fallback.

Two workloads, matching how the package uses the kernels:

* exhaustive root finding of random degree-12 polynomials over GF(2^k),
  k in {8, 12, 16};
* brute-force singular-point scans of random fibers over GF(2^m)^2,
  m in {6, 8} (both charts' worth of polynomials).

Run:  python benchmarks/bench_scan.py
"""

import random
import statistics
import time

from frey2 import _scan_py

try:
    from frey2 import _scan
except ImportError:
    _scan = None

from frey2.gf2 import gf2k


def timed(fn, *args, repeats=5):
    best = []
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best.append(time.perf_counter() - t0)
    return out, min(best), statistics.median(best)


def bench_roots(backend, rng, k):
    F = gf2k(k)
    coeffs = [rng.randrange(F.order) for _ in range(12)] + [1]
    return lambda: backend.find_roots(k, F.modulus, coeffs)


def bench_scan(backend, rng, m):
    F = gf2k(m)
    q = [rng.randrange(F.order) for _ in range(4)]
    p = [rng.randrange(F.order) for _ in range(7)]
    return lambda: backend.scan_singular(m, F.modulus, q, p)


def run():
    backends = [("python", _scan_py)]
    if _scan is not None:
        backends.insert(0, ("cython", _scan))
    else:
        print("compiled kernel unavailable; timing the fallback only")

    rows = []
    for name, workload in (("find_roots", bench_roots), ("scan_singular", bench_scan)):
        sizes = (8, 12, 16) if name == "find_roots" else (6, 8)
        for size in sizes:
            results = {}
            reference = None
            for bname, backend in backends:
                rng = random.Random(1234)  # same inputs for both backends
                fn = workload(backend, rng, size)
                out, best, med = timed(fn)
                results[bname] = (best, med)
                if reference is None:
                    reference = out
                else:
                    assert sorted(out) == sorted(reference), "backends disagree"
            rows.append((name, size, results))

    print(f"{'workload':14s} {'size':>4s} " + "".join(f"{b:>12s}" for b, _ in backends) + "  speedup")
    for name, size, results in rows:
        cells = ""
        for bname, _ in backends:
            cells += f"{results[bname][0] * 1e3:11.2f}m"
        if len(results) == 2:
            speed = results["python"][0] / results["cython"][0]
            cells += f"  {speed:6.1f}x"
        print(f"{name:14s} {size:4d} {cells}")


if __name__ == "__main__":
    run()
