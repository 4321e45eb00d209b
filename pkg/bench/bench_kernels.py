"""Compare the compiled and pure-Python search kernels on fixed workloads.

    python bench/bench_kernels.py [--repeat 3]

Each workload runs once per backend to warm caches, then ``--repeat`` timed
runs; the best time is reported along with the speedup.  Results must agree
between backends or the script exits nonzero.
"""

import argparse
import sys
import time

import numpy as np

from monoid_factor import kernels
from monoid_factor.exact import Poly, parse_poly
from monoid_factor.factorize import enumerate_factorizations, is_member, length_set
from monoid_factor.monoid import spec_from_min_poly, spec_from_q, spec_from_root


def workloads():
    two = spec_from_min_poly("X^4 - X^3 - X^2 - X + 1")
    non_ap = spec_from_min_poly("X^4 - 6X^3 + 4X^2 - 2X - 2")
    q32 = spec_from_q("3/2")
    r52 = spec_from_root("5/2", 2)
    rng = np.random.default_rng(0)
    Z = rng.integers(0, 5, size=(1500, 12))
    return [
        ("enumerate y_5 (two-root quartic)", lambda: len(enumerate_factorizations(Poly.monomial(16) + 1, two))),
        ("lengths y_6 (two-root quartic)", lambda: length_set(Poly.monomial(19) + 1, two).lengths),
        ("lengths x^5 + 6x^2 (quartic)", lambda: length_set(parse_poly("x^5 + 6x^2"), non_ap).lengths),
        ("enumerate 60 in N0[3/2]", lambda: len(enumerate_factorizations(60, q32))),
        ("lengths 400 in N0[3/2]", lambda: length_set(400, q32).lengths),
        ("membership 41x + 37 in N0[sqrt(5/2)]", lambda: is_member(parse_poly("41x + 37"), r52)),
        ("MST bottleneck 1500 x 12", lambda: kernels.mst_bottleneck(Z)),
    ]


def best_of(fn, repeat):
    fn()
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if "cython" not in kernels.AVAILABLE:
        print("compiled backend not built; only the Python kernels are available")
        return 1
    print(f"{'workload':<40} {'cython':>10} {'python':>10} {'speedup':>8}")
    bad = 0
    for name, fn in workloads():
        times, outs = {}, {}
        for b in ("cython", "python"):
            old = kernels.set_backend(b)
            try:
                times[b], outs[b] = best_of(fn, args.repeat)
            finally:
                kernels.set_backend(old)
        same = outs["cython"] == outs["python"]
        bad += not same
        print(f"{name:<40} {times['cython']:>9.3f}s {times['python']:>9.3f}s {times['python'] / times['cython']:>7.1f}x"
              + ("" if same else "  MISMATCH"))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
