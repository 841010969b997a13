"""Compare the exact and floating eta invariants of every L(p, q) with p <= --p-max.

Prints the worst disagreement per p range and the overall maximum.
"""
import argparse
import math
import time

from bubblecert.eta_invariants import LensSpace, eta_exact, eta_float
from bubblecert.exact_core import FloatContext


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=500)
    ap.add_argument("--precision-bits", type=int, default=113)
    ap.add_argument("--bucket", type=int, default=100, help="rows are grouped by this many p")
    args = ap.parse_args()

    ctx = FloatContext(args.precision_bits)
    t0 = time.perf_counter()
    overall, pairs = 0.0, 0
    for start in range(2, args.p_max + 1, args.bucket):
        stop = min(start + args.bucket, args.p_max + 1)
        worst, where = 0.0, None
        for p in range(start, stop):
            for q in range(1, p):
                if math.gcd(p, q) != 1:
                    continue
                lens = LensSpace(p, q)
                err = abs(eta_float(lens, ctx) - float(eta_exact(lens)))
                pairs += 1
                if err >= worst:
                    worst, where = err, lens
        overall = max(overall, worst)
        print(f"p in [{start:>4}, {stop - 1:>4}]  worst {worst:.3e}  at {where}")
    print(f"{pairs} pairs, max error {overall:.3e}, {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()
