"""Certified minimum squared area on [A, B] for a grid of intervals.

Shows how the margin shrinks as the interval widens toward 0 or infinity,
ending with the unbounded case where exclusion fails.
"""
import argparse
from fractions import Fraction

from bubblecert.bubble_classifier import exclusion_verdict


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--widths", type=int, nargs="+", default=[1, 2, 5, 10, 100, 1000],
                    help="use intervals [1/w, w]")
    args = ap.parse_args()

    print(f"{'interval':>18} {'min eps^2':>16} {'float':>12}  witnesses")
    for w in args.widths:
        A, B = Fraction(1, w), Fraction(w)
        if B <= A:
            continue
        rep = exclusion_verdict(A, B)
        wit = " ".join(str(ci.pell) for ci in rep.witnesses)
        print(f"{f'[{A}, {B}]':>18} {str(rep.global_min_sq):>16} {float(rep.global_min_sq):>12.4e}  {wit}")
    rep = exclusion_verdict(Fraction(1, 10), None)
    wit = " ".join(str(ci.pell) for ci in rep.witnesses)
    print(f"{'[1/10, inf)':>18} {str(rep.global_min_sq):>16} {float(rep.global_min_sq):>12.4e}  {wit}"
          f"  excluded={rep.excluded}")


if __name__ == "__main__":
    main()
