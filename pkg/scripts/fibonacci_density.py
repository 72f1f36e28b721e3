"""Point counts of the golden model set against D_S * |W| over growing radii."""
import argparse
import math

from aperiodica import QuadraticScheme, cut_and_project, interval


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", type=float, default=1.0, help="window [0, length)")
    ap.add_argument("--max-exp", type=int, default=5)
    args = ap.parse_args()
    s = QuadraticScheme()
    target = args.length / math.sqrt(5)
    print(f"{'R':>8} {'count':>8} {'estimate':>12} {'R*error':>10}")
    for e in range(2, args.max_exp + 1):
        R = 10**e
        n = len(cut_and_project(s, interval(0, args.length), interval(-R, R, "[]")))
        est = n / (2 * R)
        print(f"{R:>8} {n:>8} {est:>12.8f} {R * abs(est - target):>10.4f}")


if __name__ == "__main__":
    main()
