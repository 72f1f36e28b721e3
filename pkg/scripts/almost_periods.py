"""epsilon-almost periods of a smoothed golden comb with a continuous tent weight."""
import argparse
from fractions import Fraction

from aperiodica import BumpFunction, PiecewiseLinear, QuadraticScheme, Samples, almost_periods, interval, omega_comb


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, default=0.2)
    ap.add_argument("--horizon", type=float, default=1000)
    ap.add_argument("--pitch", type=float, default=0.01)
    args = ap.parse_args()
    tent = PiecewiseLinear(((0, 0), (Fraction(1, 2), 1), (1, 0)))
    mu = omega_comb(QuadraticScheme(), tent, interval(-1200, 1200, "[]"))
    f = Samples.of(BumpFunction.tent(0.5), mu, -1100, 1100, args.pitch)
    ap_ = almost_periods(f, args.eps, args.horizon)
    print(f"{len(ap_.periods)} almost periods in [0, {args.horizon}], largest gap {ap_.max_gap:.3f}")
    print("first few:", [round(t, 2) for t in ap_.periods[:12]])


if __name__ == "__main__":
    main()
