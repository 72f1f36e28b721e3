"""Density of Lambda_theta and M_theta, and the covering radius of Z minus M_theta."""
import argparse
import math

import numpy as np

from aperiodica import (
    PointSet,
    SpaceDescriptor,
    VanHoveSpec,
    covering_radius,
    density_bound_check,
    integer_range,
    lambda_theta,
    m_theta,
    uniform_upper_density,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--theta", type=float, default=math.pi)
    args = ap.parse_args()
    lam = lambda_theta(args.theta, 2100)
    worst = max(
        (density_bound_check(args.theta, t, n, lam) for t in range(0, 1001, 10) for n in (10, 100, 1000)),
        key=lambda c: c.count_ratio / c.bound,
    )
    print(f"tightest window t={worst.t} n={worst.n}: ratio {worst.count_ratio:.4f} < bound {worst.bound:.4f}")
    ints = VanHoveSpec(SpaceDescriptor.integers())
    for n in (10**2, 10**3, 10**4, 10**5):
        m = m_theta(args.theta, 4 * n, complete_only=True).restrict(integer_range(0, 2 * n))
        rest = np.setdiff1d(np.arange(0, 2 * n + 1), m.points)
        cov = covering_radius(PointSet(rest, integer_range(0, 2 * n)))
        print(f"n={n:>6}: udens(M) {uniform_upper_density(m, ints, n, ns=[n]):.5f}, covering radius of Z\\M {cov}")


if __name__ == "__main__":
    main()
