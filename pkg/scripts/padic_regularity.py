"""Reconstruct windows from integer sets embedded in the p-adic scheme.

A residue class comes back exactly with zero boundary mass. M_theta keeps a boundary mass
that barely moves as the patch grows, which is how its irregularity shows at finite scale.
"""
import argparse
import math

from aperiodica import PAdicScheme, cut_and_project, integer_range, m_theta, reconstruct_window, residue_class


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2)
    ap.add_argument("--theta", type=float, default=math.pi)
    args = ap.parse_args()
    s = PAdicScheme(args.p)
    lam = cut_and_project(s, residue_class(1, 1, args.p, s.k), integer_range(-5000, 5000))
    rec = reconstruct_window(s, lam)
    print(f"class 1 mod {args.p}: estimate {rec.window_estimate.atoms}, boundary mass {rec.boundary_mass_estimate}")
    print(f"{'B':>7} {'points':>7} {'depth':>6} {'boundary mass':>14}")
    for B in (10**2, 10**3, 10**4, 10**5):
        m = m_theta(args.theta, 2 * B + 2, complete_only=True).restrict(integer_range(0, B))
        rec = reconstruct_window(s, m)
        print(f"{B:>7} {rec.point_count:>7} {rec.depth:>6} {rec.boundary_mass_estimate:>14.4f}")


if __name__ == "__main__":
    main()
