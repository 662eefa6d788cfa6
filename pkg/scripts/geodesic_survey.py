"""Shortest principal ellipse over random ellipsoids with semi-axes in (0, 1].

    python3 scripts/geodesic_survey.py --count 200 --seed 0
"""

import argparse
import math

import numpy as np

from floer_radial import geodesics as geo


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=128)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    witnesses = []
    for _ in range(args.count):
        axes = rng.uniform(0.05, 1.0, 3)
        rep = geo.geodesic_certificate(axes, n_points=args.samples)
        assert rep.passed
        witnesses.append(rep.witness / (2 * math.pi))
    w = np.array(witnesses)
    print(f"{args.count} ellipsoids: witness / 2pi in [{w.min():.4f}, {w.max():.4f}], mean {w.mean():.4f}")
    for axes in ((1, 1, 1), (1, 1, 0.8), (1, 0.9, 0.3)):
        rep = geo.geodesic_certificate(axes)
        print(f"axes {axes}: lengths {[round(x, 6) for x in rep.lengths]}, witness {rep.witness:.6f} ({rep.witness_plane})")


if __name__ == "__main__":
    main()
