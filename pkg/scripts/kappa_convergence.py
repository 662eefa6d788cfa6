"""How the finite kappa estimate approaches its limit as the window grows.

    python3 scripts/kappa_convergence.py --A 4 --B 3
"""

import argparse

from floer_radial import hf_spheres as hf
from floer_radial.transfer import generator_count, kappa_estimate, tail_start

WINDOWS = (10, 30, 100, 300, 1000, 3000)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--A", type=int, default=4)
    ap.add_argument("--B", type=int, default=3)
    args = ap.parse_args()
    print("window\ttail_start\tfibered_twist\tA+mB\tA+mB - B")
    for w in WINDOWS:
        twist = kappa_estimate([hf.hf_ranks(2, m).total() for m in range(1, w + 1)])
        copies = kappa_estimate([generator_count(args.A, args.B, m) for m in range(1, w + 1)])
        print(f"{w}\t{tail_start(w)}\t{float(twist):.6f}\t{float(copies):.6f}\t{float(copies - args.B):.3g}")
    print(f"# limits: fibered twist {hf.kappa_fibered_twist(2).limit}, copies {args.B}")


if __name__ == "__main__":
    main()
