"""Build a stair Hamiltonian, list its orbit families and check the action split.

Defaults reproduce the worked example a = 1, b = 2, b0 = 3/2, C = 1/10 with
periods at the multiples of 3/2 (units of 2pi).

    python3 scripts/stair_actions.py --period 3/2
"""

import argparse
from dataclasses import dataclass
from fractions import Fraction

from floer_radial import stair
from floer_radial.actions import enumerate_orbits, filtration_split, orbits_tsv, region_action_range
from floer_radial.domain import PeriodSpectrum, SymplectoSize


@dataclass
class Config:
    a: Fraction = Fraction(1)
    b: Fraction = Fraction(2)
    c_phi: Fraction = Fraction(1, 10)
    period: Fraction = Fraction(3, 2)
    grid_n: int = 10001


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--a", type=Fraction, default=Config.a)
    ap.add_argument("--b", type=Fraction, default=Config.b)
    ap.add_argument("--c-phi", type=Fraction, default=Config.c_phi)
    ap.add_argument("--period", type=Fraction, default=Config.period, help="minimal Reeb period")
    ap.add_argument("--grid-n", type=int, default=Config.grid_n)
    cfg = Config(**vars(ap.parse_args()))

    spectrum = PeriodSpectrum.periodic(cfg.period)
    b0 = stair.stair_slopes_from_spectrum(cfg.a, cfg.b, spectrum)
    params, prof = stair.build_stair(cfg.a, cfg.b, b0, cfg.c_phi, grid_n=cfg.grid_n)
    print("# constants:", {k: str(v) for k, v in params.to_json().items()})
    print("# residuals:", [str(r) for r in stair.check_inequalities(params).residuals])
    print(f"# max junction gap: {max(prof.junction_gaps()):.3g}")
    sz = SymplectoSize(cfg.c_phi / 2, cfg.c_phi / 2)
    orbits = enumerate_orbits(prof, spectrum, sz)
    print(orbits_tsv(orbits), end="")
    for region in ("I", "II", "III", "IV", "V"):
        print(f"# region {region}: table interval {region_action_range(region, prof, sz)}")
    below, above = filtration_split(orbits)
    print(f"# negative action: {[o.region for o in below]}; nonnegative: {[o.region for o in above]}")


if __name__ == "__main__":
    main()
