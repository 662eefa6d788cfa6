"""Twisted-orbit families of a stair profile and their actions, region by region.

In a radial region a 1-periodic orbit sits at a radius r where h'(r) is a
Reeb period, and its action is r h'(r) - h(r).  Regions I and IV are
constant and contribute one family of constant orbits each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .domain import PeriodSpectrum, SymplectoSize, fraction_str
from .stair import StairProfile

REGIONS = ("I", "II", "III", "IV", "V")
# which smooth stair segment realises each radial region
_REGION_SEGMENT = {"II": "h1", "III": "h2", "V": "h3"}
MAX_BISECTIONS = 200


class NonMonotoneDerivative(RuntimeError):
    pass


class NonGenericAction(ValueError):
    """An orbit family has zero action (or a sign-ambiguous action interval)."""


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction
    closed: bool

    def contains(self, x, tol: float = 0.0) -> bool:
        if isinstance(x, Interval):
            return self.contains(x.lo, tol) and self.contains(x.hi, tol)
        lo, hi = float(self.lo), float(self.hi)
        if self.closed:
            return lo - tol <= float(x) <= hi + tol
        return lo - tol < float(x) < hi + tol

    def __str__(self):
        if self.lo == self.hi:
            return "{" + fraction_str(self.lo) + "}"
        left, right = ("[", "]") if self.closed else ("(", ")")
        return f"{left}{fraction_str(self.lo)}, {fraction_str(self.hi)}{right}"


@dataclass(frozen=True)
class OrbitClass:
    region: str
    radius: float | None
    period: Fraction
    action: object  # Fraction (exact), float (sampled), or Interval

    def action_sign(self) -> int:
        a = self.action
        if isinstance(a, Interval):
            if a.lo > 0:
                return 1
            if a.hi < 0:
                return -1
            return 0
        return (a > 0) - (a < 0)

    def action_str(self) -> str:
        if isinstance(self.action, Interval):
            return str(self.action)
        if isinstance(self.action, Fraction):
            return fraction_str(self.action)
        return f"{self.action:.12g}"


def region_action_range(region: str, profile: StairProfile, sz: SymplectoSize) -> Interval:
    p = profile.params
    if region == "I":
        return Interval(p.A - sz.sup_f, p.A + sz.sup_f, closed=True)
    if region == "II":
        return Interval(p.A, 2 * p.b * p.delta1, closed=False)
    if region == "III":
        return Interval(-p.B, Fraction(0), closed=False)
    if region == "IV":
        return Interval(-p.B, -p.B, closed=True)
    if region == "V":
        return Interval(-p.B, -p.C, closed=False)
    raise ValueError(f"unknown region {region!r}")


def region_action_samples(profile: StairProfile, region: str):
    """Radii and sampled action function r h'(r) - h(r) over a smooth region."""
    prof = profile.segment(_REGION_SEGMENT[region]).profile
    return prof.grid, prof.grid * prof.derivs - prof.values


def _crossing(grid, derivs, period: float, increasing: bool) -> float:
    lo, hi = float(grid[0]), float(grid[-1])
    sign = 1.0 if increasing else -1.0
    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if sign * (np.interp(mid, grid, derivs) - period) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4e-16 * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def enumerate_orbits(profile: StairProfile, spectrum: PeriodSpectrum, sz: SymplectoSize,
                     tol: float | None = None) -> list[OrbitClass]:
    tol = profile.tol if tol is None else tol
    p = profile.params
    if spectrum.contains(p.b) or spectrum.contains(p.a):
        raise ValueError("slopes a and b must not be Reeb periods")
    top = spectrum.greatest_below(p.b)
    if top is not None and top > p.b0:
        raise ValueError(f"spectrum has period {top} in (b0, b); the profile was built for b0 = {p.b0}")
    orbits = [OrbitClass("I", None, Fraction(0), region_action_range("I", profile, sz))]
    for region in ("II", "III"):
        orbits += _smooth_region_orbits(profile, region, spectrum, tol)
    orbits.append(OrbitClass("IV", None, Fraction(0), -p.B))
    orbits += _smooth_region_orbits(profile, "V", spectrum, tol)
    return orbits


def _smooth_region_orbits(profile, region, spectrum, tol):
    seg = profile.segment(_REGION_SEGMENT[region])
    prof = seg.profile
    grid, d = prof.grid, prof.derivs
    increasing = region != "III"  # h2 is concave, h1 and h3 convex
    step = np.diff(d) if increasing else -np.diff(d)
    if np.any(step < -tol):
        raise NonMonotoneDerivative(f"sampled h' is not monotone on region {region}")
    lo, hi = float(d.min()), float(d.max())
    out = []
    for period in spectrum.periods_in(0, profile.params.b if region != "V" else profile.params.a):
        pf = float(period)
        if not (lo < pf < hi):
            continue
        r = _crossing(grid, d, pf, increasing)
        action = r * pf - float(prof.value_at(r))
        out.append(OrbitClass(region, r, period, action))
    return out


def filtration_split(orbits: list[OrbitClass]):
    """Partition orbit families into negative and nonnegative action.

    For a stair profile the families of regions I and II must land on the
    nonnegative side and III, IV, V on the negative side.
    """
    below, above = [], []
    for orb in orbits:
        sign = orb.action_sign()
        if sign == 0:
            raise NonGenericAction(f"region {orb.region} orbit has action {orb.action_str()} touching 0")
        (above if sign > 0 else below).append(orb)
    wrong = [o.region for o in above if o.region not in ("I", "II")]
    wrong += [o.region for o in below if o.region in ("I", "II")]
    if wrong:
        raise NonGenericAction(f"action signs do not separate W1^(2 delta1) from the rest: {wrong}")
    return below, above


def orbits_tsv(orbits: list[OrbitClass]) -> str:
    lines = ["region\tr\tperiod\taction"]
    for o in orbits:
        r = "-" if o.radius is None else f"{o.radius:.15g}"
        lines.append(f"{o.region}\t{r}\t{fraction_str(o.period)}\t{o.action_str()}")
    return "\n".join(lines) + "\n"
