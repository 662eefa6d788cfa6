"""Exact boundary data: Reeb period spectra, slopes, and symplectomorphism size constants.

All lengths and periods are rational multiples of a symbolic unit (the minimal
period of the round unit cotangent bundle, 2*pi).  No floating pi ever enters
a comparison against the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath

Rational = Union[Fraction, int, str]

UNIT_NAME = "2pi"


def as_fraction(x) -> Fraction:
    """Coerce ints, "p/q" strings, decimal strings and Fractions to a Fraction.

    Floats go through ``repr`` so that 0.3 becomes 3/10 rather than the binary
    expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PeriodSpectrum:
    """Periods of closed Reeb orbits, in multiples of the symbolic unit.

    Either every positive integer multiple of ``unit_multiplier`` is a period
    (periodic Reeb flow), or the spectrum is the explicit finite list
    ``multipliers`` (synthetic boundaries used to exercise the stair builder).
    """

    unit_multiplier: Fraction = Fraction(1)
    all_integer_multiples: bool = True
    multipliers: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "unit_multiplier", as_fraction(self.unit_multiplier))
        mults = tuple(as_fraction(q) for q in self.multipliers)
        object.__setattr__(self, "multipliers", mults)
        if self.unit_multiplier <= 0:
            raise ValueError("unit multiplier must be positive")
        if any(q <= 0 for q in mults):
            raise ValueError("period multipliers must be positive")
        if any(a >= b for a, b in zip(mults, mults[1:])):
            raise ValueError("period multipliers must be strictly increasing")
        if not self.all_integer_multiples and not mults:
            raise ValueError("a finite spectrum needs at least one period")

    @classmethod
    def periodic(cls, unit_multiplier: Rational = 1) -> "PeriodSpectrum":
        return cls(as_fraction(unit_multiplier), True, ())

    @classmethod
    def finite(cls, periods) -> "PeriodSpectrum":
        return cls(Fraction(1), False, tuple(sorted(as_fraction(p) for p in periods)))

    def contains(self, value) -> bool:
        value = as_fraction(value)
        if value <= 0:
            return False
        if self.all_integer_multiples:
            return (value / self.unit_multiplier).denominator == 1
        return value in self.multipliers

    def periods_in(self, lo, hi) -> list[Fraction]:
        """Periods p with lo < p < hi, increasing."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        if hi <= lo:
            return []
        if not self.all_integer_multiples:
            return [p for p in self.multipliers if lo < p < hi]
        u = self.unit_multiplier
        k = max(1, math.floor(lo / u) + 1)
        out = []
        while k * u < hi:
            out.append(k * u)
            k += 1
        return out

    def greatest_below(self, value) -> Fraction | None:
        """Largest period strictly smaller than ``value`` (the b0 of a stair)."""
        below = self.periods_in(0, value)
        return below[-1] if below else None

    def to_json(self) -> dict:
        return {
            "unit_multiplier": fraction_str(self.unit_multiplier),
            "all_integer_multiples": self.all_integer_multiples,
            "multipliers": [fraction_str(q) for q in self.multipliers],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PeriodSpectrum":
        return cls(
            as_fraction(data.get("unit_multiplier", "1")),
            bool(data.get("all_integer_multiples", True)),
            tuple(as_fraction(q) for q in data.get("multipliers", [])),
        )


@dataclass(frozen=True)
class SlopeSpec:
    """The slope ``q * unit (+ eps)``; eps is a positive infinitesimal symbol."""

    q: Fraction
    eps: bool = False

    def __post_init__(self):
        object.__setattr__(self, "q", as_fraction(self.q))
        if self.q < 0:
            raise ValueError("slope multiplier must be nonnegative")
        if self.q == 0 and not self.eps:
            raise ValueError("slopes are positive: q = 0 needs +eps")

    def __str__(self) -> str:
        base = f"{fraction_str(self.q)}*{UNIT_NAME}"
        return base + " + eps" if self.eps else base

    def to_json(self) -> dict:
        return {"q": fraction_str(self.q), "eps": self.eps}

    @classmethod
    def from_json(cls, data: dict) -> "SlopeSpec":
        return cls(as_fraction(data["q"]), bool(data.get("eps", False)))


def is_admissible(slope: SlopeSpec, spectrum: PeriodSpectrum) -> bool:
    # a closed spectrum has a gap above every point, so q + eps never hits it
    if slope.eps:
        return True
    return not spectrum.contains(slope.q)


@dataclass(frozen=True)
class LogOf:
    """The real number ln(value), kept symbolic so that exp(-t) stays rational."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_fraction(self.value))
        if self.value <= 0:
            raise ValueError("logarithm of a nonpositive number")

    def __add__(self, other: "LogOf") -> "LogOf":
        return LogOf(self.value * other.value)

    def __float__(self) -> float:
        return math.log(self.value)


Exponent = Union[LogOf, float, int, Fraction]

# working precision for rescalings by a non-logarithmic exponent
RESCALE_DPS = 50
RESCALE_TOL = Fraction(1, 10**40)


def _exp_neg(t: Exponent) -> Fraction:
    if isinstance(t, LogOf):
        if t.value < 1:
            raise ValueError("Liouville rescaling needs t >= 0")
        return 1 / t.value
    if t < 0:
        raise ValueError("Liouville rescaling needs t >= 0")
    if t == 0:
        return Fraction(1)
    t = as_fraction(t)
    with mpmath.workdps(RESCALE_DPS):
        man, exp = mpmath.exp(-mpmath.mpf(t.numerator) / t.denominator).man_exp
    return Fraction(int(man)) * Fraction(2) ** int(exp)


@dataclass(frozen=True)
class SymplectoSize:
    """sup|F_phi| and the support radius rho(W, phi) of an exact symplectomorphism."""

    sup_f: Fraction = Fraction(0)
    support_radius: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "sup_f", as_fraction(self.sup_f))
        object.__setattr__(self, "support_radius", as_fraction(self.support_radius))
        if self.sup_f < 0 or self.support_radius < 0:
            raise ValueError("size constants are nonnegative")

    def to_json(self) -> dict:
        return {"sup_f": fraction_str(self.sup_f), "support_radius": fraction_str(self.support_radius)}

    @classmethod
    def from_json(cls, data: dict) -> "SymplectoSize":
        return cls(as_fraction(data.get("sup_f", 0)), as_fraction(data.get("support_radius", 0)))


def c_constant(sz: SymplectoSize) -> Fraction:
    return 2 * max(sz.sup_f, sz.support_radius)


def liouville_rescale(sz: SymplectoSize, t: Exponent) -> SymplectoSize:
    """Conjugate by the Liouville flow for time t: both constants scale by e^{-t}.

    ``t = LogOf(p/q)`` scales exactly by q/p.  A plain number is exponentiated
    at RESCALE_DPS digits and the result rounded to a dyadic rational, so the
    relative error is below RESCALE_TOL.
    """
    factor = _exp_neg(t)
    return SymplectoSize(sz.sup_f * factor, sz.support_radius * factor)
