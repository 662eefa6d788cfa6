"""Rank-level arithmetic around the transfer morphism.

Three pieces: the filtered-complex bound that makes the iterated ratio
independent of the ambient domain, the layout of the m cylindrical copies
used to bound kappa for boundary-supported maps, and a finite estimate of
kappa from a dimension sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .domain import LogOf, as_fraction, fraction_str


@dataclass(frozen=True)
class FilteredRanks:
    below: int  # dim of the negative-action subcomplex
    total_w2: int
    total_w1: int

    def __post_init__(self):
        if min(self.below, self.total_w2, self.total_w1) < 0:
            raise ValueError("ranks are nonnegative")


@dataclass(frozen=True)
class BoundVerdict:
    passed: bool
    slack: int  # 2*below - |w2 - w1|; the bound is strict, so passing needs slack > 0
    note: str = ""


def ambient_bound(fr: FilteredRanks) -> BoundVerdict:
    """|dim HF(W2) - dim HF(W1)| < 2 dim CF^{<0}.

    The subcomplex of negative action and its quotient sit in a long exact
    sequence, so the two totals differ by at most twice the subcomplex size.
    With an empty subcomplex the honest statement is equality of the totals,
    which the strict inequality cannot express; that case carries a note.
    """
    diff = abs(fr.total_w2 - fr.total_w1)
    slack = 2 * fr.below - diff
    note = ""
    if fr.below == 0:
        note = "equality required" + ("" if diff == 0 else " (violated)")
    return BoundVerdict(slack > 0, slack, note)


@dataclass(frozen=True)
class CopiesLayout:
    """Radii of m nested cylindrical shells carrying one copy of the map each.

    Copy j lives in (r0 rho^j, r0 rho^(j+1)), rho = (1 + delta)/delta, and
    r0 = (delta/(1 + delta))^m, so the last shell ends at radius 1.
    """

    delta: Fraction
    m: int
    rho: Fraction
    r0: Fraction
    T: LogOf
    c: LogOf
    supports: tuple[tuple[Fraction, Fraction], ...] = field(repr=False)

    def telescopes(self) -> bool:
        return self.r0 * self.rho ** self.m == 1

    def tiles(self) -> bool:
        s = self.supports
        if not s or s[0][0] != self.r0 or s[-1][1] != 1:
            return False
        if any(lo >= hi for lo, hi in s):
            return False
        return all(s[j][1] == s[j + 1][0] for j in range(len(s) - 1))

    def copy_region(self, j: int) -> tuple[Fraction, Fraction]:
        """(2 delta e^{T + jc}, e^{T + jc}): where copy j of the map is supported."""
        scale = self.T.value * self.c.value ** j
        return 2 * self.delta * scale, scale

    def copies_inside(self) -> bool:
        for j, (lo, hi) in enumerate(self.supports):
            a, b = self.copy_region(j)
            if not (lo < a and b <= hi):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "delta": fraction_str(self.delta),
            "m": self.m,
            "rho": fraction_str(self.rho),
            "r0": fraction_str(self.r0),
            "T": {"log_of": fraction_str(self.T.value), "approx": float(self.T)},
            "c": {"log_of": fraction_str(self.c.value), "approx": float(self.c)},
            "supports": [[fraction_str(lo), fraction_str(hi)] for lo, hi in self.supports],
            "telescopes": self.telescopes(),
            "tiles": self.tiles(),
            "copies_inside": self.copies_inside(),
        }


def copies_layout(delta, m: int) -> CopiesLayout:
    delta = as_fraction(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie in the open interval (0, 1/2)")
    if m < 1:
        raise ValueError("m must be a positive integer")
    rho = (1 + delta) / delta
    r0 = (delta / (1 + delta)) ** m
    supports = tuple((r0 * rho ** j, r0 * rho ** (j + 1)) for j in range(m))
    # T = (m - 1) ln delta - m ln(1 + delta), c = ln rho
    T = LogOf(delta ** (m - 1) / (1 + delta) ** m)
    return CopiesLayout(delta, m, rho, r0, T, LogOf(rho), supports)


def generator_count(A: int, B: int, m: int) -> int:
    """Generators of the m-copy Hamiltonian: A from the core, B from each copy."""
    if A < 0 or B < 0:
        raise ValueError("A and B are nonnegative")
    if m < 1:
        raise ValueError("m must be positive")
    return A + m * B


def generator_kappa_bound(A: int, B: int) -> int:
    """limsup (A + m B)/m."""
    generator_count(A, B, 1)
    return B


DEFAULT_TAIL_FRACTION = Fraction(1, 2)


def tail_start(n_terms: int, tail_fraction=DEFAULT_TAIL_FRACTION) -> int:
    """First index m (1-based) of the tail window used by kappa_estimate."""
    tail_fraction = as_fraction(tail_fraction)
    if not 0 < tail_fraction <= 1:
        raise ValueError("tail fraction must lie in (0, 1]")
    skip = int(n_terms * (1 - tail_fraction))
    return min(skip + 1, n_terms)


def kappa_estimate(dims: Sequence[int], tail_fraction=DEFAULT_TAIL_FRACTION) -> Fraction:
    """Finite stand-in for limsup dims[m]/m: the max of dims[m]/m over the tail.

    ``dims[0]`` is the value at m = 1.  This is an estimate, never a limit:
    for dims = 4m + 2 and 100 terms it is 4 + 2/51.
    """
    dims = [int(d) for d in dims]
    if not dims:
        raise ValueError("need at least one dimension")
    if any(d < 0 for d in dims):
        raise ValueError("dimensions are nonnegative")
    start = tail_start(len(dims), tail_fraction)
    return max(Fraction(dims[m - 1], m) for m in range(start, len(dims) + 1))
