import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from floer_radial.domain import (
    LogOf,
    PeriodSpectrum,
    SlopeSpec,
    SymplectoSize,
    as_fraction,
    c_constant,
    is_admissible,
    liouville_rescale,
)

INTEGERS = PeriodSpectrum.periodic(1)
positive_rationals = st.fractions(min_value=Fraction(1, 1000), max_value=100, max_denominator=1000)


def test_as_fraction_reads_decimal_floats_exactly():
    assert as_fraction(0.3) == Fraction(3, 10)
    assert as_fraction("7/4") == Fraction(7, 4)
    with pytest.raises(ValueError):
        as_fraction(float("nan"))


@pytest.mark.parametrize("q,eps,expected", [(3, True, True), (3, False, False), (Fraction(1, 2), False, True)])
def test_admissibility_on_integer_multiples(q, eps, expected):
    assert is_admissible(SlopeSpec(q, eps), INTEGERS) is expected


def test_zero_slope_needs_eps():
    with pytest.raises(ValueError):
        SlopeSpec(0)
    assert str(SlopeSpec(0, True)) == "0*2pi + eps"


def test_spectrum_queries():
    sp = PeriodSpectrum.periodic("1/4")
    assert sp.periods_in(0, 1) == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    assert sp.greatest_below(2) == Fraction(7, 4)
    fin = PeriodSpectrum.finite(["3/2", "1/2"])
    assert fin.greatest_below(2) == Fraction(3, 2)
    assert fin.greatest_below(Fraction(1, 2)) is None
    assert not fin.contains(1)


def test_spectrum_validation():
    with pytest.raises(ValueError):
        PeriodSpectrum(Fraction(1), False, (Fraction(2), Fraction(1)))
    with pytest.raises(ValueError):
        PeriodSpectrum.finite([])


def test_spectrum_json_round_trip():
    for sp in (PeriodSpectrum.periodic("3/2"), PeriodSpectrum.finite(["1/3", "5/2"])):
        assert PeriodSpectrum.from_json(sp.to_json()) == sp
    slope = SlopeSpec("5/3", True)
    assert SlopeSpec.from_json(slope.to_json()) == slope


@pytest.mark.parametrize("sup_f,rho,c", [("0.3", "0.4", "0.8"), (0, 0, 0), ("0.5", "0.1", "1.0")])
def test_c_constant(sup_f, rho, c):
    assert c_constant(SymplectoSize(sup_f, rho)) == Fraction(c)


def test_rescale_examples():
    sz = SymplectoSize("0.3", "0.4")
    assert liouville_rescale(sz, 0) == sz
    assert c_constant(liouville_rescale(sz, LogOf(2))) == Fraction(2, 5)
    assert liouville_rescale(SymplectoSize("0.5", "0.1"), LogOf(10)) == SymplectoSize("0.05", "0.01")
    with pytest.raises(ValueError):
        liouville_rescale(sz, -1)
    with pytest.raises(ValueError):
        liouville_rescale(sz, LogOf(Fraction(1, 2)))


def test_numeric_rescale_matches_exponential():
    sz = SymplectoSize(1, 1)
    out = liouville_rescale(sz, Fraction(3, 7))
    assert abs(float(out.sup_f) - math.exp(-3 / 7)) < 1e-15


@given(positive_rationals, positive_rationals, st.fractions(1, 50, max_denominator=50), st.fractions(1, 50, max_denominator=50))
def test_rescale_composes_exactly(sup_f, rho, p, q):
    sz = SymplectoSize(sup_f, rho)
    t1, t2 = LogOf(p), LogOf(q)
    assert liouville_rescale(liouville_rescale(sz, t1), t2) == liouville_rescale(sz, t1 + t2)
    assert c_constant(liouville_rescale(sz, t1)) == c_constant(sz) / p


@given(st.fractions(0, 20, max_denominator=12))
def test_eps_slopes_always_admissible(q):
    assert is_admissible(SlopeSpec(q, True), INTEGERS)
    assert is_admissible(SlopeSpec(q, True), PeriodSpectrum.finite([q + 1]))
