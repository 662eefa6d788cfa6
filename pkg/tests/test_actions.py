from fractions import Fraction as F

import numpy as np
import pytest
from scipy.optimize import brentq

from floer_radial.actions import (
    Interval,
    NonGenericAction,
    enumerate_orbits,
    filtration_split,
    orbits_tsv,
    region_action_range,
    region_action_samples,
)
from floer_radial.domain import PeriodSpectrum, SymplectoSize

IDENTITY = SymplectoSize(0, 0)


def test_region_ranges_on_running_example(running_stair):
    params, prof = running_stair
    assert region_action_range("IV", prof, IDENTITY) == Interval(-params.B, -params.B, True)
    assert str(region_action_range("III", prof, IDENTITY)) == "(-31/20, 0)"
    assert str(region_action_range("I", prof, IDENTITY)) == "{3/20}"
    assert str(region_action_range("II", prof, IDENTITY)) == "(3/20, 2/5)"
    with pytest.raises(ValueError):
        region_action_range("VI", prof, IDENTITY)


def test_running_example_orbits(running_stair, running_spectrum):
    params, prof = running_stair
    orbits = enumerate_orbits(prof, running_spectrum, IDENTITY)
    by_region = {}
    for o in orbits:
        by_region.setdefault(o.region, []).append(o)
    assert sorted(by_region) == ["I", "II", "III", "IV"]  # 3/2 > a, so nothing in V
    (iii,) = by_region["III"]
    # independent root of h2' = 3/2 and the action at that radius
    h2 = prof.segment("h2").profile
    r = brentq(lambda x: h2.deriv_at(x) - 1.5, h2.r_start, h2.r_end, xtol=1e-15)
    assert iii.radius == pytest.approx(r, abs=1e-9)
    assert iii.action == pytest.approx(1.5 * r - float(h2.value_at(r)), abs=1e-9)
    assert iii.action < 0
    (ii,) = by_region["II"]
    assert 0.15 < ii.action < 0.4


def test_split_on_running_example(running_stair, running_spectrum):
    _, prof = running_stair
    below, above = filtration_split(enumerate_orbits(prof, running_spectrum, IDENTITY))
    assert {o.region for o in below} == {"III", "IV"}
    assert {o.region for o in above} == {"I", "II"}


def test_region_v_sees_small_periods(running_stair):
    params, prof = running_stair
    sp = PeriodSpectrum.finite([F(1, 2), F(3, 2)])
    orbits = enumerate_orbits(prof, sp, IDENTITY)
    v = [o for o in orbits if o.region == "V"]
    assert len(v) == 1 and v[0].period == F(1, 2)
    assert -float(params.B) < v[0].action < -float(params.C)
    assert sum(o.region == "III" for o in orbits) == 2


def test_spectrum_avoiding_zero_b_gives_no_crossings(running_stair):
    _, prof = running_stair
    orbits = enumerate_orbits(prof, PeriodSpectrum.finite([5]), IDENTITY)
    assert [o.region for o in orbits] == ["I", "IV"]


def test_spectrum_with_period_above_b0_is_rejected(running_stair):
    _, prof = running_stair
    with pytest.raises(ValueError, match="b0"):
        enumerate_orbits(prof, PeriodSpectrum.finite([F(3, 2), F(7, 4)]), IDENTITY)
    with pytest.raises(ValueError, match="periods"):
        enumerate_orbits(prof, PeriodSpectrum.periodic("1/2"), IDENTITY)


def test_region_one_sign_ambiguity(running_stair, running_spectrum):
    _, prof = running_stair
    orbits = enumerate_orbits(prof, running_spectrum, SymplectoSize(F(1, 5), 0))
    with pytest.raises(NonGenericAction):
        filtration_split(orbits)


def test_linear_piece_has_constant_action():
    # r h' - h for h = b r + c is -c, independent of r
    r = np.linspace(0.2, 0.8, 7)
    b, c = 2.0, -0.4
    assert np.allclose(r * b - (b * r + c), -c)


def test_region_three_action_is_nonincreasing(running_stair):
    _, prof = running_stair
    _, action = region_action_samples(prof, "III")
    assert np.all(np.diff(action) <= prof.tol)


def test_region_two_endpoints(running_stair):
    params, prof = running_stair
    _, action = region_action_samples(prof, "II")
    assert action[0] == pytest.approx(float(params.A), abs=10 * prof.tol)
    assert action[-1] == pytest.approx(float(2 * params.b * params.delta1), abs=10 * prof.tol)


def test_tsv_output(running_stair, running_spectrum):
    _, prof = running_stair
    lines = orbits_tsv(enumerate_orbits(prof, running_spectrum, IDENTITY)).splitlines()
    assert lines[0] == "region\tr\tperiod\taction"
    assert lines[-1] == "IV\t-\t0\t-31/20"
