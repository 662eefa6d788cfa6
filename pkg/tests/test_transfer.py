from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from floer_radial.transfer import (
    FilteredRanks,
    ambient_bound,
    copies_layout,
    generator_count,
    generator_kappa_bound,
    kappa_estimate,
    tail_start,
)


def test_ambient_bound_examples():
    v = ambient_bound(FilteredRanks(3, 10, 8))
    assert v.passed and v.slack == 4
    edge = ambient_bound(FilteredRanks(0, 5, 5))
    assert not edge.passed and edge.note == "equality required"
    assert not ambient_bound(FilteredRanks(2, 10, 5)).passed
    with pytest.raises(ValueError):
        FilteredRanks(-1, 0, 0)


@given(st.integers(0, 50), st.integers(0, 200), st.integers(0, 200))
def test_ambient_bound_symmetric(below, w1, w2):
    assert ambient_bound(FilteredRanks(below, w2, w1)) == ambient_bound(FilteredRanks(below, w1, w2))


def test_copies_examples():
    lay = copies_layout(F(1, 3), 2)
    assert lay.rho == 4 and lay.r0 == F(1, 16)
    assert lay.supports == ((F(1, 16), F(1, 4)), (F(1, 4), F(1)))
    assert lay.telescopes() and lay.tiles() and lay.copies_inside()
    lay = copies_layout(F(1, 4), 3)
    assert lay.rho == 5 and lay.r0 == F(1, 125) and lay.supports[-1][1] == 1
    # T = (m-1) ln delta - m ln(1+delta)
    assert lay.T.value == F(1, 16) / F(125, 64)


@pytest.mark.parametrize("delta,m", [(F(1, 2), 1), (0, 1), (F(1, 3), 0)])
def test_copies_domain(delta, m):
    with pytest.raises(ValueError):
        copies_layout(delta, m)


@given(st.fractions(F(1, 1000), F(499, 1000), max_denominator=1000), st.integers(1, 20))
def test_copies_identity(delta, m):
    lay = copies_layout(delta, m)
    assert lay.r0 * lay.rho ** m == 1
    assert lay.tiles() and lay.copies_inside()


def test_generator_count():
    assert generator_count(4, 3, 5) == 19
    assert generator_count(0, 0, 9) == 0 and generator_kappa_bound(0, 0) == 0
    assert generator_kappa_bound(4, 3) == 3
    with pytest.raises(ValueError):
        generator_count(-1, 0, 1)


def test_kappa_estimate_examples():
    assert kappa_estimate([4 * m + 2 for m in range(1, 101)]) == 4 + F(2, 51)
    assert kappa_estimate([7] * 100) == F(7, 51)
    assert kappa_estimate([4 + 3 * m for m in range(1, 101)]) == 3 + F(4, 51)
    with pytest.raises(ValueError):
        kappa_estimate([])


def test_tail_start():
    assert tail_start(100) == 51
    assert tail_start(1) == 1
    assert tail_start(10, F(1, 5)) == 9


@given(st.integers(2, 400))
def test_kappa_estimate_decreases_towards_four(n_terms):
    seq = [4 * m + 2 for m in range(1, n_terms + 2)]
    short, longer = kappa_estimate(seq[:-1]), kappa_estimate(seq)
    assert 4 < longer <= short
