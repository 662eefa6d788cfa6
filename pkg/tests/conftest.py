import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from floer_radial import stair
from floer_radial.domain import PeriodSpectrum

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

RUNNING = dict(a=Fraction(1), b=Fraction(2), b0=Fraction(3, 2), c_phi=Fraction(1, 10))


@pytest.fixture(scope="session")
def running_stair():
    """The worked example a=1, b=2, b0=3/2, C=1/10 (params, profile)."""
    return stair.build_stair(**RUNNING)


@pytest.fixture(scope="session")
def running_spectrum():
    # 3/2 is the only period below b = 2
    return PeriodSpectrum.periodic("3/2")


def rational(rng: random.Random, lo, hi, den=20) -> Fraction:
    """Uniform rational with denominator dividing ``den`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    k_lo = int((lo * den).__floor__()) + 1
    k_hi = int((hi * den).__ceil__()) - 1
    if k_lo > k_hi:
        return (lo + hi) / 2
    return Fraction(rng.randint(k_lo, k_hi), den)


def random_stair_input(rng: random.Random):
    """Random (a, b, b0, c_phi) with a < b, b0 < b and c_phi below the feasibility bound."""
    b = rational(rng, Fraction(1, 2), 5)
    a = rational(rng, 0, b)
    b0 = rational(rng, 0, b)
    gap = min(b - b0, b - a)
    c_phi = rational(rng, 0, gap, den=100) if rng.random() < 0.9 else Fraction(0)
    return a, b, b0, c_phi


def spectrum_for(rng: random.Random, a, b, b0) -> PeriodSpectrum:
    """A finite spectrum whose largest period below b is b0, avoiding a and b."""
    periods = {b0}
    for _ in range(rng.randint(0, 4)):
        p = rational(rng, 0, b0, den=40)
        if p != a:
            periods.add(p)
    if rng.random() < 0.5:
        periods.add(b + rational(rng, 0, 2))
    return PeriodSpectrum.finite(periods)


# PASS/FAIL lines from the acceptance suite, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
