import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import ellipe

from floer_radial import geodesics as geo


def test_domination_examples():
    eye = np.eye(3)
    assert geo.metric_dominates(geo.MetricSample(0, eye, 0.5 * eye))
    assert geo.metric_dominates(geo.MetricSample(0, eye, eye))
    assert not geo.metric_dominates(geo.MetricSample(0, eye, 2 * eye))


def test_sample_validation():
    with pytest.raises(ValueError):
        geo.MetricSample(0, np.eye(2), -np.eye(2))
    with pytest.raises(ValueError):
        geo.MetricSample(0, np.array([[1.0, 0.5], [0.0, 1.0]]), np.eye(2))
    with pytest.raises(ValueError):
        geo.MetricSample(0, np.eye(2), np.eye(3))


def test_dual_inclusion_examples():
    eye = np.eye(4)
    assert geo.dual_inclusion_check(geo.MetricSample(0, eye, 0.5 * eye), 200)
    assert geo.dual_inclusion_check(geo.MetricSample(0, eye, eye), 200)
    assert not geo.dual_inclusion_check(geo.MetricSample(0, eye, 2 * eye), 200)


def random_dominated_pair(rng, d):
    m = rng.standard_normal((d, d))
    g0 = m @ m.T + d * np.eye(d)
    # G1 = G0^{1/2} S G0^{1/2} with S having eigenvalues in (0, 1]
    w, v = np.linalg.eigh(g0)
    root = v @ np.diag(np.sqrt(w)) @ v.T
    q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    s = q @ np.diag(rng.uniform(0.05, 1.0, d)) @ q.T
    g1 = root @ s @ root
    return g0, 0.5 * (g1 + g1.T)


def test_duality_equivalence_on_random_pairs():
    rng = np.random.default_rng(5)
    for i in range(500):
        g0, g1 = random_dominated_pair(rng, 2 + i % 5)
        s = geo.MetricSample(i, g0, g1)
        assert geo.metric_dominates(s)
        assert geo.dual_inclusion_check(s, 200, seed=i)
        # the linear-algebra oracle: G0^{-1} <= G1^{-1}
        diff = np.linalg.inv(g1) - np.linalg.inv(g0)
        assert np.linalg.eigvalsh(0.5 * (diff + diff.T))[0] >= -1e-9


def test_principal_lengths():
    assert geo.ellipsoid_principal_lengths((1, 1, 1)) == pytest.approx((2 * math.pi,) * 3, abs=1e-12)
    lengths = geo.ellipsoid_principal_lengths((1, 1, 0.8))
    # circumference 4 a E(1 - b^2/a^2) from the complete elliptic integral
    assert lengths[1] == pytest.approx(4 * ellipe(1 - 0.64), abs=1e-12)
    assert lengths[1] == pytest.approx(5.672333577794897, abs=1e-12)
    assert min(geo.ellipsoid_principal_lengths((0.5, 0.5, 0.5))) == pytest.approx(math.pi, abs=1e-12)
    with pytest.raises(ValueError):
        geo.ellipsoid_principal_lengths((1, 0, 1))


@settings(max_examples=50)
@given(st.floats(0.1, 1.0), st.floats(0.1, 1.0), st.floats(0.1, 1.0), st.floats(0.1, 3.0))
def test_lengths_are_homogeneous(a1, a2, a3, lam):
    base = np.array(geo.ellipsoid_principal_lengths((a1, a2, a3)))
    scaled = np.array(geo.ellipsoid_principal_lengths((lam * a1, lam * a2, lam * a3)))
    assert np.allclose(scaled, lam * base, rtol=1e-10)


@settings(max_examples=50)
@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_ellipse_against_elliptic_integral(p, q):
    a, b = max(p, q), min(p, q)
    assert geo.ellipse_circumference(p, q) == pytest.approx(4 * a * ellipe(1 - (b / a) ** 2), rel=1e-11)


def test_certificates():
    rep = geo.geodesic_certificate((1, 1, 0.8))
    assert rep.passed and rep.strict and rep.dominated
    assert rep.witness == pytest.approx(5.672333577794897, abs=1e-9)
    round_rep = geo.geodesic_certificate((1, 1, 1))
    assert round_rep.passed and not round_rep.strict
    assert abs(round_rep.witness - 2 * math.pi) <= 1e-10
    with pytest.raises(geo.HypothesisError):
        geo.geodesic_certificate((1.2, 1, 1))


def test_round_metric_samples_are_identity():
    for s in geo.ellipsoid_metric_samples((1, 1, 1), 64):
        assert np.allclose(s.G1, np.eye(2), atol=1e-12)
