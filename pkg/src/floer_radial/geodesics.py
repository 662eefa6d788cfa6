"""Metric comparison and short closed geodesics on ellipsoids.

If g1 <= g0 pointwise then the unit codisk bundle of g1 sits inside that of
g0.  On an ellipsoid with all semi-axes at most 1 the induced metric is
dominated by the round one pulled back along radial projection, and the
three principal ellipses are closed geodesics; the shortest of them is the
witness of length at most 2 pi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

SYMMETRY_TOL = 1e-12
DEFAULT_TOL = 1e-6
DEFAULT_SAMPLES = 512
QUAD_EPS = 1e-13


class HypothesisError(ValueError):
    """The metric-domination hypothesis of the length bound does not hold."""


@dataclass
class MetricSample:
    point_id: int
    G0: np.ndarray
    G1: np.ndarray

    def __post_init__(self):
        self.G0 = np.asarray(self.G0, dtype=float)
        self.G1 = np.asarray(self.G1, dtype=float)
        for name, G in (("G0", self.G0), ("G1", self.G1)):
            if G.ndim != 2 or G.shape[0] != G.shape[1]:
                raise ValueError(f"{name} must be a square matrix")
            if np.max(np.abs(G - G.T), initial=0.0) > SYMMETRY_TOL * max(1.0, np.max(np.abs(G))):
                raise ValueError(f"{name} is not symmetric")
            if np.linalg.eigvalsh(G)[0] <= 0:
                raise ValueError(f"{name} is not positive definite")
        if self.G0.shape != self.G1.shape:
            raise ValueError("G0 and G1 have different dimensions")


def metric_dominates(s: MetricSample, tol: float = DEFAULT_TOL) -> bool:
    """g1(v, v) <= g0(v, v) for all v, up to tol on the smallest eigenvalue of G0 - G1."""
    return bool(np.linalg.eigvalsh(s.G0 - s.G1)[0] >= -tol)


def dual_inclusion_check(s: MetricSample, n_covectors: int = 1000, tol: float = DEFAULT_TOL,
                         seed: int = 0) -> bool:
    """Check |alpha|_{g0*} <= |alpha|_{g1*} on random covectors alpha.

    The dual norm of alpha for g is alpha . G^{-1} alpha, so the codisk bundle
    of g1 lies inside that of g0 exactly when this holds for every alpha.
    """
    rng = np.random.default_rng(seed)
    alphas = rng.standard_normal((n_covectors, s.G0.shape[0]))
    try:
        v = np.linalg.solve(s.G0, alphas.T)
        w = np.linalg.solve(s.G1, alphas.T)
    except np.linalg.LinAlgError as exc:
        raise ValueError("singular metric") from exc
    norm0 = np.einsum("ij,ji->i", alphas, v)
    norm1 = np.einsum("ij,ji->i", alphas, w)
    scale = np.maximum(1.0, np.abs(norm1))
    return bool(np.all(norm0 <= norm1 + tol * scale))


def _check_axes(semi_axes) -> tuple[float, float, float]:
    axes = tuple(float(x) for x in semi_axes)
    if len(axes) != 3:
        raise ValueError("need three semi-axes")
    if any(not (x > 0 and math.isfinite(x)) for x in axes):
        raise ValueError("semi-axes must be positive and finite")
    return axes


def ellipse_circumference(p: float, q: float) -> float:
    """Arc length of t -> (p cos t, q sin t) over one turn, by adaptive quadrature."""
    if p == q:
        return 2 * math.pi * p
    f = lambda t: math.sqrt((p * math.sin(t)) ** 2 + (q * math.cos(t)) ** 2)
    # four symmetric quarters; integrate one to keep quad away from cancellation
    val, err = integrate.quad(f, 0.0, math.pi / 2, epsabs=QUAD_EPS, epsrel=QUAD_EPS, limit=200)
    if not math.isfinite(val) or err > 1e-9:
        raise ArithmeticError(f"quadrature failed (error estimate {err})")
    return 4 * val


def ellipsoid_principal_lengths(semi_axes) -> tuple[float, float, float]:
    """Circumferences of the ellipses cut out by the coordinate planes x3=0, x2=0, x1=0."""
    a1, a2, a3 = _check_axes(semi_axes)
    return (ellipse_circumference(a1, a2), ellipse_circumference(a1, a3), ellipse_circumference(a2, a3))


def fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n) + 0.5
    z = 1 - 2 * k / n
    phi = math.pi * (1 + math.sqrt(5)) * k
    rad = np.sqrt(1 - z * z)
    return np.column_stack((rad * np.cos(phi), rad * np.sin(phi), z))


def _tangent_basis(u: np.ndarray) -> np.ndarray:
    helper = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(u, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(u, e1)
    return np.column_stack((e1, e2))


def ellipsoid_metric_samples(semi_axes, n_points: int = DEFAULT_SAMPLES) -> list[MetricSample]:
    """Round metric G0 and the pullback G1 of the ellipsoid metric along u -> D u.

    In an orthonormal tangent frame E at u the round metric is the identity and
    the pullback of the Euclidean metric by the linear map D = diag(axes) is
    E^T D^2 E; this is the metric the ellipsoid inherits under that map.
    """
    D2 = np.diag(np.array(_check_axes(semi_axes)) ** 2)
    out = []
    for i, u in enumerate(fibonacci_sphere(n_points)):
        E = _tangent_basis(u)
        G1 = E.T @ D2 @ E
        out.append(MetricSample(i, np.eye(2), 0.5 * (G1 + G1.T)))
    return out


@dataclass
class GeodesicReport:
    semi_axes: tuple[float, float, float]
    dominated: bool
    lengths: tuple[float, float, float]
    witness: float
    witness_plane: str
    bound: float
    passed: bool
    strict: bool  # witness < 2 pi, the variant after shrinking the slope
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "semi_axes": list(self.semi_axes),
            "dominated": self.dominated,
            "lengths": list(self.lengths),
            "witness": self.witness,
            "witness_plane": self.witness_plane,
            "bound": self.bound,
            "passed": self.passed,
            "strict": self.strict,
            "notes": self.notes,
        }


PLANES = ("x3=0", "x2=0", "x1=0")


def geodesic_certificate(semi_axes, tol: float = DEFAULT_TOL, n_points: int = DEFAULT_SAMPLES) -> GeodesicReport:
    axes = _check_axes(semi_axes)
    samples = ellipsoid_metric_samples(axes, n_points)
    dominated = all(metric_dominates(s, tol) for s in samples)
    if not dominated:
        raise HypothesisError(f"semi-axes {axes} give a metric not dominated by the round one")
    lengths = ellipsoid_principal_lengths(axes)
    j = int(np.argmin(lengths))
    witness = lengths[j]
    bound = 2 * math.pi
    notes = []
    if abs(witness - bound) <= tol:
        notes.append("witness equals 2pi within tol (round case)")
    return GeodesicReport(axes, dominated, lengths, witness, PLANES[j], bound,
                          witness <= bound + tol, witness < bound - tol, notes)
