"""Convex / concave strictly increasing interpolants with flat and linear extensions.

The convex builder joins the constant ``beta0`` (left of r0) to the line
``alpha*r + beta1`` (right of r0 + ell).  Its derivative is always an integral
of the standard bump exp(-1/(1 - x^2)), possibly reparametrised:

* ``equal``   h' = f3                            (target == c1)
* ``larger``  h' = f3(k1 (r - r0) + r0)          (target  > c1, k1 >= 1)
* ``smaller`` h' = f3 * (s + (1 - s)/alpha * f3(k2 (r - r0 - ell) + r0 + ell))
                                                  (target  < c1, k2 = 1/s)

where f3 rises smoothly from 0 at r0 to alpha at r0 + ell, c1 is the integral
of f3 over the interval and target = beta1 - beta0 + alpha (r0 + ell) is the
rise h must accumulate.  Parameters are found by bisection on the same
trapezoid quadrature used to sample h, so the sampled endpoint matches the
target to the bisection tolerance.

The concave builder reflects: h(r) = -g(-r) with g convex on [-r0-ell, -r0].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from .domain import as_fraction, fraction_str

CONVEX = "convex-to-linear"
CONCAVE = "linear-to-constant"

DEFAULT_TOL = 1e-6
DEFAULT_GRID_N = 10001
MAX_BISECTIONS = 200
MAX_BRACKET_DOUBLINGS = 60


class InfeasibleSpec(ValueError):
    """The boundary data admit no interpolant of the requested shape."""


class ConvergenceError(RuntimeError):
    """Parameter search did not reach the target; tol or grid is too tight."""


class CertificationError(RuntimeError):
    def __init__(self, message, certificate):
        super().__init__(message)
        self.certificate = certificate


# -- the smooth step ---------------------------------------------------------

_TABLE_PANELS = 2**15
_GAUSS_NODES = 12


def bump(x):
    """exp(-1/(1 - x^2)) on (-1, 1), zero elsewhere."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    out[inside] = np.exp(-1.0 / (1.0 - x[inside] ** 2))
    return out


@lru_cache(maxsize=1)
def _step_table():
    """Hermite table of the normalised running integral of the bump on u in [0, 1]."""
    u = np.linspace(0.0, 1.0, _TABLE_PANELS + 1)
    gx, gw = np.polynomial.legendre.leggauss(_GAUSS_NODES)
    h = 1.0 / _TABLE_PANELS
    mid = 0.5 * (u[:-1] + u[1:])
    pts = mid[:, None] + 0.5 * h * gx[None, :]
    # integrand in u is 2*bump(2u - 1)
    panel = (0.5 * h * gw[None, :] * 2.0 * bump(2.0 * pts - 1.0)).sum(axis=1)
    cum = np.concatenate([[0.0], np.cumsum(panel)])
    # dx = 2 du, so cum[-1] is already the integral over x
    bump_integral = cum[-1]
    values = cum / bump_integral
    slopes = 2.0 * bump(2.0 * u - 1.0) / bump_integral
    return CubicHermiteSpline(u, values, slopes), bump_integral


def bump_integral() -> float:
    """Integral of the bump over the real line (about 0.443994)."""
    return _step_table()[1]


def smooth_step(u):
    """0 for u <= 0, 1 for u >= 1, C-infinity and strictly increasing between."""
    spline, _ = _step_table()
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    return np.clip(spline(u), 0.0, 1.0)


def log_smooth_step_lower(u):
    """A finite lower bound for log(smooth_step(u)) on (0, 1].

    Near u = 0 the step underflows in double precision.  There we use
    int_{-1}^{x} bump >= (x + 1)/2 * bump((x - 1)/2) since the bump increases
    on [-1, 0].
    """
    u = np.asarray(u, dtype=float)
    out = np.full(u.shape, -np.inf)
    pos = u > 0
    up = np.minimum(u[pos], 1.0)
    with np.errstate(divide="ignore"):
        direct = np.log(smooth_step(up))
        x = 2.0 * np.minimum(up, 0.5) - 1.0
        y = 0.5 * (x - 1.0)
        bound = np.log(0.5 * (x + 1.0)) - 1.0 / (1.0 - y * y) - np.log(bump_integral())
    out[pos] = np.where(up >= 0.5, direct, np.maximum(direct, bound))
    return out


# -- specs and samples -------------------------------------------------------


@dataclass(frozen=True)
class InterpolationSpec:
    r0: Fraction
    ell: Fraction
    alpha: Fraction
    beta0: Fraction
    beta1: Fraction
    shape: str = CONVEX
    barrier: Fraction | None = None

    def __post_init__(self):
        for name in ("r0", "ell", "alpha", "beta0", "beta1"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.barrier is not None:
            object.__setattr__(self, "barrier", as_fraction(self.barrier))
        if self.shape not in (CONVEX, CONCAVE):
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.ell <= 0 or self.alpha <= 0:
            raise ValueError("ell and alpha must be positive")
        if self.barrier is not None and self.shape != CONCAVE:
            raise ValueError("a barrier only applies to concave interpolation")

    @property
    def r1(self) -> Fraction:
        return self.r0 + self.ell

    def rise(self) -> Fraction:
        """Total increase h(r0 + ell) - h(r0) the interpolant must achieve."""
        if self.shape == CONVEX:
            return self.beta1 - self.beta0 + self.alpha * self.r1
        return self.beta1 - self.beta0 - self.alpha * self.r0

    def reflected(self) -> "InterpolationSpec":
        """The convex spec of r -> -h(-r) for a concave spec (and vice versa)."""
        other = CONVEX if self.shape == CONCAVE else CONCAVE
        return InterpolationSpec(-self.r1, self.ell, self.alpha, -self.beta1, -self.beta0, other)

    def to_json(self) -> dict:
        out = {
            "r0": fraction_str(self.r0),
            "ell": fraction_str(self.ell),
            "alpha": fraction_str(self.alpha),
            "beta0": fraction_str(self.beta0),
            "beta1": fraction_str(self.beta1),
            "shape": self.shape,
        }
        if self.barrier is not None:
            out["barrier"] = fraction_str(self.barrier)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "InterpolationSpec":
        shape = data.get("shape", CONVEX)
        shape = {"convex": CONVEX, "concave": CONCAVE}.get(shape, shape)
        barrier = data.get("barrier")
        return cls(
            as_fraction(data["r0"]),
            as_fraction(data["ell"]),
            as_fraction(data["alpha"]),
            as_fraction(data["beta0"]),
            as_fraction(data["beta1"]),
            shape,
            None if barrier is None else as_fraction(barrier),
        )


@dataclass
class SampledProfile:
    grid: np.ndarray
    values: np.ndarray
    derivs: np.ndarray
    meta: dict = field(default_factory=dict)
    # finite lower bounds for log h' where the float derivative underflows
    log_deriv_lower: np.ndarray | None = None

    def __len__(self):
        return len(self.grid)

    @property
    def r_start(self) -> float:
        return float(self.grid[0])

    @property
    def r_end(self) -> float:
        return float(self.grid[-1])

    def value_at(self, r):
        # h' is piecewise linear between samples, so h is piecewise quadratic
        r = np.asarray(r, dtype=float)
        i = np.clip(np.searchsorted(self.grid, r, side="right") - 1, 0, len(self.grid) - 2)
        dr = r - self.grid[i]
        return self.values[i] + 0.5 * dr * (self.derivs[i] + self.deriv_at(r))

    def deriv_at(self, r):
        return np.interp(r, self.grid, self.derivs)

    def to_tsv(self) -> str:
        lines = ["r\th\tdh"]
        lines += [f"{r:.17g}\t{h:.17g}\t{d:.17g}" for r, h, d in zip(self.grid, self.values, self.derivs)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "grid": self.grid.tolist(),
            "values": self.values.tolist(),
            "derivs": self.derivs.tolist(),
            "meta": _jsonable(self.meta),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SampledProfile":
        return cls(
            np.asarray(data["grid"], dtype=float),
            np.asarray(data["values"], dtype=float),
            np.asarray(data["derivs"], dtype=float),
            dict(data.get("meta", {})),
        )


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, InterpolationSpec):
        return obj.to_json()
    return obj


# -- feasibility (exact) ------------------------------------------------------


def convex_feasible(spec: InterpolationSpec) -> bool:
    if spec.shape != CONVEX:
        raise ValueError("convex_feasible needs a convex-to-linear spec")
    return spec.alpha * spec.r0 < spec.beta0 - spec.beta1 and spec.rise() > 0


def barrier_holds(spec: InterpolationSpec) -> bool:
    # a concave h stays above a line iff both endpoint values do
    if spec.barrier is None:
        return True
    a1 = spec.barrier
    return spec.alpha * spec.r0 + spec.beta0 > spec.r0 * a1 and spec.beta1 > a1 * spec.r1


def concave_feasible(spec: InterpolationSpec) -> bool:
    if spec.shape != CONCAVE:
        raise ValueError("concave_feasible needs a linear-to-constant spec")
    return 0 < spec.rise() < spec.ell * spec.alpha and barrier_holds(spec)


# -- construction --------------------------------------------------------------


def _trapz_cumulative(x, y):
    return np.concatenate([[0.0], np.cumsum(0.5 * (y[1:] + y[:-1]) * np.diff(x))])


class _ConvexBuilder:
    """Holds the float data of one convex spec and evaluates each branch."""

    def __init__(self, spec: InterpolationSpec, grid_n: int):
        if grid_n < 3:
            raise ValueError("grid_n must be at least 3")
        self.r0 = float(spec.r0)
        self.ell = float(spec.ell)
        self.r1 = self.r0 + self.ell
        self.alpha = float(spec.alpha)
        self.n = grid_n
        self.base = np.linspace(self.r0, self.r1, grid_n)
        self.max_step = self.ell / (grid_n - 1)
        # finest admissible node spacing for the reparametrised transition
        self.min_span = 1e-13 * max(1.0, abs(self.r0), abs(self.r1)) * (grid_n - 1)

    def f3(self, r):
        return self.alpha * smooth_step((np.asarray(r) - self.r0) / self.ell)

    def log_f3_lower(self, r):
        return np.log(self.alpha) + log_smooth_step_lower((np.asarray(r) - self.r0) / self.ell)

    # grids: the reparametrised transition gets its own n nodes so that the
    # quadrature moves continuously with the parameter
    def grid_larger(self, k1):
        edge = self.r0 + self.ell / k1
        fine = np.linspace(self.r0, edge, self.n)
        fine[-1] = edge
        return np.concatenate([fine, self.base[self.base > edge]])

    def grid_smaller(self, k2):
        edge = self.r1 - self.ell / k2
        fine = np.linspace(edge, self.r1, self.n)
        fine[0], fine[-1] = edge, self.r1
        return np.concatenate([self.base[self.base < edge], fine])

    def deriv_larger(self, grid, k1):
        return self.f3(k1 * (grid - self.r0) + self.r0)

    def deriv_smaller(self, grid, s, k2):
        shifted = self.f3(k2 * (grid - self.r1) + self.r1)
        return self.f3(grid) * (s + (1.0 - s) / self.alpha * shifted)

    def integral(self, grid, d):
        return float(np.sum(0.5 * (d[1:] + d[:-1]) * np.diff(grid)))

    def g1(self, t):
        grid = self.grid_larger(t)
        return self.integral(grid, self.deriv_larger(grid, t))

    def g2(self, s):
        grid = self.grid_smaller(1.0 / s)
        return self.integral(grid, self.deriv_smaller(grid, s, 1.0 / s))


def _bisect(fn, lo, hi, target, tol, increasing):
    """Bisect fn(x) = target on [lo, hi] where fn(lo), fn(hi) straddle target."""
    best_x, best_err = None, np.inf
    for it in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        val = fn(mid)
        err = abs(val - target)
        if err < best_err:
            best_x, best_err = mid, err
        if err <= 0.25 * tol:
            return mid, it + 1
        if (val < target) == increasing:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-16 * max(abs(lo), abs(hi)):
            break
    if best_err <= tol:
        return best_x, MAX_BISECTIONS
    raise ConvergenceError(f"bisection stalled {best_err:.3g} away from the target")


def _build_convex_samples(spec: InterpolationSpec, tol: float, grid_n: int) -> SampledProfile:
    b = _ConvexBuilder(spec, grid_n)
    target = float(spec.rise())
    grid = b.base
    f3 = b.f3(grid)
    c1 = b.integral(grid, f3)
    meta = {"c1": c1, "target": target, "max_step": b.max_step}

    if abs(target - c1) <= 0.25 * tol:
        branch = "equal"
        derivs = f3
        log_lower = b.log_f3_lower(grid)
    elif target > c1:
        branch = "larger"
        hi, cap = 2.0, b.ell / b.min_span
        doublings = 0
        while b.g1(hi) < target:
            doublings += 1
            if doublings > MAX_BRACKET_DOUBLINGS or hi * 2 > cap:
                raise ConvergenceError("k1 bracket exceeded; target too close to alpha*ell for this grid")
            hi *= 2
        k1, iters = _bisect(b.g1, 1.0, hi, target, tol, increasing=True)
        grid = b.grid_larger(k1)
        derivs = b.deriv_larger(grid, k1)
        log_lower = b.log_f3_lower(k1 * (grid - b.r0) + b.r0)
        meta.update(k1=k1, iterations=iters)
    else:
        branch = "smaller"
        lo, floor = 0.5, b.min_span / b.ell
        halvings = 0
        while b.g2(lo) > target:
            halvings += 1
            if halvings > MAX_BRACKET_DOUBLINGS or lo / 2 < floor:
                raise ConvergenceError("eps bracket exceeded; target too small for this grid")
            lo /= 2
        s, iters = _bisect(b.g2, lo, 1.0, target, tol, increasing=True)
        k2 = 1.0 / s
        grid = b.grid_smaller(k2)
        derivs = b.deriv_smaller(grid, s, k2)
        # the second factor is at least s
        log_lower = b.log_f3_lower(grid) + np.log(s)
        meta.update(eps=s, k2=k2, iterations=iters)

    values = float(spec.beta0) + _trapz_cumulative(grid, derivs)
    meta["branch"] = branch
    return SampledProfile(grid, values, derivs, meta, log_lower)


def _second_differences(grid, values):
    """Second differences normalised to the uniform-grid form h[i+1] - 2h[i] + h[i-1]."""
    dl = np.diff(grid)[:-1]
    dr = np.diff(grid)[1:]
    dh = np.diff(values)
    raw = dl * dh[1:] - dr * dh[:-1]
    return raw / (0.5 * (dl + dr))


def certify(profile: SampledProfile, spec: InterpolationSpec, tol: float) -> dict:
    """Check the sampled interpolant against the boundary conditions and shape.

    Returns a dict of named boolean checks plus ``ok``.
    """
    g, h, d = profile.grid, profile.values, profile.derivs
    r0, r1 = float(spec.r0), float(spec.r1)
    alpha = float(spec.alpha)
    if spec.shape == CONVEX:
        h_start, d_start = float(spec.beta0), 0.0
        h_end, d_end = float(spec.alpha * spec.r1 + spec.beta1), alpha
        sign = 1.0
    else:
        h_start, d_start = float(spec.alpha * spec.r0 + spec.beta0), alpha
        h_end, d_end = float(spec.beta1), 0.0
        sign = -1.0
    interior = slice(1, -1)
    if profile.log_deriv_lower is not None:
        positive = bool(np.all((d[interior] > 0) | np.isfinite(profile.log_deriv_lower[interior])))
    else:
        positive = bool(np.all(d[interior] > 0))
    steps = np.diff(g)
    second = _second_differences(g, h)
    checks = {
        "covers_interval": bool(abs(g[0] - r0) <= 1e-12 * max(1, abs(r0)) and abs(g[-1] - r1) <= 1e-12 * max(1, abs(r1))),
        "strictly_increasing_grid": bool(np.all(steps > 0)),
        "value_start": bool(abs(h[0] - h_start) <= tol),
        "value_end": bool(abs(h[-1] - h_end) <= tol),
        "deriv_start": bool(abs(d[0] - d_start) <= tol),
        "deriv_end": bool(abs(d[-1] - d_end) <= tol),
        "strictly_increasing": positive,
        "shape": bool(np.all(sign * second >= -tol)) and bool(np.all(sign * np.diff(d) >= -tol)),
    }
    if "max_step" in profile.meta:
        # grid nodes carry rounding at the scale of the radii, not of the step
        slack = 8 * np.spacing(max(abs(r0), abs(r1)))
        checks["max_step"] = bool(steps.max() <= profile.meta["max_step"] * (1 + 1e-9) + slack)
    if spec.barrier is not None:
        margin = h - float(spec.barrier) * g
        checks["barrier"] = bool(margin.min() > 0)
    checks["ok"] = all(checks.values())
    return checks


def build_convex(spec: InterpolationSpec, tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> SampledProfile:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not convex_feasible(spec):
        raise InfeasibleSpec(f"no convex increasing interpolant for {spec.to_json()}")
    prof = _build_convex_samples(spec, tol, grid_n)
    cert = certify(prof, spec, tol)
    prof.meta["certificate"] = cert
    prof.meta["spec"] = spec.to_json()
    if not cert["ok"]:
        raise CertificationError("convex interpolant failed certification", cert)
    return prof


def build_concave(spec: InterpolationSpec, tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> SampledProfile:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not concave_feasible(spec):
        raise InfeasibleSpec(f"no concave increasing interpolant for {spec.to_json()}")
    mirror = spec.reflected()
    g = _build_convex_samples(mirror, tol, grid_n)
    log_lower = None if g.log_deriv_lower is None else g.log_deriv_lower[::-1].copy()
    prof = SampledProfile(-g.grid[::-1], -g.values[::-1], g.derivs[::-1].copy(), dict(g.meta), log_lower)
    cert = certify(prof, spec, tol)
    if spec.barrier is not None:
        prof.meta["barrier_margin"] = float((prof.values - float(spec.barrier) * prof.grid).min())
    prof.meta["certificate"] = cert
    prof.meta["spec"] = spec.to_json()
    if not cert["ok"]:
        raise CertificationError("concave interpolant failed certification", cert)
    return prof


def build(spec: InterpolationSpec, tol: float = DEFAULT_TOL, grid_n: int = DEFAULT_GRID_N) -> SampledProfile:
    if spec.shape == CONVEX:
        return build_convex(spec, tol, grid_n)
    return build_concave(spec, tol, grid_n)


def read_spec(path) -> InterpolationSpec:
    with open(path) as fh:
        return InterpolationSpec.from_json(json.load(fh))


__all__ = [
    "CONVEX",
    "CONCAVE",
    "InterpolationSpec",
    "SampledProfile",
    "InfeasibleSpec",
    "ConvergenceError",
    "CertificationError",
    "bump",
    "bump_integral",
    "smooth_step",
    "log_smooth_step_lower",
    "convex_feasible",
    "concave_feasible",
    "barrier_holds",
    "build_convex",
    "build_concave",
    "build",
    "certify",
]
