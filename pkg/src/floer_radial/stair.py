"""Stair-like radial Hamiltonians: constants, inequality certificates, assembly."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import smoothing
from .domain import LogOf, PeriodSpectrum, SlopeSpec, as_fraction, fraction_str, is_admissible
from .smoothing import CONCAVE, CONVEX, InterpolationSpec, SampledProfile


class InfeasibleStair(ValueError):
    pass


@dataclass(frozen=True)
class StairParams:
    a: Fraction
    b: Fraction
    b0: Fraction
    A: Fraction
    B: Fraction
    C: Fraction
    delta1: Fraction
    delta2: Fraction
    delta3: Fraction

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, as_fraction(getattr(self, name)))

    def to_json(self) -> dict:
        return {name: fraction_str(getattr(self, name)) for name in self.__dataclass_fields__}

    @classmethod
    def from_json(cls, data: dict) -> "StairParams":
        return cls(**{name: as_fraction(data[name]) for name in cls.__dataclass_fields__})


def _check_slopes(a, b, b0):
    if not (0 < a < b):
        raise ValueError("need 0 < a < b")
    if not (0 < b0 < b):
        raise ValueError("need 0 < b0 < b")


def stair_feasible(a, b, b0, c_phi) -> bool:
    a, b, b0, c_phi = map(as_fraction, (a, b, b0, c_phi))
    _check_slopes(a, b, b0)
    if c_phi < 0:
        raise ValueError("c_phi is nonnegative")
    return c_phi < min(b - b0, b - a)


def _midpoint(lo: Fraction, hi: Fraction, name: str) -> Fraction:
    assert lo < hi, f"empty selection interval for {name}: ({lo}, {hi})"
    return (lo + hi) / 2


def selection_intervals(a, b, b0, c_phi, A=None, delta1=None, delta2=None, B=None, delta3=None):
    """The open intervals the constants are drawn from, each depending on earlier picks.

    Passing a value for an earlier constant returns the next interval; this is
    how ``select_constants`` walks the chain and how tests check membership.
    """
    gap = min(b - b0, b - a)
    out = {"A": (c_phi / 2, gap / 2)}
    if A is not None:
        out["delta1"] = (A / b, gap / (2 * b))
    if delta1 is not None:
        out["delta2"] = (Fraction(0), 1 - 2 * b * delta1 / (b - b0))
    if delta1 is not None and delta2 is not None:
        out["B"] = (max(a, b0, b - 2 * b * delta1 - b * delta2), b - 2 * b * delta1)
    if B is not None:
        out["delta3"] = (Fraction(0), (B - a) / a)
    if B is not None and delta3 is not None:
        out["C"] = (max(Fraction(0), B - a * (1 + 2 * delta3)), B - a * (1 + delta3))
    return out


def select_constants(a, b, b0, c_phi) -> StairParams:
    """Midpoint of each selection interval, in the order A, delta1, delta2, B, delta3, C."""
    a, b, b0, c_phi = map(as_fraction, (a, b, b0, c_phi))
    if not stair_feasible(a, b, b0, c_phi):
        raise InfeasibleStair(f"C(W,phi) = {c_phi} is not below min(b - b0, b - a) = {min(b - b0, b - a)}")
    A = _midpoint(*selection_intervals(a, b, b0, c_phi)["A"], "A")
    d1 = _midpoint(*selection_intervals(a, b, b0, c_phi, A=A)["delta1"], "delta1")
    d2 = _midpoint(*selection_intervals(a, b, b0, c_phi, delta1=d1)["delta2"], "delta2")
    B = _midpoint(*selection_intervals(a, b, b0, c_phi, delta1=d1, delta2=d2)["B"], "B")
    d3 = _midpoint(*selection_intervals(a, b, b0, c_phi, B=B)["delta3"], "delta3")
    C = _midpoint(*selection_intervals(a, b, b0, c_phi, B=B, delta3=d3)["C"], "C")
    params = StairParams(a, b, b0, A, B, C, d1, d2, d3)
    cert = check_inequalities(params)
    assert cert.ok, f"midpoint selection violated {cert.failed()}"
    return params


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    residual: Fraction
    upper: Fraction | None
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "residual": fraction_str(self.residual),
            "upper": None if self.upper is None else fraction_str(self.upper),
            "passed": self.passed,
        }


@dataclass(frozen=True)
class StairCertificate:
    checks: tuple[InequalityCheck, ...]
    # the first inequality exactly as typeset, 0 < -A - 2b*delta1 - b*delta1 < b*delta1;
    # it can never hold for positive constants and is reported for comparison only
    displayed_ineq1: InequalityCheck

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def passed(self) -> list[bool]:
        return [c.passed for c in self.checks]

    @property
    def residuals(self) -> list[Fraction]:
        return [c.residual for c in self.checks]

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "inequalities": [c.to_json() for c in self.checks],
            "displayed_ineq1": self.displayed_ineq1.to_json(),
        }


def _between(name, value, upper=None):
    ok = value > 0 and (upper is None or value < upper)
    return InequalityCheck(name, value, upper, ok)


def check_inequalities(p: StairParams) -> StairCertificate:
    """Exact evaluation of the five conditions that make h1, h2, h3 exist.

    (1) 0 < b d1 - A < b d1
    (2) 0 < B + 2 b d1 - b (1 - d2) < b d2
    (3) b (1 - d2) - 2 b d1 - (1 - d2) b0 > 0
    (4) B - b0 > 0
    (5) 0 < B - C - a (1 + d3) < a d3
    """
    a, b, b0 = p.a, p.b, p.b0
    d1, d2, d3 = p.delta1, p.delta2, p.delta3
    checks = (
        _between("ineq1", b * d1 - p.A, b * d1),
        _between("ineq2", p.B + 2 * b * d1 - b * (1 - d2), b * d2),
        _between("ineq3", b * (1 - d2) - 2 * b * d1 - (1 - d2) * b0),
        _between("ineq4", p.B - b0),
        _between("ineq5", p.B - p.C - a * (1 + d3), a * d3),
    )
    displayed = _between("ineq1_as_displayed", -p.A - 2 * b * d1 - b * d1, b * d1)
    return StairCertificate(checks, displayed)


def segment_specs(p: StairParams) -> dict[str, InterpolationSpec]:
    """Boundary data of the three smooth pieces."""
    return {
        "h1": InterpolationSpec(p.delta1, p.delta1, p.b, -p.A, -2 * p.b * p.delta1, CONVEX),
        "h2": InterpolationSpec(1 - p.delta2, p.delta2, p.b, -2 * p.b * p.delta1, p.B, CONCAVE, barrier=p.b0),
        "h3": InterpolationSpec(1 + p.delta3, p.delta3, p.a, p.B, p.C, CONVEX),
    }


@dataclass
class Segment:
    name: str
    kind: str  # constant | linear | smooth
    lo: Fraction
    hi: Fraction | None  # None: extends to infinity
    value: Fraction | None = None
    slope: Fraction | None = None
    intercept: Fraction | None = None
    profile: SampledProfile | None = None

    def contains(self, r: float) -> bool:
        return float(self.lo) <= r and (self.hi is None or r <= float(self.hi))

    def h(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "constant":
            return np.full_like(r, float(self.value))
        if self.kind == "linear":
            return float(self.slope) * r + float(self.intercept)
        return self.profile.value_at(r)

    def dh(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "constant":
            return np.zeros_like(r)
        if self.kind == "linear":
            return np.full_like(r, float(self.slope))
        return self.profile.deriv_at(r)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "kind": self.kind,
            "lo": fraction_str(self.lo),
            "hi": None if self.hi is None else fraction_str(self.hi),
        }
        if self.kind == "constant":
            out["value"] = fraction_str(self.value)
        elif self.kind == "linear":
            out["slope"] = fraction_str(self.slope)
            out["intercept"] = fraction_str(self.intercept)
        else:
            out["profile"] = self.profile.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Segment":
        seg = cls(data["name"], data["kind"], as_fraction(data["lo"]),
                  None if data["hi"] is None else as_fraction(data["hi"]))
        if seg.kind == "constant":
            seg.value = as_fraction(data["value"])
        elif seg.kind == "linear":
            seg.slope = as_fraction(data["slope"])
            seg.intercept = as_fraction(data["intercept"])
        else:
            seg.profile = SampledProfile.from_json(data["profile"])
        return seg


@dataclass
class StairProfile:
    params: StairParams
    segments: list[Segment]
    tol: float
    meta: dict = field(default_factory=dict)

    def segment(self, name: str) -> Segment:
        for seg in self.segments:
            if seg.name == name:
                return seg
        raise KeyError(name)

    def __call__(self, r):
        r = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.empty_like(r)
        for i, x in enumerate(r):
            out[i] = next(s for s in self.segments if s.contains(x)).h(x)
        return out

    def junction_gaps(self) -> list[float]:
        gaps = []
        for left, right in zip(self.segments, self.segments[1:]):
            x = float(left.hi)
            gaps.append(float(abs(left.h(x) - right.h(x))))
        return gaps

    def is_continuous(self) -> bool:
        return all(g <= self.tol for g in self.junction_gaps())

    def is_nondecreasing(self) -> bool:
        for seg in self.segments:
            if seg.kind == "linear" and seg.slope < 0:
                return False
            if seg.kind == "smooth" and np.any(np.diff(seg.profile.values) < -self.tol):
                return False
        return all(g <= self.tol for g in self.junction_gaps())

    def h2_above_barrier(self) -> bool:
        prof = self.segment("h2").profile
        return bool(np.all(prof.values > float(self.params.b0) * prof.grid))

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "tol": self.tol,
            "segments": [s.to_json() for s in self.segments],
            "meta": smoothing._jsonable(self.meta),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StairProfile":
        return cls(
            StairParams.from_json(data["params"]),
            [Segment.from_json(s) for s in data["segments"]],
            float(data.get("tol", smoothing.DEFAULT_TOL)),
            dict(data.get("meta", {})),
        )

    def to_tsv(self, samples_per_linear: int = 3) -> str:
        lines = ["segment\tr\th\tdh"]
        for seg in self.segments:
            if seg.kind == "smooth":
                rs = seg.profile.grid
            else:
                hi = seg.hi if seg.hi is not None else seg.lo + 1
                rs = np.linspace(float(seg.lo), float(hi), samples_per_linear)
            for r, h, d in zip(rs, seg.h(rs), seg.dh(rs)):
                lines.append(f"{seg.name}\t{r:.17g}\t{h:.17g}\t{d:.17g}")
        return "\n".join(lines) + "\n"


def assemble_stair(p: StairParams, tol: float = smoothing.DEFAULT_TOL,
                   grid_n: int = smoothing.DEFAULT_GRID_N) -> StairProfile:
    cert = check_inequalities(p)
    if not cert.ok:
        raise InfeasibleStair(f"stair inequalities fail: {cert.failed()}")
    specs = segment_specs(p)
    h1 = smoothing.build_convex(specs["h1"], tol, grid_n)
    h2 = smoothing.build_concave(specs["h2"], tol, grid_n)
    h3 = smoothing.build_convex(specs["h3"], tol, grid_n)
    d1, d2, d3 = p.delta1, p.delta2, p.delta3
    segments = [
        Segment("I", "constant", Fraction(0), d1, value=-p.A),
        Segment("h1", "smooth", d1, 2 * d1, profile=h1),
        Segment("linear_b", "linear", 2 * d1, 1 - d2, slope=p.b, intercept=-2 * p.b * d1),
        Segment("h2", "smooth", 1 - d2, Fraction(1), profile=h2),
        Segment("IV", "constant", Fraction(1), 1 + d3, value=p.B),
        Segment("h3", "smooth", 1 + d3, 1 + 2 * d3, profile=h3),
        Segment("linear_a", "linear", 1 + 2 * d3, None, slope=p.a, intercept=p.C),
    ]
    prof = StairProfile(p, segments, tol, {"certificate": cert.to_json()})
    gaps = prof.junction_gaps()
    prof.meta["junction_gaps"] = gaps
    if not prof.is_continuous():
        raise smoothing.CertificationError("stair profile is discontinuous", {"junction_gaps": gaps})
    if not prof.h2_above_barrier():
        raise smoothing.CertificationError("h2 dips below r*b0", {})
    return prof


def build_stair(a, b, b0, c_phi, tol=smoothing.DEFAULT_TOL, grid_n=smoothing.DEFAULT_GRID_N):
    params = select_constants(a, b, b0, c_phi)
    return params, assemble_stair(params, tol, grid_n)


def stair_slopes_from_spectrum(a, b, spectrum_w1: PeriodSpectrum, spectrum_w2: PeriodSpectrum | None = None):
    """Check admissibility of a (for W2) and b (for W1) and return b0."""
    a, b = as_fraction(a), as_fraction(b)
    spectrum_w2 = spectrum_w2 or spectrum_w1
    if not is_admissible(SlopeSpec(a), spectrum_w2):
        raise ValueError(f"a = {a} is a period of the W2 boundary")
    if not is_admissible(SlopeSpec(b), spectrum_w1):
        raise ValueError(f"b = {b} is a period of the W1 boundary")
    b0 = spectrum_w1.greatest_below(b)
    if b0 is None:
        raise ValueError("no Reeb period below b")
    return b0


def shrink_exponent(a, b, b0, c_phi) -> LogOf:
    """A Liouville time t = ln(c_phi / target) bringing c_phi to half the feasibility bound.

    Returns ln 1 = 0 when c_phi is already feasible.
    """
    a, b, b0, c_phi = map(as_fraction, (a, b, b0, c_phi))
    target = min(b - b0, b - a) / 2
    if c_phi <= target:
        return LogOf(1)
    return LogOf(c_phi / target)

