"""Floer homology ranks of disk cotangent bundles of spheres, over Z/2.

HF_k(D*S^n, 2 pi m + eps) is known in closed form; everything here is rank
bookkeeping against that closed form and the long exact sequence relating
consecutive slopes 2 pi l + eps and 2 pi (l + 1) + eps, whose third term is
the homology of the unit cotangent bundle S*S^n shifted by
Delta_{l+1} = -(2l + 1)(n - 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping


@dataclass(frozen=True)
class GradedRanks:
    """Degree -> dimension of a graded Z/2 vector space with finite support."""

    dims: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in self.dims.items() if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("dimensions are nonnegative")
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def __getitem__(self, k: int) -> int:
        return self.dims.get(k, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def support(self) -> set[int]:
        return set(self.dims)

    def max_degree(self) -> int:
        return max(self.dims, default=0)

    def min_degree(self) -> int:
        return min(self.dims, default=0)

    def with_dim(self, k: int, value: int) -> "GradedRanks":
        dims = dict(self.dims)
        dims[k] = value
        return GradedRanks(dims)

    def to_json(self) -> dict:
        return {str(k): v for k, v in self.dims.items()}


def _check_n(n: int):
    if n < 2:
        raise ValueError("sphere dimension n must be at least 2")


def boundary_homology(n: int) -> GradedRanks:
    """H_*(S*S^n; Z/2): the Euler class vanishes mod 2, so it is H(S^n) (x) H(S^(n-1))."""
    _check_n(n)
    return GradedRanks({0: 1, n - 1: 1, n: 1, 2 * n - 1: 1})


def sphere_homology(n: int) -> GradedRanks:
    _check_n(n)
    return GradedRanks({0: 1, n: 1})


def grading_shift(n: int, ell: int) -> int:
    """Delta_ell, the degree offset of the boundary term entering at slope 2 pi ell."""
    return -(2 * ell - 1) * (n - 1)


@dataclass(frozen=True)
class LESWindow:
    """The step ell -> ell + 1 of the long exact sequence."""

    ell: int
    shift: int

    @classmethod
    def step(cls, n: int, ell: int) -> "LESWindow":
        if ell < 0:
            raise ValueError("ell >= 0")
        return cls(ell, grading_shift(n, ell + 1))


def hf_ranks(n: int, m: int) -> GradedRanks:
    """dim HF_k(D*S^n, 2 pi m + eps).

    m = 0 is the small slope eps, where HF is the homology of S^n (degrees 0, n).
    """
    _check_n(n)
    if m < 0:
        raise ValueError("m must be nonnegative")
    if n == 2 and m >= 1:
        dims = {0: 1, 1: 1, 2 * m + 1: 1, 2 * m + 2: 1}
        dims.update({k: 2 for k in range(2, 2 * m + 1)})
        return GradedRanks(dims)
    dims: dict[int, int] = {}
    for ell in range(2 * m + 1):
        for k in (ell * (n - 1), ell * (n - 1) + n):
            dims[k] = dims.get(k, 0) + 1
    return GradedRanks(dims)


class SHRanks:
    """Degree-wise limit of hf_ranks(n, m) as m -> infinity (eventually periodic)."""

    def __init__(self, n: int):
        _check_n(n)
        self.n = n

    def __getitem__(self, k: int) -> int:
        n = self.n
        count = 0
        if k >= 0 and k % (n - 1) == 0:
            count += 1
        if k >= n and (k - n) % (n - 1) == 0:
            count += 1
        return count

    def window(self, kmax: int) -> GradedRanks:
        return GradedRanks({k: self[k] for k in range(kmax + 1)})

    def generators_up_to(self, ell_max: int) -> int:
        """Number of generators l(n-1), l(n-1)+n with 0 <= l <= ell_max."""
        return 2 * (ell_max + 1)


def sh_ranks(n: int) -> SHRanks:
    return SHRanks(n)


@dataclass
class LESCheck:
    ell: int
    k: int
    bound_a: bool
    bound_b: bool
    stabilization: bool | None  # None: degree outside the stabilization window


@dataclass
class LESCertificate:
    n: int
    m: int
    checks: list[LESCheck]

    @property
    def core_ok(self) -> bool:
        """Exactness bounds (a) and (b); independent of any stabilization window."""
        return all(c.bound_a and c.bound_b for c in self.checks)

    @property
    def stabilization_ok(self) -> bool:
        return all(c.stabilization is not False for c in self.checks)

    def failures(self, which: str = "ab") -> list[tuple[int, int, str]]:
        out = []
        for c in self.checks:
            if "a" in which and not c.bound_a:
                out.append((c.ell, c.k, "a"))
            if "b" in which and not c.bound_b:
                out.append((c.ell, c.k, "b"))
            if "c" in which and c.stabilization is False:
                out.append((c.ell, c.k, "c"))
        return out


def stabilization_window(n: int, ell: int) -> int:
    """HF_k at slope 2 pi ell + eps equals SH_k for k below this degree."""
    return 2 * ell * (n - 1)


def les_consistency(n: int, m: int, table: Mapping[int, GradedRanks] | None = None) -> LESCertificate:
    """Check the rank inequalities forced by exactness for every step l -> l+1, l < m.

    (a) dim HF_k(l+1) <= dim HF_k(l) + dim H_{k+D}(S*S^n)
    (b) dim HF_k(l)   <= dim HF_k(l+1) + dim H_{k+D+1}(S*S^n)
    (c) dim HF_k(l) == dim SH_k for k below the stabilization window

    ``table`` overrides hf_ranks for selected slopes (fault injection).
    """
    _check_n(n)
    if m < 1:
        raise ValueError("m must be at least 1")
    table = dict(table or {})
    ranks = {ell: table.get(ell) or hf_ranks(n, ell) for ell in range(m + 1)}
    bnd = boundary_homology(n)
    sh = sh_ranks(n)
    checks = []
    for ell in range(m):
        shift = grading_shift(n, ell + 1)
        lo_k = min(ranks[ell].min_degree(), ranks[ell + 1].min_degree(), -shift - 2 * n) - 1
        hi_k = max(ranks[ell].max_degree(), ranks[ell + 1].max_degree(), -shift + 2 * n) + 1
        window = stabilization_window(n, ell)
        for k in range(lo_k, hi_k + 1):
            cur, nxt = ranks[ell][k], ranks[ell + 1][k]
            a = nxt <= cur + bnd[k + shift]
            b = cur <= nxt + bnd[k + shift + 1]
            stab = (cur == sh[k]) if 0 <= k < window else None
            checks.append(LESCheck(ell, k, a, b, stab))
    return LESCertificate(n, m, checks)


def stable_degrees(n: int, m: int) -> list[int]:
    """Degrees k in the support of HF(m) where every later continuation map is an iso.

    HF_k(l) -> HF_k(l+1) is an isomorphism when both neighbouring boundary
    terms H_{k+D} and H_{k+D+1} vanish; if that holds for all l >= m then
    HF_k(m) maps isomorphically onto SH_k.
    """
    bnd = boundary_homology(n)
    out = []
    for k in sorted(hf_ranks(n, m).support()):
        ell, stable = m, True
        while (2 * ell + 1) * (n - 1) <= k + 1:
            shift = grading_shift(n, ell + 1)
            if bnd[k + shift] or bnd[k + shift + 1]:
                stable = False
                break
            ell += 1
        if stable:
            out.append(k)
    return out


@dataclass(frozen=True)
class KappaResult:
    limit: Fraction
    ratios: tuple[tuple[int, Fraction], ...]


def kappa_fibered_twist(n: int, mmax: int = 10) -> KappaResult:
    """Iterated ratio of the fibered Dehn twist: dim HF(tau^m, eps) = dim HF(2 pi m + eps) = 4m + 2."""
    _check_n(n)
    if mmax < 1:
        raise ValueError("mmax >= 1")
    ratios = []
    for m in range(1, mmax + 1):
        total = hf_ranks(n, m).total()
        ratios.append((m, Fraction(total, m)))
    # (4m + 2)/m = 4 + 2/m; the closed-form total fixes the limit exactly
    slope = Fraction(hf_ranks(n, 2).total() - hf_ranks(n, 1).total())
    return KappaResult(slope, tuple(ratios))


def kappa_of_constant_sequence(value: int) -> Fraction:
    """kappa of a symplectomorphism whose HF dimension does not grow (e.g. the identity)."""
    return Fraction(0)


@dataclass(frozen=True)
class VisibleRank:
    lower: int
    upper: int
    exact: int | None

    def consistent(self) -> bool:
        if self.exact is None:
            return self.lower <= self.upper
        return self.lower <= self.exact <= self.upper


# r(D*S^n, 2 pi + eps) for every n >= 2
VISIBLE_RANK_FIRST_SLOPE = 6


def visible_rank_bounds(n: int, m: int) -> VisibleRank:
    """Bounds on the rank of HF(D*S^n, 2 pi m + eps) -> SH(D*S^n)."""
    _check_n(n)
    if m < 1:
        raise ValueError("m must be at least 1")
    hf = hf_ranks(n, m)
    lower = sum(hf[k] for k in stable_degrees(n, m))
    exact = VISIBLE_RANK_FIRST_SLOPE if m == 1 else None
    return VisibleRank(lower, hf.total(), exact)


def injective_steps(n: int, ell_max: int) -> list[bool]:
    """For each step l -> l+1 (l < ell_max), whether totals force HF(l) -> HF(l+1) to be injective.

    In an exact sequence A -> B -> C -> A[-1] of finite total dimension,
    dim B = dim A + dim C - 2 rank(C -> A[-1]); equality of totals therefore
    kills every connecting map.
    """
    c = boundary_homology(n).total()
    return [hf_ranks(n, ell + 1).total() == hf_ranks(n, ell).total() + c for ell in range(ell_max)]


def rank_exceeds_betti(visible_rank: int, betti_total: int) -> bool:
    return visible_rank > betti_total


def geodesic_rank_hypothesis(n: int, m: int = 1) -> bool:
    """Does r(D*S^n, 2 pi m + eps) exceed the total Betti number of S^n?"""
    vr = visible_rank_bounds(n, m)
    if vr.exact is None:
        raise ValueError(f"no exact visible rank available for m = {m}")
    return rank_exceeds_betti(vr.exact, sphere_homology(n).total())
