"""Radial models behind Floer-theoretic growth invariants of symplectomorphisms.

Exact period spectra and slopes, certified smooth interpolants, stair-like
Hamiltonians with their orbit actions, rank tables for disk cotangent bundles
of spheres, transfer-morphism arithmetic, and closed-geodesic certificates.
"""

from .domain import LogOf, PeriodSpectrum, SlopeSpec, SymplectoSize, c_constant, is_admissible, liouville_rescale
from .hf_spheres import GradedRanks, hf_ranks, kappa_fibered_twist, les_consistency, visible_rank_bounds
from .smoothing import InterpolationSpec, SampledProfile, build_concave, build_convex
from .stair import StairParams, StairProfile, assemble_stair, check_inequalities, select_constants

__version__ = "0.1.0"
