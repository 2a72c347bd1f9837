"""Lie-Hamilton systems on the nine two-dimensional Cayley-Klein spaces."""

from .ck_space import CANONICAL_SPACES, KappaPair, ParallelPoint, space
from .errors import (
    CKError,
    ChartSingularityError,
    IntegrationAbort,
    InversionError,
    OffManifoldError,
    OutOfComponentError,
    TriangleDomainError,
)
from .integrator import Trajectory, integrate
from .lie_hamilton import CoefficientSpec, TimeFunction
from .superposition import Branch, superpose, superpose_both, triangle_invariants

__all__ = [
    "CANONICAL_SPACES", "KappaPair", "ParallelPoint", "space",
    "CKError", "ChartSingularityError", "IntegrationAbort", "InversionError",
    "OffManifoldError", "OutOfComponentError", "TriangleDomainError",
    "Trajectory", "integrate", "CoefficientSpec", "TimeFunction",
    "Branch", "superpose", "superpose_both", "triangle_invariants",
]
