"""Exact superabundancy analysis for parametrized tropical curves."""

from .abundancy import AbundancyReport, ObstructionTuple, abundancy_matrix, analyze, obstructions, verify_obstruction
from .classify import (
    Genus2Classification,
    IndecomposabilityResult,
    IrreducibilityResult,
    RealizabilityVerdict,
    SearchLimits,
    SuperabundanceClass,
    classify_genus2,
    classify_superabundance,
    core_isomorphic,
    is_indecomposable,
    is_irreducible,
    is_planar_superabundant,
    moduli_dimension,
    realizability_verdict,
)
from .catalog import CurveTemplate, builtin, in_standard_tropical_plane, names, verify_plane_containment
from .linalg import RationalMatrix, kernel_basis, left_kernel_basis, rank, strictly_positive_kernel_point
from .model import (
    CycleBasis,
    DegreeProfile,
    Graph,
    SegmentDecomposition,
    TropicalCurve,
    core_neighbourhood,
    cycle_basis,
    degree_profile,
    genus,
    smoothing,
    subcurve_from_segments,
    validate,
)
from .transforms import AffineMap, DilationRecord, apply_affine, genus2_normal_form, project_onto_obstruction

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
