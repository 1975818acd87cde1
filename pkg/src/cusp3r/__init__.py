"""Kinematics, singularities and workspace topology of orthogonal 3R manipulators."""

from .classification import (Domain, DomainSemantics, SeparatingSurfaces,
                             classify_domain, distance_to_nearest_surface,
                             is_cuspidal, surfaces)
from .errors import (AmbiguousLabelError, BoundaryProximityError,
                     CertificationError, DegeneratePolynomialError,
                     NoMatchError, NonGenericError, NonGenericWarning,
                     UnstableCountError)
from .kinematics import (CartesianPoint, CrossSectionPoint, DhParams, IkQuartic,
                         IkResult, JointConfig, det_jacobian_analytic,
                         det_jacobian_numeric, forward_kinematics, ik_quartic,
                         solve_ik)
from .oracle import (GridSpec, cusp_brute, empirical_domain, ik_count_brute,
                     transition_bisect)
from .report import TopologyReport, analyze
from .roots import RootCluster, quartic_real_roots
from .singularity import (Boundary, BranchKind, CuspPoint, SingularBranch,
                          WorkspaceBoundarySet, classify_boundaries, find_cusps,
                          map_to_workspace, singular_lines,
                          trace_singularity_curves)

__version__ = "0.1.0"

__all__ = [
    "Domain",
    "DomainSemantics",
    "SeparatingSurfaces",
    "classify_domain",
    "distance_to_nearest_surface",
    "is_cuspidal",
    "surfaces",
    "AmbiguousLabelError",
    "BoundaryProximityError",
    "CertificationError",
    "DegeneratePolynomialError",
    "NoMatchError",
    "NonGenericError",
    "NonGenericWarning",
    "UnstableCountError",
    "CartesianPoint",
    "CrossSectionPoint",
    "DhParams",
    "IkQuartic",
    "IkResult",
    "JointConfig",
    "det_jacobian_analytic",
    "det_jacobian_numeric",
    "forward_kinematics",
    "ik_quartic",
    "solve_ik",
    "GridSpec",
    "cusp_brute",
    "empirical_domain",
    "ik_count_brute",
    "transition_bisect",
    "TopologyReport",
    "analyze",
    "RootCluster",
    "quartic_real_roots",
    "Boundary",
    "BranchKind",
    "CuspPoint",
    "SingularBranch",
    "WorkspaceBoundarySet",
    "classify_boundaries",
    "find_cusps",
    "map_to_workspace",
    "singular_lines",
    "trace_singularity_curves",
]
