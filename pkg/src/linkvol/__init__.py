"""Complex volumes of link complements from planar diagrams.

Builds the dilogarithm potential function of a link diagram, solves the
associated equation set H, evaluates the corrected potential V0 (giving
hyperbolic volume and Chern-Simons invariant), and cross-validates against
the octahedral ideal triangulation the diagram encodes.
"""

from linkvol.dilog import bloch_wigner, lhat, li2, log_p
from linkvol.diagram import (
    Crossing,
    DiagramError,
    LinkDiagram,
    mirror,
    parse_pd,
    serialize,
    twist_knot_diagram,
)
from linkvol.potential import (
    DegenerateRatioError,
    DilogTerm,
    FlatteningError,
    PotentialFunction,
    SolutionPoint,
    VolumeReport,
    build,
    eval_v,
    eval_v0,
    flattening,
    h_residuals,
    is_essential,
    log_derivative,
    log_derivatives,
)
from linkvol.intpoly import IntPoly, RatFunc, univariate_roots
from linkvol.solver import GaugeSpec, NewtonResult, SolutionSet, newton, search
from linkvol.twist import (
    TwistRow,
    twist_defining_polynomial,
    twist_solutions,
    twist_variable_table,
)
from linkvol.triangulation import (
    EdgeClass,
    Tetrahedron,
    Triangulation,
    bw_volume,
    build_triangulation,
    gluing_residuals,
    shape_of_edge_slot,
)

__version__ = "0.1.0"

__all__ = [
    "li2",
    "log_p",
    "bloch_wigner",
    "lhat",
    "Crossing",
    "LinkDiagram",
    "DiagramError",
    "parse_pd",
    "serialize",
    "twist_knot_diagram",
    "mirror",
    "DilogTerm",
    "PotentialFunction",
    "SolutionPoint",
    "VolumeReport",
    "DegenerateRatioError",
    "FlatteningError",
    "build",
    "eval_v",
    "eval_v0",
    "flattening",
    "h_residuals",
    "is_essential",
    "log_derivative",
    "log_derivatives",
    "IntPoly",
    "RatFunc",
    "univariate_roots",
    "GaugeSpec",
    "NewtonResult",
    "SolutionSet",
    "newton",
    "search",
    "TwistRow",
    "twist_defining_polynomial",
    "twist_solutions",
    "twist_variable_table",
    "Tetrahedron",
    "EdgeClass",
    "Triangulation",
    "build_triangulation",
    "shape_of_edge_slot",
    "gluing_residuals",
    "bw_volume",
]
