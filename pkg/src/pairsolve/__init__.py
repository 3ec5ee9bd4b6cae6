"""Recover a pair of points from sums of inverse squared distances to fixed anchors."""

from .coaxial import CoaxialConfig, enumerate_axis_solutions, realize_anchors, w_polynomial
from .elimination import certificates, phi, psi, recover_x
from .errors import (
    ConditionsNotMetError,
    ConfigParseError,
    CoplanarFrameError,
    DegenerateConfigurationError,
    EvaluationError,
    PairSolveError,
    SingularLocusError,
)
from .genericity import Configuration, GenericityReport, SphereSpec, check_conditions, omega
from .geom import Point3
from .identifiability import BadAnchorProbe, anchor_residual, is_bad_anchor, sample_bad_surface
from .ratpoly import RatPoly, real_roots
from .solver import SolutionPair, SolveOptions, SolveReport, residual, solve, solve_extended

__all__ = [
    "BadAnchorProbe",
    "CoaxialConfig",
    "ConditionsNotMetError",
    "ConfigParseError",
    "Configuration",
    "CoplanarFrameError",
    "DegenerateConfigurationError",
    "EvaluationError",
    "GenericityReport",
    "PairSolveError",
    "Point3",
    "RatPoly",
    "SingularLocusError",
    "SolutionPair",
    "SolveOptions",
    "SolveReport",
    "SphereSpec",
    "anchor_residual",
    "certificates",
    "check_conditions",
    "enumerate_axis_solutions",
    "is_bad_anchor",
    "omega",
    "phi",
    "psi",
    "real_roots",
    "realize_anchors",
    "recover_x",
    "residual",
    "sample_bad_surface",
    "solve",
    "solve_extended",
    "w_polynomial",
]
