"""Sphere inspection tours and competitive hyperplane search.

Closed curves whose vertex sets see every point of the unit sphere, the
doubling strategy that turns such a curve into a competitive search for an
unknown hyperplane, and sampling-based verification of both.
"""

from ._kernels import BACKEND
from .curvefile import CurveFormatError, read_curve, read_vertices, write_curve
from .geometry import (
    EPS_GEO,
    EPS_NORM,
    Hyperplane,
    PolylineCurve,
    first_hit,
    norm2,
    sample_unit_direction,
    sample_unit_directions,
    sees,
    sees_any,
    support_max,
)
from .search import (
    DoublingStrategy,
    SearchTranscript,
    build_doubling_strategy,
    check_envelope,
    extract_inspection_curve,
    phase_length,
    phase_path,
    simulate_search,
    strategy_path,
)
from .tour import (
    build_inspection_tour,
    cross_polytope_vertices,
    hamiltonian_cycle,
    hamiltonian_cycle_inductive,
    tour_length,
)
from .verify import (
    CoverReport,
    find_uncovered_witness,
    hemispheres_cover,
    hull_contains_sphere,
    refute_cover,
    simplex_cover,
    vertex_set_sees_all,
    visibility_hull_agreement,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CoverReport",
    "CurveFormatError",
    "DoublingStrategy",
    "EPS_GEO",
    "EPS_NORM",
    "Hyperplane",
    "PolylineCurve",
    "SearchTranscript",
    "build_doubling_strategy",
    "build_inspection_tour",
    "check_envelope",
    "cross_polytope_vertices",
    "extract_inspection_curve",
    "find_uncovered_witness",
    "first_hit",
    "hamiltonian_cycle",
    "hamiltonian_cycle_inductive",
    "hemispheres_cover",
    "hull_contains_sphere",
    "norm2",
    "phase_length",
    "phase_path",
    "read_curve",
    "read_vertices",
    "refute_cover",
    "sample_unit_direction",
    "sample_unit_directions",
    "sees",
    "sees_any",
    "simplex_cover",
    "simulate_search",
    "strategy_path",
    "support_max",
    "tour_length",
    "vertex_set_sees_all",
    "visibility_hull_agreement",
    "write_curve",
    "__version__",
]
