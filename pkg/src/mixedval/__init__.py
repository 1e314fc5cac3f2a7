"""Exact mixed valuations of lattice and rational polytopes.

Everything runs over the rationals with no floating point anywhere:
convex hulls, face lattices, and Minkowski sums in
:mod:`mixedval.geometry`; lattice-point and relative-interior counting
in :mod:`mixedval.counting`; alternating-sum mixed combinations,
binomial-basis dilation polynomials, and h-vectors in
:mod:`mixedval.valuations`; half-open dissections with counting
certificates in :mod:`mixedval.dissections`; the matroid-intersection
positivity criterion in :mod:`mixedval.positivity`; JSON instance files
in :mod:`mixedval.jsonio`; randomized self-checks in
:mod:`mixedval.verify`; and a command line front end in
:mod:`mixedval.cli`.
"""

from .counting import (
    HalfOpenPolytope,
    count_half_open,
    count_lattice_points,
    count_relint_points,
    euler_relint_value,
    half_open_points,
    lattice_points,
    relint_points,
)
from .dissections import (
    CayleyPolytope,
    CertificateError,
    DifferenceCertificate,
    Dissection,
    MixedCell,
    boxcell_census,
    boxcell_dissection,
    cayley_central_slice,
    cayley_polytope,
    certify_difference,
    certify_dilations,
    certify_dissection,
    difference_counts,
    dilated_cell_counts,
    direction_matching_point,
    fine_mixed_dissection,
    generic_opener,
    half_open_by_direction,
    half_open_by_point,
    mixed_difference_certificate,
    open_dissection,
    order_simplex,
    placing_triangulation,
    staircase_dissection,
    staircase_refine,
)
from .geometry import (
    EMPTY,
    DimensionMismatch,
    EmptyPolytopeError,
    Face,
    FaceLattice,
    GeometryError,
    InexactSum,
    LatticeMismatch,
    NotGeneric,
    Polytope,
    contains,
    convex_hull,
    cut_halfspace,
    dilate,
    exact_volume,
    face_lattice,
    hyperplane_section,
    minkowski_sum,
    minkowski_sum_all,
    origin_polytope,
    point_polytope,
    scale,
    translate,
)
from .jsonio import (
    Instance,
    InstanceError,
    canonical_dumps,
    dissection_from_json,
    dissection_to_json,
    format_rational,
    instance_digest,
    instance_from_json,
    instance_to_json,
    load_instance,
    parse_rational,
)
from .positivity import (
    SEGMENT_CRITERION_VALUATIONS,
    MatroidOracle,
    Segment,
    candidate_segments,
    cylinder_lower_bound,
    decide_positive,
    direction_matroid,
    matroid_intersection,
    owner_matroid,
)
from .samplers import (
    random_direction,
    random_lattice_box,
    random_lattice_polytope,
    random_lattice_simplex,
    random_nested_pair,
    random_rational_polytope,
    random_relint_point,
)
from .valuations import (
    ConformanceReport,
    HStarVector,
    MixedPolynomial,
    MonotoneViolation,
    ReconstructionError,
    Valuation,
    WeakMonotoneReport,
    builtin_valuations,
    charac_recursion_check,
    check_valuation,
    cm,
    cm_multi,
    h_star_vector,
    mixed_polynomial,
    shift_valuation,
    weak_hstar_monotone_check,
)
from .verify import SuiteResult, available_suites, run_suite, run_suites

__version__ = "0.1.0"

__all__ = [
    "CayleyPolytope",
    "CertificateError",
    "ConformanceReport",
    "DifferenceCertificate",
    "DimensionMismatch",
    "Dissection",
    "EMPTY",
    "EmptyPolytopeError",
    "Face",
    "FaceLattice",
    "GeometryError",
    "HStarVector",
    "HalfOpenPolytope",
    "InexactSum",
    "Instance",
    "InstanceError",
    "LatticeMismatch",
    "MatroidOracle",
    "MixedCell",
    "MixedPolynomial",
    "MonotoneViolation",
    "NotGeneric",
    "Polytope",
    "ReconstructionError",
    "SEGMENT_CRITERION_VALUATIONS",
    "Segment",
    "SuiteResult",
    "Valuation",
    "WeakMonotoneReport",
    "available_suites",
    "boxcell_census",
    "boxcell_dissection",
    "builtin_valuations",
    "canonical_dumps",
    "candidate_segments",
    "cayley_central_slice",
    "cayley_polytope",
    "certify_difference",
    "certify_dilations",
    "certify_dissection",
    "charac_recursion_check",
    "check_valuation",
    "cm",
    "cm_multi",
    "contains",
    "convex_hull",
    "count_half_open",
    "count_lattice_points",
    "count_relint_points",
    "cut_halfspace",
    "cylinder_lower_bound",
    "decide_positive",
    "difference_counts",
    "dilate",
    "dilated_cell_counts",
    "direction_matching_point",
    "direction_matroid",
    "dissection_from_json",
    "dissection_to_json",
    "euler_relint_value",
    "exact_volume",
    "face_lattice",
    "fine_mixed_dissection",
    "format_rational",
    "generic_opener",
    "h_star_vector",
    "half_open_by_direction",
    "half_open_by_point",
    "half_open_points",
    "hyperplane_section",
    "instance_digest",
    "instance_from_json",
    "instance_to_json",
    "lattice_points",
    "load_instance",
    "matroid_intersection",
    "minkowski_sum",
    "minkowski_sum_all",
    "mixed_difference_certificate",
    "mixed_polynomial",
    "open_dissection",
    "order_simplex",
    "origin_polytope",
    "owner_matroid",
    "parse_rational",
    "placing_triangulation",
    "point_polytope",
    "random_direction",
    "random_lattice_box",
    "random_lattice_polytope",
    "random_lattice_simplex",
    "random_nested_pair",
    "random_rational_polytope",
    "random_relint_point",
    "relint_points",
    "run_suite",
    "run_suites",
    "scale",
    "shift_valuation",
    "staircase_dissection",
    "staircase_refine",
    "translate",
    "weak_hstar_monotone_check",
]
