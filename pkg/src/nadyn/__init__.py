"""Exact solver for reductions, depths and resultant functions of rational
maps over Q(t), with a floating-point degeneration checker for complex
specialisations."""

from .errors import (
    AmbiguousClass,
    BothFormsZero,
    BreakpointUnresolved,
    CoefficientPole,
    DegenerateMap,
    IllConditioned,
    IrrationalDirection,
    IterationCapExceeded,
    LevelCapExceeded,
    NadynError,
    NeedsBaseChange,
    NeedsExtension,
    OutOfRange,
    ParseError,
    PiecewiseBoundaryUnresolved,
    RootFindingFailed,
    SamePoint,
    TargetsOverlap,
    TotallyInvariantPoint,
)
from .polys import QPoly, rational_roots
from .scalars import KScalar, RES_INF, T, base_change, ord_of, residue
from .respoly import (
    DepthDivisor,
    FactorClass,
    FiniteClass,
    HomogeneousForm,
    INFINITY,
    InfinityClass,
    depth_at,
    homogeneous_gcd,
    refine_classes,
    squarefree_decomposition,
)
from .berkspace import (
    CLASSICAL_INF,
    Direction,
    GAUSS,
    Mobius,
    TowardClass,
    TypeIIPoint,
    chart,
    direction_toward,
    path_point,
    rho,
    step_into,
    wedge,
)
from .redux import (
    CoeffReduction,
    IntrinsicReduction,
    RationalMapK,
    coeff_reduction,
    compose,
    conjugate,
    depth,
    intrinsic_data,
    is_fixed_direction,
    iterate,
    make_map,
    minimal_lift,
    precompose,
    postcompose,
    sylvester_resultant,
)
from .crucial import (
    CrucialReport,
    MinLocusResult,
    SlopeReport,
    Verdict,
    crucial_report,
    hyp_res,
    hyp_res_direct,
    min_locus,
    ord_res,
    ord_res_for_chart,
    semistability,
    slope_measured,
    slope_rhs,
)
from .equidist import (
    ConvergenceReport,
    DirectionMeasure,
    depth_sequence,
    predicted_limit,
    totally_invariant,
    tv_distance,
)
from .degeneration import (
    AtomEstimate,
    ComplexMap,
    DegenerationReport,
    INF_C,
    atom_estimate,
    chordal,
    degeneration_report,
    pullback_sample,
    specialize,
)
from .parsing import (
    class_str,
    frac_str,
    map_str,
    parse_direction_class,
    parse_map,
    parse_point,
    parse_scalar,
    point_str,
)

__version__ = "0.1.0"
