"""Vector multispaces over GF(q)^n.

A multispace is a multiset of vectors with subspace support and uniform
member multiplicity q^t; the collection of all of them is a graded
modular lattice extending the subspace lattice.  This package provides
exact finite-field linear algebra, the lattice with its metric and
counting formulas, the linearized-polynomial correspondence, multispace
codes with minimum-distance decoding, and a seeded channel simulator for
random linear network coding.
"""

from .errors import (
    BoundViolation,
    ConfigInvalid,
    ContextMismatch,
    DimensionMismatch,
    DivisionByZero,
    EmptyCode,
    FieldTooLarge,
    FormatError,
    LimitExceeded,
    MultispaceError,
    NotAMultispace,
    NotCanonical,
    NotIrreducible,
    NotPrime,
    RankZero,
    RootsNotInField,
    ShapeMismatch,
    ShapeViolation,
    TooFewCodewords,
)
from .fields import Embedding, FieldCtx, FieldElement, extension, field, parse_field_spec
from .linalg import (
    DEFAULT_STATE_LIMIT,
    FqMatrix,
    FqVector,
    Subspace,
    contains,
    enumerate_subspaces,
    is_rref,
    rref,
    span,
    subspace_distance,
    subspace_intersect,
    subspace_leq,
    subspace_sum,
)
from .lattice import (
    BigCount,
    GammaGraph,
    HasseDiagram,
    Multispace,
    RegularityReport,
    VectorMultiset,
    count_covered,
    count_covering,
    count_multispaces,
    covered_neighbors,
    covering_neighbors,
    distance,
    enumerate_multispaces,
    enumerate_multispaces_up_to,
    gamma_graph,
    gaussian_binomial,
    hasse_dot,
    hasse_edges,
    is_distance_regular,
    join,
    meet,
    mspan,
    multiplicity_oracle,
    multiset_leq,
)
from .qpoly import (
    DensePoly,
    LinearizedPoly,
    VectorFieldIso,
    evaluate,
    poly_from_multispace,
    root_multiplicities_by_division,
    roots_multiset,
    vector_field_iso,
)
from .codes import (
    BallProfile,
    MultispaceCode,
    ball,
    ball_profile,
    ball_size,
    codespace_growth,
    decode,
    exhaustive_optimal_code,
    greedy_code,
    min_distance,
    sphere_packing_bound,
)
from .channel import (
    ChannelConfig,
    ChannelRun,
    ChannelSummary,
    EndToEndSummary,
    TrialRecord,
    apply_transform,
    end_to_end,
    random_full_rank,
    random_matrix,
    random_rank,
    run_trials,
    write_trial_csv,
)

__version__ = "0.1.0"
