"""Exact-arithmetic lattice isomorphism toolkit.

Lattices are presented by rational Gram matrices and every computation
(reduction, enumeration, duality, isomorphism search) runs in exact integer
and rational arithmetic. Randomness appears only where the algorithms call
for it (isolating-vector sampling, discrete Gaussians) and is always seeded.
"""

from .cli import cli_main, format_lattice_file, main, parse_lattice_file
from .errors import (
    BoundTooLarge,
    CapExceeded,
    DimensionMismatch,
    LatticeError,
    NotPositiveDefinite,
    NotSublattice,
    NotSymmetric,
    NotUnique,
    PreconditionViolated,
    RankDeficient,
    RetryLimitExceeded,
    SingularMatrix,
    WidthTooSmall,
    ZeroLattice,
)
from .gaussian import (
    GaussianParam,
    Transcript,
    estimate_acceptance,
    estimate_sublattice_mass,
    gaussian_param,
    linear_independence_rate,
    min_sample_count,
    sample_discrete_gaussian,
    sample_generating_gram,
    smoothness_floor_sq,
    szk_round,
)
from .isolation import (
    Chain,
    EliminationOracle,
    estimate_isolation_prob,
    extract_chain,
    isolation_radius,
    sample_isolating,
    span_oracle,
    top_d_oracle,
    trivial_oracle,
)
from .lattice import (
    Lattice,
    basis_from_generators,
    det_sq,
    dual,
    dual_norm_sq,
    index_of,
    intersect_with_span,
    is_isomorphism,
    make_lattice,
    norm_sq,
    project_away,
)
from .lip import (
    IsolatingDual,
    IsoSet,
    automorphisms,
    find_isolating_dual,
    lip_decide,
    lip_equal_minima,
    lip_general,
    shortest_vector_set,
)
from .reduction import (
    GSO,
    ReducedBasis,
    dual_kz_basis,
    enumerate_below,
    gso,
    kz_basis,
    lll_reduce,
    shortest_vector,
    successive_minima_sq,
)

__version__ = "0.1.0"

__all__ = [
    "BoundTooLarge",
    "CapExceeded",
    "Chain",
    "DimensionMismatch",
    "EliminationOracle",
    "GSO",
    "GaussianParam",
    "IsoSet",
    "IsolatingDual",
    "Lattice",
    "LatticeError",
    "NotPositiveDefinite",
    "NotSublattice",
    "NotSymmetric",
    "NotUnique",
    "PreconditionViolated",
    "RankDeficient",
    "ReducedBasis",
    "RetryLimitExceeded",
    "SingularMatrix",
    "Transcript",
    "WidthTooSmall",
    "ZeroLattice",
    "automorphisms",
    "basis_from_generators",
    "cli_main",
    "det_sq",
    "dual",
    "dual_kz_basis",
    "dual_norm_sq",
    "enumerate_below",
    "estimate_acceptance",
    "estimate_isolation_prob",
    "estimate_sublattice_mass",
    "extract_chain",
    "find_isolating_dual",
    "format_lattice_file",
    "gaussian_param",
    "gso",
    "index_of",
    "intersect_with_span",
    "is_isomorphism",
    "isolation_radius",
    "kz_basis",
    "linear_independence_rate",
    "lip_decide",
    "lip_equal_minima",
    "lip_general",
    "lll_reduce",
    "main",
    "make_lattice",
    "min_sample_count",
    "norm_sq",
    "parse_lattice_file",
    "project_away",
    "sample_discrete_gaussian",
    "sample_generating_gram",
    "sample_isolating",
    "shortest_vector",
    "shortest_vector_set",
    "smoothness_floor_sq",
    "span_oracle",
    "successive_minima_sq",
    "szk_round",
    "top_d_oracle",
    "trivial_oracle",
]
