"""Exact tools for two-step nilpotent Lie algebras.

Structure tensors over the rationals, Gauger duality, hypergraph
invariants, decomposability tests and a catalog of the classified
algebras in dimensions 8 and 9 with their systematic T-names.
"""

from .algebra import (
    BasisChange,
    CatalogMeta,
    StructureTensor,
    TwoStepAlgebra,
    apply_basis_change,
    bracket,
    coefficient_tensor,
    derived_dimension,
    dimension_bound,
    direct_sum,
    validate,
)
from .catalog import (
    CatalogEntry,
    MatchStrength,
    assign_t_names,
    auxiliary_fixtures,
    catalog,
    distinguish,
    match,
)
from .decompose import (
    BlockDiagonalWitness,
    DecomposabilityVerdict,
    PencilReport,
    Status,
    brute_force_oracle,
    decide,
    hypergraph_witness,
    marginal_rank,
    pencil_analyze,
    trivial_split,
)
from .duality import RelationIdeal, dual, free_algebra, orthogonal_complement, parse_relation, quotient
from .errors import (
    DerivedDimDeficit,
    NotThreeUniform,
    ParseError,
    PreconditionError,
    SkewViolation,
    TwoStepError,
    UnresolvedTie,
    ValidationError,
)
from .invariants import Fingerprint, build_generator_graph, build_hypergraph, components, fingerprint, girth
from .linalg import RatMatrix, RatPoly, determinant, nullspace, rank, rref

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
