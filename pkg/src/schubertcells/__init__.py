"""Schubert cells on Grassmann and flag manifolds over R, C and the
quaternions: combinatorial enumeration of cells, closed-form counts and
dimensions, and numerical computation of the symbol of concrete subspaces
and flags."""

from .backend import BACKEND
from .cells import (
    CellPolynomial,
    betti_numbers,
    cell_polynomial,
    euler_characteristic,
    export_poset,
    manifold_dimension,
)
from .errors import (
    CoherenceError,
    FieldMismatchError,
    SchubertError,
    ShapeMismatchError,
    ToleranceError,
)
from .fields import FIELDS, Field, KScalar, scalar_inv, scalar_mul
from .geometry import (
    FlagPoint,
    GeneralStiefelPoint,
    assemble_flag,
    canonical_representative,
    induced_flag,
    membership_V_sigma,
    rotation_apply,
    sample_closure_boundary,
    sample_flag_cell,
    sample_flag_stiefel,
    sample_V_sigma,
    schubert_function,
    schubert_symbol_flag,
    schubert_symbol_subspace,
)
from .linalg import (
    KMatrix,
    KVector,
    StiefelElement,
    Subspace,
    compose_maps,
    coordinate_subspace,
    inner_product,
    intersection_basis,
    intersection_dim_with_coordinate_flag,
    orthonormalize,
    span,
)
from .symbols import (
    ElementarySymbol,
    FlagSignature,
    GeneralSymbol,
    all_signatures,
    compose,
    composed_tower,
    d_decomposition,
    dim_elementary,
    dim_general,
    enumerate_elementary,
    enumerate_general,
    factor_tower,
    is_boundary_candidate,
    leq_elementary,
    top_symbol,
)
from .verifier import SuiteConfig, SuiteReport, run_suites

__version__ = "0.1.0"
