"""Exact Hochschild cohomology of Beilinson algebras of graded down-up algebras.

The package constructs the bound quiver algebra of a down-up algebra with
weights (deg x, deg y) = (1, n) on its Beilinson window, builds its minimal
projective bimodule resolution, computes Hochschild cohomology dimensions by
exact linear algebra, and cross-checks them against the closed-form case
table and the Grothendieck-group trace identity.
"""

from .grothendieck import K0Report, cartan_matrix, coxeter_matrix, happel_check, serre_matrix
from .hochschild import (
    ABSequence,
    BlockDecomposition,
    HHReport,
    InternalCheckError,
    build_L2_closed_form,
    case_representatives,
    classify_case,
    delta_zero_point,
    dual_space,
    extract_blocks,
    hat_d,
    hh_dims_bruteforce,
    hh_dims_closed_form,
    hochschild_report,
    rank_L1,
    rank_L2,
    sequence_ab,
)
from .linalg import (
    Matrix,
    MatrixError,
    ShapeError,
    SingularMatrixError,
    inverse,
    is_unipotent,
    kernel_dim,
    mat_pow,
    multiply as matrix_multiply,
    rank,
    trace,
    transpose,
)
from .quiver import (
    AlgebraElement,
    Arrow,
    DownUpParams,
    Path,
    Relation,
    algebra_dimension,
    block_basis,
    build_quiver,
    free_paths,
    hilbert_coeff,
    lambda_basis,
    multiply,
    normal_form,
    quotient_oracle,
    relations,
)
from .resolution import (
    BimoduleElement,
    BimoduleGenerator,
    FlatComplex,
    ResolutionReport,
    Triple,
    build_d0,
    build_d1,
    build_d2,
    generators,
    triple_basis,
    verify_resolution,
)
from .scalar import (
    FieldMismatchError,
    QuadScalar,
    Rational,
    ScalarError,
    ScalarParseError,
    parse_scalar,
)

__version__ = "0.1.0"
