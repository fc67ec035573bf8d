"""Exact cohomology and support-variety computations for finite-dimensional
Lie superalgebras, restricted Lie superalgebras, and characteristic-zero
finite supergroup schemes.

Everything is computed over F_p (p an odd prime) or Q with exact
arithmetic; cohomology tables, variety point sets, and structural
identities are verified by rank computations, never floating point.
"""

from .fields import GF, QQ, Field, FieldScalar, Matrix, SuperMatrix
from .superalgebra import (
    AlgebraElement,
    FiniteGradedSuperalgebra,
    FreeSuperalgebra,
    GeneratorSpec,
    SuperMonomial,
    check_graded_commutativity,
    monomial_basis,
    multiply,
    nilradical_decomposition,
    truncated_algebra,
)
from .liesuper import (
    Enveloping,
    LieSuperalgebra,
    Supermodule,
    adjoint_module,
    build_example,
    build_gl,
    check_supermodule,
    direct_sum,
    dual_module,
    jacobson_p_power,
    natural_module,
    parity_flip,
    pbw_multiply,
    regular_module,
    restrict_module,
    restricted_subalgebra,
    tensor_module,
    trivial_module,
    validate,
)
from .koszul import (
    CohomologyTable,
    KoszulComplex,
    LieCochains,
    build_koszul,
    cohomology,
    ppower_cocycle,
    restrict_cochains,
    verify_f1_identity,
    verify_f2_consequence,
    verify_f2_identity,
)
from .resolution import (
    DualComplex,
    MayResolution,
    TwistingCochain,
    build_resolution,
    build_twisting_cochain,
    dual_complex,
    dual_generator,
    edge_subalgebra_classes,
    is_dual_coboundary,
    is_dual_cocycle,
    vg_cohomology,
)
from .varieties import (
    CrTuple,
    SupportReport,
    char0_odd_space,
    char0_support,
    char0_tensor_support_check,
    complexity_sequence,
    cone_membership,
    cr_membership,
    enumerate_cone,
    enumerate_cr,
    free_over_exterior,
    free_over_odd_point,
    group_closure,
    invariant_dimensions,
    molien_dimensions,
    parity_directsum_checks,
    random_smash_module,
    random_supermodule,
    smash_group_regular,
    smash_lambda_regular,
    smash_trivial,
    support_points,
    tensor_support_check,
    two_divisibility_check,
)

__version__ = "0.1.0"
