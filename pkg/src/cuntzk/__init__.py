"""Exact K-theory toolkit for quasi-free finite-group actions on Cuntz
algebras: character tables, representation-ring arithmetic, Smith normal
form, the crossed-product K-group exact sequence, and a truncated
Fock-space verifier for the underlying operator relations.
"""

__version__ = "0.1.0"

from .groups import (  # noqa: F401
    ConjugacyData,
    FiniteGroup,
    builtin_group,
    class_mult_coefficients,
    conjugacy_classes,
    group_from_table,
)
from .characters import (  # noqa: F401
    CharacterTable,
    GroupAlgebraElement,
    IrrepMatrices,
    central_idempotent,
    character_table,
    inner_product,
    irrep_matrices,
    lambda_expansion_check,
    matrix_units,
)
from .repring import (  # noqa: F401
    RepRingElement,
    class_of,
    mult_matrix,
    product,
    regular_class,
)
from .lattice import (  # noqa: F401
    FgAbelianGroup,
    SmithDecomposition,
    cokernel,
    descend_endomorphism,
    kernel_basis,
    restrict_endomorphism,
    smith_normal_form,
    solve,
)
from .ktheory import (  # noqa: F401
    Decision,
    KGroupsResult,
    QuasiFreeActionSpec,
    action_spec,
    dual_action_k_map,
    gr_criterion,
    k_groups_crossed_product,
    k_groups_fixed_point,
    k_groups_o_infinity,
    kte_check,
    lambda_endomorphism_matrix,
    quotient_spec,
)
from .fock import (  # noqa: F401
    TruncatedFockSpace,
    covariance_check,
    creation_ops,
    degree1_matrix_unit_check,
    fock_rep,
    toeplitz_relations_check,
    truncated_fock_space,
    vacuum_projection,
)
