"""Exact differential geometry on finite groups.

Differential calculi, braid operators, linear connections, dual
structures and metrics, invariant tensors, and covariant calculi on
finite group sets, all over exact rational arithmetic.
"""

from .braid import (
    DecompositionReport,
    Rank3Field,
    SigmaOperator,
    TensorField,
    TwoForm,
    antisymmetrize,
    braid_check,
    classify,
    d_one_form,
    d_theta,
    decompose,
    project_two_form,
    sigma_apply,
    sigma_build,
    sigma_order,
    symmetric_universal_sigma_order,
    symmetrize,
    tensor_of_one_forms,
    wedge,
)
from .calculus import (
    DifferentialCalculus,
    OneForm,
    StructureConstants,
    differential,
    enumerate_bicovariant,
    enumerate_left_covariant,
    export_dot,
    from_edges,
    from_hatG,
    omega_form,
    omega_theta_convert,
    rho,
    theta_commute,
    theta_form,
    trivial,
    universal,
)
from .catalog import small_group_catalog
from .connection import (
    Connection,
    ExtensibilityReport,
    TorsionFreeFamily,
    TwoSidedConnection,
    bimodule_hom_space,
    c_connection,
    canonical_connection,
    extend_on_pair,
    extend_to_tensor,
    extensibility_analysis,
    flatness_representation_check,
    invariance_constraints,
    nabla_sigma,
    nabla_sigma_inverse,
    sigma_family,
    sigma_for,
    solve_torsion_free,
    two_sided_connection,
    two_sided_space,
    verify_invariance_transport,
)
from .dual import (
    DualConnection,
    Metric,
    VectorField,
    canonical_form_and_torsion,
    dual_connection,
    metric_compatibility,
    metric_symmetry,
    pair,
    pair_tensor_field,
    sigma_prime,
    sigma_prime_connection,
    sigma_x,
    sigma_x_apply,
    vector_field_basis,
    verify_dual_invariance,
)
from .errors import FiniteGeoError
from .funcs import GroupFunction, delta, ell, left_translate, r_op, right_translate
from .groups import (
    FiniteGroup,
    alternating,
    cyclic,
    dihedral,
    direct_product,
    from_cayley_table,
    from_permutations,
    symmetric,
)
from .gset import (
    GSet,
    covariant_calculi,
    gset_from_permutations,
    irreducible_calculi,
    left_translation_gset,
    pair_orbits,
)
from .invariants import SolutionSpace, pattern_matrix, solve_bi_invariant, solve_symmetry

__version__ = "0.1.0"
