"""ribbonforge: exact construction and verification of Radford Hopf algebras,
their duals and Drinfeld doubles, and classification of ribbon elements."""

from .cyclotomic import (
    CycContext,
    CycNumber,
    LinearAlgebraError,
    SingularMatrixError,
    cyclotomic_polynomial,
    invert_matrix,
    make_context,
    nullspace,
    root_power,
    solve_linear,
)
from .double import (
    DoubleData,
    RMatrix,
    build_double,
    drinfeld_u,
    explicit_drinfeld_u,
    explicit_r_matrix,
    r_apply,
    r_inverse,
    r_matrix,
    rop_apply,
    verify_dual_basis_formula,
    verify_quasitriangular,
    verify_u_comult,
)
from .hopf import (
    Element,
    Functional,
    GrouplikeSet,
    HopfAlgebra,
    HopfAlgebraData,
    HopfError,
    IntegralError,
    TensorElement,
    act_left,
    act_right,
    antipode,
    antipode_inv,
    comultiply,
    coopposite,
    counit,
    distinguished_grouplike,
    distinguished_grouplike_dual,
    dual_hopf,
    dual_left_integrals,
    dual_right_integrals,
    grouplike_set,
    left_integrals,
    multiply,
    pairing,
    right_integrals,
    tensor_of,
    verify_hopf_axioms,
)
from .qcalc import q_binomial, q_factorial, q_int
from .radford import (
    alpha_beta,
    build_radford,
    build_taft,
    element_power,
    verify_dual_structure,
)
from .ribbon import (
    RibbonCertificate,
    RibbonError,
    RibbonReport,
    base_grouplikes,
    classify_ribbon,
    distinguished_data,
    dual_characters,
    explicit_ribbon_formulas,
    g_alpha_element,
    grouplike_square_roots,
    square_root_inventory,
    verify_ribbon_axioms,
)

__all__ = [
    "CycContext",
    "CycNumber",
    "DoubleData",
    "Element",
    "Functional",
    "GrouplikeSet",
    "HopfAlgebra",
    "HopfAlgebraData",
    "HopfError",
    "IntegralError",
    "LinearAlgebraError",
    "RMatrix",
    "RibbonCertificate",
    "RibbonError",
    "RibbonReport",
    "SingularMatrixError",
    "TensorElement",
    "act_left",
    "act_right",
    "alpha_beta",
    "antipode",
    "antipode_inv",
    "base_grouplikes",
    "build_double",
    "build_radford",
    "build_taft",
    "classify_ribbon",
    "comultiply",
    "coopposite",
    "counit",
    "cyclotomic_polynomial",
    "distinguished_data",
    "distinguished_grouplike",
    "distinguished_grouplike_dual",
    "drinfeld_u",
    "dual_characters",
    "dual_hopf",
    "dual_left_integrals",
    "dual_right_integrals",
    "element_power",
    "explicit_drinfeld_u",
    "explicit_r_matrix",
    "explicit_ribbon_formulas",
    "g_alpha_element",
    "grouplike_set",
    "grouplike_square_roots",
    "invert_matrix",
    "left_integrals",
    "make_context",
    "multiply",
    "nullspace",
    "pairing",
    "q_binomial",
    "q_factorial",
    "q_int",
    "r_apply",
    "r_inverse",
    "r_matrix",
    "right_integrals",
    "root_power",
    "rop_apply",
    "solve_linear",
    "square_root_inventory",
    "tensor_of",
    "verify_dual_basis_formula",
    "verify_dual_structure",
    "verify_hopf_axioms",
    "verify_quasitriangular",
    "verify_ribbon_axioms",
    "verify_u_comult",
]
