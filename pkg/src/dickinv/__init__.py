"""Dickson invariants of finite subgroups of GF(p^n)."""

from .dickson import (
    AdditivePoly,
    DependentBasisError,
    DicksonVector,
    dickson_eval,
    norm_poly,
    omega_map,
    rank,
    subgroup_elements,
)
from .field import (
    FieldCtx,
    FqElem,
    element_arith,
    frobenius,
    gaussian_binomial,
    make_field,
    subfield_elements,
)
from .monoid import (
    CapWarning,
    ExponentVector,
    enumerate_primitive,
    family_cardinality,
    from_tilde,
    generating_family,
    height,
    is_solution,
    to_tilde,
)
from .separating import (
    InvariantSpec,
    SeparatingReport,
    eval_invariant,
    separating_set,
    separation_check,
    uij_exponents,
    v_exponents,
    vij_exponents,
)
from .structure import (
    CheckReport,
    ClassificationResult,
    codim1_classify,
    comp_identity_check,
    conjecture_check,
    embedding_test,
    is_Fq_space_test,
    rank3_classify,
    rank4_classify,
    rank4_contains_Fp2,
    rank5_partial_classify,
    verify_theorem,
)
from .subspace import (
    OrbitTable,
    Subspace,
    dilate,
    dilated_subfields_in,
    dilation_orbit_reps,
    enumerate_subspaces,
    partition_of,
    stabilizer_order,
)

__version__ = "0.1.0"
