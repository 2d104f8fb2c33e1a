"""Exact p-adic operator algebra computations at fixed precision.

Everything works with residues mod p**N: quasi-Hilbert spaces as unimodular
Gram matrices, *-algebras by structure constants, the GNS construction,
standard-form embeddings, commutants and simplicity of groupoid algebras.
"""

from .core import (
    DEFAULT_PRECISION,
    NormValue,
    PadicInt,
    arith,
    inv_unit,
    is_square,
    nonresidue,
    norm,
    padic,
    sqrt,
    two_squares,
    valuation,
)
from .exceptions import *  # noqa: F401,F403
from .groupoid import (
    FiniteGroup,
    FiniteGroupoid,
    action_groupoid,
    class_sums,
    cyclic_group,
    disjoint_union,
    group_algebra,
    group_groupoid,
    groupoid_checks,
    is_simple_fp,
    p_simplicity,
    pair_groupoid,
    quaternion_group,
    steinberg_fp,
    symmetric_group,
)
from .hilbert import (
    OrthoBasis,
    QuasiHilbert,
    adjoint,
    bounded_algebra,
    direct_sum,
    normalize_square_classes,
    orthogonal_basis,
    pairing,
    validate,
)
from .linalg import (
    PadicMatrix,
    congruence_diagonalize,
    det_is_unit,
    echelonize,
    kernel_saturated,
    mat_arith,
    op_norm,
)
from .standard import (
    column_rep,
    represent_star_algebra,
    standardize,
    tate_truncation_demo,
    twisted_m2n_embed,
)
from .star import (
    QuasiState,
    Representation,
    StarAlgebra,
    coordinate_quasi_states,
    direct_sum_reps,
    gns,
    matrix_algebra,
    mod_p,
    quasi_cstar_certify,
    ultra_antisymmetric_space,
    unitize,
    validate_algebra,
    validate_quasi_state,
)
from .vn import MatrixSubalgebra, bicommutant_check, center, commutant, is_factor

__version__ = "0.1.0"
