"""Homology and characteristic-class computations for compact oriented
4-manifolds with connected boundary, from relative trisection diagram data,
over exact integer arithmetic."""

from .exactalg import (
    AbelianGroup,
    IntMatrix,
    Lattice,
    SmithDecomposition,
    hermite_column_form,
    is_unimodular,
    kernel_basis,
    lattice_intersect,
    lattice_sum,
    orthogonal_complement,
    quotient_presentation,
    snf,
    solve_integer,
    solve_mod2,
)
from .surface import (
    Diagram,
    DiagramError,
    DiagramMatrices,
    PairingConventions,
    PreconditionError,
    SurfaceSignature,
    ValidationCheck,
    ValidationReport,
    infer_k,
    intersection_number,
    j_matrix,
    l_lattice,
    l_partial_lattice,
    q_matrix,
    r_matrix,
    require_valid,
    s_matrix,
    to_relative,
    validate,
    validate_matrices,
)
from .homology import (
    ChainComplex,
    HomologyResult,
    IntersectionForm,
    build_cy,
    build_cz,
    euler_characteristic,
    h_closed_forms,
    homology_of,
    intersection_form,
    phi,
)
from .charclass import (
    SpinVerdict,
    W2Representative,
    linking_matrix_y,
    linking_matrix_z,
    spin_y,
    spin_z,
    w2_y,
    w2_z,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "ChainComplex",
    "Diagram",
    "DiagramError",
    "DiagramMatrices",
    "HomologyResult",
    "IntMatrix",
    "IntersectionForm",
    "Lattice",
    "PairingConventions",
    "PreconditionError",
    "SmithDecomposition",
    "SpinVerdict",
    "SurfaceSignature",
    "ValidationCheck",
    "ValidationReport",
    "W2Representative",
    "build_cy",
    "build_cz",
    "euler_characteristic",
    "h_closed_forms",
    "hermite_column_form",
    "homology_of",
    "infer_k",
    "intersection_form",
    "intersection_number",
    "is_unimodular",
    "j_matrix",
    "kernel_basis",
    "l_lattice",
    "l_partial_lattice",
    "lattice_intersect",
    "lattice_sum",
    "linking_matrix_y",
    "linking_matrix_z",
    "orthogonal_complement",
    "phi",
    "q_matrix",
    "quotient_presentation",
    "r_matrix",
    "require_valid",
    "s_matrix",
    "snf",
    "solve_integer",
    "solve_mod2",
    "spin_y",
    "spin_z",
    "to_relative",
    "validate",
    "validate_matrices",
    "w2_y",
    "w2_z",
]
