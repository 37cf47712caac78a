"""Exact U-invariants of matrix tuples under unitriangular conjugation."""
from .action import (
    UnitriangularMatrix,
    adjoint_tuple,
    check_elementary_action,
    elementary_unipotent,
    group_inverse,
    random_unitriangular,
)
from .canonical import (
    GenericityError,
    GenericityReport,
    SectionTuple,
    anti_triangular_signs,
    bring_to_section,
    find_conjugator,
    is_section_shape,
    reconstruct_section_single,
    recover_cross_minors,
)
from .invariants import (
    GeneratorLabel,
    InvariantVector,
    enumerate_generators,
    evaluate_invariants,
    p_pair,
    p_single,
)
from .linalg import Matrix, MatrixTuple, corner_D, determinant, index_prime, minor_M, minor_N
from .scalars import DEFAULT_PRIME, Dual, FieldSpec, ModP, ParseError, dual_lift, parse_scalar

__version__ = "0.1.0"
