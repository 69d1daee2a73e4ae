"""Commutator-degree and exact images of multilinear polynomials on UT_n(Q)."""

__version__ = "0.1.0"

from .degree import (
    DegreeReport,
    OracleDegree,
    Profile,
    beta,
    commutator_degree,
    commutator_degree_oracle,
    enumerate_profiles,
    is_identity_bruteforce,
    member_S,
    witness_evaluation,
)
from .errors import (
    ArityMismatch,
    CostLimit,
    DomainError,
    EmptyPolynomial,
    IndexOutOfRange,
    InternalVerificationFailure,
    InvalidProfile,
    InvalidWitness,
    NotMultilinear,
    PolySyntaxError,
    RetriesExhausted,
    SizeMismatch,
    TargetOutsideImage,
    UtpolyError,
    ZeroPolynomial,
)
from .freealg import (
    MultilinearPoly,
    Permutation,
    coefficient_sum,
    commutator_product,
    format_poly,
    standard_poly,
)
from .parsing import parse
from .solver import (
    DeltaTable,
    GenericAssignment,
    ImageCertificationReport,
    PreimageCertificate,
    build_assignment,
    certify_image,
    delta_table,
    solve_preimage,
)
from .triangular import (
    MatrixUnit,
    UTMatrix,
    add,
    enumerate_units,
    evaluate,
    matrix_from_json,
    matrix_to_json,
    mul,
    radical_power_member,
    scale,
    unit,
)

__all__ = [
    "ArityMismatch",
    "CostLimit",
    "DegreeReport",
    "DeltaTable",
    "DomainError",
    "EmptyPolynomial",
    "GenericAssignment",
    "ImageCertificationReport",
    "IndexOutOfRange",
    "InternalVerificationFailure",
    "InvalidProfile",
    "InvalidWitness",
    "MatrixUnit",
    "MultilinearPoly",
    "NotMultilinear",
    "OracleDegree",
    "Permutation",
    "PolySyntaxError",
    "PreimageCertificate",
    "Profile",
    "RetriesExhausted",
    "SizeMismatch",
    "TargetOutsideImage",
    "UTMatrix",
    "UtpolyError",
    "ZeroPolynomial",
    "add",
    "beta",
    "build_assignment",
    "certify_image",
    "coefficient_sum",
    "commutator_degree",
    "commutator_degree_oracle",
    "commutator_product",
    "delta_table",
    "enumerate_profiles",
    "enumerate_units",
    "evaluate",
    "format_poly",
    "is_identity_bruteforce",
    "matrix_from_json",
    "matrix_to_json",
    "member_S",
    "parse",
    "mul",
    "radical_power_member",
    "scale",
    "solve_preimage",
    "standard_poly",
    "unit",
    "witness_evaluation",
]
