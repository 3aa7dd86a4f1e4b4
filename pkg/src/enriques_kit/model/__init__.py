"""Horikawa model space: branch polynomials, torus sign certificates,
singular loci and certified paths."""

from .germs import SingularityType, classify_germ
from .milnor import milnor_number
from .polynomial import (
    BranchPolynomial,
    ValidationError,
    center_polynomial,
    corners_nonzero,
    format_polynomial,
    monomials,
    normalize,
    validate,
)
from .singular import SingularityReport, classify_locus, classify_singularity, singular_locus
from .space import (
    M0Certificate,
    M0Failure,
    OppositeSigns,
    PathCertificate,
    connect_path,
    is_in_M0,
    sample_M0,
)
from .torus import (
    BudgetExhausted,
    HasZero,
    TorusCertificate,
    audit_certificate,
    certify_sign,
    exposition_sign,
    torus_restriction,
)

__all__ = [
    "BranchPolynomial",
    "BudgetExhausted",
    "HasZero",
    "M0Certificate",
    "M0Failure",
    "OppositeSigns",
    "PathCertificate",
    "SingularityReport",
    "SingularityType",
    "TorusCertificate",
    "ValidationError",
    "audit_certificate",
    "center_polynomial",
    "certify_sign",
    "classify_germ",
    "classify_locus",
    "classify_singularity",
    "connect_path",
    "corners_nonzero",
    "exposition_sign",
    "format_polynomial",
    "is_in_M0",
    "milnor_number",
    "monomials",
    "normalize",
    "sample_M0",
    "singular_locus",
    "torus_restriction",
    "validate",
]
