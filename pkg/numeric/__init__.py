from numeric.linalg import (
    CMatrix,
    EigenDecomposition,
    adjoint,
    as_cmatrix,
    cluster_spectrum,
    frobenius,
    hermitian_eig,
    hs_inner,
    is_hermitian,
    kron,
    nullspace,
    orthonormalize,
    partial_trace,
    project_coefficients,
    purify,
)
from numeric.sampling import (
    random_density,
    random_hermitian,
    random_unit_vector,
    random_unitary,
    seeded_rng,
)

__all__ = [
    "CMatrix",
    "EigenDecomposition",
    "adjoint",
    "as_cmatrix",
    "cluster_spectrum",
    "frobenius",
    "hermitian_eig",
    "hs_inner",
    "is_hermitian",
    "kron",
    "nullspace",
    "orthonormalize",
    "partial_trace",
    "project_coefficients",
    "purify",
    "random_density",
    "random_hermitian",
    "random_unit_vector",
    "random_unitary",
    "seeded_rng",
]
