"""APSS splitting solvers for singular three-by-three saddle point systems."""

from ._core import (
    Error,
    SaddleSystem,
    SparseMatrix,
    apply_preconditioner,
    apss_iterate,
    certify,
    estimate_alpha,
    fgmres,
    from_dense,
    gen_kron_example,
    gen_random_singular,
    iteration_matrix,
    load_system,
    preconditioned_spectrum,
    psi,
    residual_norm,
    rhs_for_ones,
    save_system,
    scale_system,
)

__all__ = [
    "Error",
    "SaddleSystem",
    "SparseMatrix",
    "apply_preconditioner",
    "apss_iterate",
    "certify",
    "estimate_alpha",
    "fgmres",
    "from_dense",
    "gen_kron_example",
    "gen_random_singular",
    "iteration_matrix",
    "load_system",
    "preconditioned_spectrum",
    "psi",
    "residual_norm",
    "rhs_for_ones",
    "save_system",
    "scale_system",
]
