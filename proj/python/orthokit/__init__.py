"""Orthogonal factorizations, SVD and least squares."""

from ._core import (
    ConvergenceError,
    DimensionError,
    Error,
    InvalidArgument,
    NotPositiveDefiniteError,
    RankDeficientError,
    SingularMatrixError,
    cond2,
    jacobi_eig,
    low_rank,
    lstsq,
    norm2,
    numerical_rank,
    pca,
    pinv,
    projector,
    qr,
    svd,
)

__all__ = [
    "ConvergenceError",
    "DimensionError",
    "Error",
    "InvalidArgument",
    "NotPositiveDefiniteError",
    "RankDeficientError",
    "SingularMatrixError",
    "cond2",
    "jacobi_eig",
    "low_rank",
    "lstsq",
    "norm2",
    "numerical_rank",
    "pca",
    "pinv",
    "projector",
    "qr",
    "svd",
]
