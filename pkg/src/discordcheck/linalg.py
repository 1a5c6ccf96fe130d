"""Dense complex matrix primitives for bipartite states.

Index convention everywhere: the computational product basis
``|i>_A (x) |j>_B`` sits at row/column ``i * n + j`` for an ``m x n`` split.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .exceptions import (
    BadTrace,
    DimensionMismatch,
    IncompleteBasis,
    InvalidDim,
    InvalidOrder,
    NonSquare,
    NotHermitian,
    NotPSD,
)

HERM_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
# Eigenvalues with |lambda| below this are zero for negativity sums and counts.
ZERO_TOL = 1e-10
BASIS_TOL = 1e-10


def hermitian_asymmetry(X: np.ndarray) -> float:
    """Largest entry of ``|X - X^dagger|``."""
    X = np.asarray(X)
    if X.size == 0:
        return 0.0
    return float(np.max(np.abs(X - X.conj().T)))


def _check_square(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {X.shape}")
    return X


def symmetrize(X: np.ndarray, tol: float = HERM_TOL) -> np.ndarray:
    """Return ``(X + X^dagger) / 2``, rejecting inputs further than `tol` from Hermitian."""
    X = _check_square(X)
    asym = hermitian_asymmetry(X)
    if asym > tol:
        raise NotHermitian(asym, tol)
    return (X + X.conj().T) / 2


class Spectrum(NamedTuple):
    """Eigenvalues sorted descending with matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eig_hermitian(X: np.ndarray, tol: float = HERM_TOL) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues in descending order.

    LAPACK ``heevd`` via :func:`numpy.linalg.eigh`; deterministic for fixed input.
    """
    H = symmetrize(X, tol)
    w, v = np.linalg.eigh(H)
    return Spectrum(w[::-1].copy(), v[:, ::-1].copy())


def eigvals_hermitian(X: np.ndarray, tol: float = HERM_TOL) -> np.ndarray:
    """Eigenvalues only, descending."""
    return np.linalg.eigvalsh(symmetrize(X, tol))[::-1]


def schatten_norm(X: np.ndarray, p: float = 1) -> float:
    """Schatten p-norm ``(sum |lambda_i|^p)^(1/p)`` of a Hermitian matrix.

    ``p=1`` is the trace norm, ``p=2`` the Hilbert-Schmidt norm and
    ``p=np.inf`` the operator norm.
    """
    if not p >= 1:
        raise InvalidOrder(f"Schatten norm order must be >= 1, got {p}")
    if p == 2:
        # Frobenius norm; skips the eigensolver.
        return float(np.linalg.norm(symmetrize(X)))
    lam = np.abs(eigvals_hermitian(X))
    if p == np.inf:
        return float(lam.max(initial=0.0))
    return float(np.sum(lam**p) ** (1.0 / p))


def _check_dims(dims, size: int) -> tuple[int, int]:
    try:
        m, n = (int(d) for d in dims)
    except (TypeError, ValueError):
        raise InvalidDim(f"dims must be a pair of integers, got {dims!r}") from None
    if m < 1 or n < 1:
        raise InvalidDim(f"subsystem dimensions must be positive, got {(m, n)}")
    if m * n != size:
        raise DimensionMismatch(f"dims {(m, n)} do not match a {size}x{size} matrix")
    return m, n


@dataclass(frozen=True)
class DensityMatrix:
    """Unit-trace PSD Hermitian matrix with a declared ``m x n`` bipartition.

    The stored matrix is symmetrized on construction and made read-only.
    """

    matrix: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        X = _check_square(np.array(self.matrix, dtype=complex))
        dims = _check_dims(self.dims, X.shape[0])
        X = symmetrize(X)
        tr = np.trace(X).real
        if abs(tr - 1) > TRACE_TOL:
            raise BadTrace(float(tr), TRACE_TOL)
        lam_min = float(np.linalg.eigvalsh(X)[0])
        if lam_min < -PSD_TOL:
            raise NotPSD(lam_min, PSD_TOL)
        X.flags.writeable = False
        object.__setattr__(self, "matrix", X)
        object.__setattr__(self, "dims", dims)

    @property
    def m(self) -> int:
        return self.dims[0]

    @property
    def n(self) -> int:
        return self.dims[1]

    @property
    def dim(self) -> int:
        return self.dims[0] * self.dims[1]

    def blocks(self) -> np.ndarray:
        """View as ``blocks[a, :, b, :] = <a|_A rho |b>_A``."""
        return self.matrix.reshape(self.m, self.n, self.m, self.n)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def _unpack(rho, dims=None) -> tuple[np.ndarray, tuple[int, int]]:
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.dims if dims is None else _check_dims(dims, rho.dim)
    X = _check_square(rho)
    if dims is None:
        raise InvalidDim("dims are required when passing a bare array")
    return X, _check_dims(dims, X.shape[0])


def partial_transpose(rho, dims=None) -> np.ndarray:
    """Transpose on the A index: ``<i j|out|k l> = <k j|rho|i l>``.

    Accepts a :class:`DensityMatrix` or any square array with explicit `dims`.
    """
    X, (m, n) = _unpack(rho, dims)
    return X.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


def partial_trace(rho, trace_out: str = "B", dims=None) -> np.ndarray:
    """Reduced state after tracing out subsystem ``"A"`` or ``"B"``."""
    X, (m, n) = _unpack(rho, dims)
    T = X.reshape(m, n, m, n)
    if trace_out == "B":
        return np.einsum("ajbj->ab", T)
    if trace_out == "A":
        return np.einsum("iaib->ab", T)
    raise ValueError(f"trace_out must be 'A' or 'B', got {trace_out!r}")


def tensor(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Kronecker product, ``X`` on the leading (A) index."""
    return np.kron(np.asarray(X), np.asarray(Y))


def repartition(rho: DensityMatrix, new_dims) -> DensityMatrix:
    """Same matrix entries, different declared bipartition."""
    m2, n2 = _check_dims(new_dims, rho.dim)
    if (m2, n2) == rho.dims:
        return rho
    return DensityMatrix(rho.matrix, (m2, n2))


@dataclass(frozen=True)
class MeasurementBasis:
    """Complete rank-1 projective measurement on A, stored as orthonormal columns."""

    vectors: np.ndarray

    def __post_init__(self):
        U = np.array(self.vectors, dtype=complex)
        if U.ndim != 2 or U.shape[0] != U.shape[1]:
            raise IncompleteBasis(f"need m orthonormal vectors in C^m, got array of shape {U.shape}")
        err = float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))
        if err > BASIS_TOL:
            raise IncompleteBasis(f"projectors do not sum to identity: Gram deviation {err:.3e}")
        U.flags.writeable = False
        object.__setattr__(self, "vectors", U)

    @classmethod
    def computational(cls, m: int) -> "MeasurementBasis":
        return cls(np.eye(m))

    @property
    def m(self) -> int:
        return self.vectors.shape[0]

    def projectors(self) -> list[np.ndarray]:
        return [np.outer(u, u.conj()) for u in self.vectors.T]


def measured_blocks(blocks: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Conditional operators ``<u_k|rho|u_k>_A`` for each column ``u_k`` of `U`.

    `blocks` is ``rho`` reshaped to ``(m, n, m, n)``. A leading batch axis on
    `U` (shape ``(..., m, m)``) is broadcast.
    """
    return np.einsum("...ak,...bk,aibj->...kij", U.conj(), U, blocks)


def assemble_cq(U: np.ndarray, cond: np.ndarray) -> np.ndarray:
    """``sum_k |u_k><u_k| (x) cond[k]`` as a dense matrix."""
    m, n = U.shape[0], cond.shape[-1]
    out = np.einsum("ak,bk,kij->aibj", U, U.conj(), cond)
    return out.reshape(m * n, m * n)


def dephase_A(rho: DensityMatrix, basis: MeasurementBasis | None = None) -> DensityMatrix:
    """Apply ``sum_k (P_k (x) I) rho (P_k (x) I)``; the result is classical-quantum."""
    if basis is None:
        basis = MeasurementBasis.computational(rho.m)
    if basis.m != rho.m:
        raise IncompleteBasis(f"basis acts on C^{basis.m} but subsystem A has dimension {rho.m}")
    U = basis.vectors
    cond = measured_blocks(rho.blocks(), U)
    return DensityMatrix(assemble_cq(U, cond), rho.dims)
