"""Bloch decomposition of qubit-qudit (2 x n) states and their exact Hilbert-Schmidt discord.

Conventions
-----------
Pauli matrices ``sigma = (X, Y, Z)`` act on A. On B we use the generalized
Gell-Mann matrices, normalized ``tr(beta_i beta_j) = 2 delta_ij``, in this
fixed order:

1. symmetric ``E_jk + E_kj`` for ``j < k`` (row-major over pairs),
2. antisymmetric ``-i E_jk + i E_kj`` for ``j < k`` (same pair order),
3. diagonal ``sqrt(2 / (l (l + 1))) (sum_{a<l} E_aa - l E_ll)`` for ``l = 1..n-1``.

For ``n = 2`` this is exactly ``(X, Y, Z)``.

All three Bloch quantities are expectation values,
``x_i = tr(rho sigma_i (x) I)``, ``y_j = tr(rho I (x) beta_j)``,
``T_ij = tr(rho sigma_i (x) beta_j)``, so that

    rho = (I (x) I + x.sigma (x) I + (n/2) I (x) y.beta + (n/2) sum T_ij sigma_i (x) beta_j) / (2 n).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import NotQubitA
from .linalg import DensityMatrix, eig_hermitian

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


@lru_cache(maxsize=None)
def _gell_mann_cached(n: int) -> np.ndarray:
    mats = []
    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for j, k in pairs:
        E = np.zeros((n, n), dtype=complex)
        E[j, k] = E[k, j] = 1
        mats.append(E)
    for j, k in pairs:
        E = np.zeros((n, n), dtype=complex)
        E[j, k] = -1j
        E[k, j] = 1j
        mats.append(E)
    for l in range(1, n):
        E = np.zeros((n, n), dtype=complex)
        E[np.arange(l), np.arange(l)] = 1
        E[l, l] = -l
        mats.append(E * np.sqrt(2 / (l * (l + 1))))
    out = np.array(mats).reshape(n * n - 1, n, n)
    out.flags.writeable = False
    return out


def gell_mann_basis(n: int) -> np.ndarray:
    """The ``n^2 - 1`` generalized Gell-Mann matrices, shape ``(n^2 - 1, n, n)``."""
    return _gell_mann_cached(int(n))


def gell_mann_coefficients(R: np.ndarray) -> np.ndarray:
    """``tr(R beta_j)`` for every basis element, without forming the basis.

    `R` may carry leading batch axes.
    """
    R = np.asarray(R)
    n = R.shape[-1]
    j, k = np.triu_indices(n, 1)
    sym = R[..., k, j] + R[..., j, k]
    asym = 1j * (R[..., j, k] - R[..., k, j])
    diag = np.diagonal(R, axis1=-2, axis2=-1)
    l = np.arange(1, n)
    cums = np.cumsum(diag, axis=-1)[..., :-1]  # sum_{a<l} R_aa
    dg = np.sqrt(2 / (l * (l + 1))) * (cums - l * diag[..., 1:])
    return np.concatenate([sym, asym, dg], axis=-1)


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors and correlation matrix of a 2 x n state."""

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray

    @property
    def n(self) -> int:
        return int(round(np.sqrt(self.y.shape[0] + 1)))


def decompose_2xn(rho: DensityMatrix) -> BlochForm:
    if rho.m != 2:
        raise NotQubitA(f"Bloch decomposition needs a qubit on A, got dims {rho.dims}")
    blk = rho.blocks()  # blk[a, :, b, :] = <a|rho|b>
    # R_i = tr_A[(sigma_i (x) I) rho] = sum_ab sigma_i[b, a] rho_ab
    R = np.einsum("sba,aibj->sij", PAULI, blk)
    x = np.real(np.einsum("sii->s", R))
    T = np.real(gell_mann_coefficients(R))
    y = np.real(gell_mann_coefficients(blk[0, :, 0, :] + blk[1, :, 1, :]))
    return BlochForm(x, y, T)


def reconstruct(form: BlochForm) -> np.ndarray:
    """Inverse of :func:`decompose_2xn`, as a ``2n x 2n`` matrix."""
    n = form.n
    beta = gell_mann_basis(n)
    I2, In = np.eye(2), np.eye(n)
    rho = np.kron(I2, In).astype(complex)
    rho += np.kron(np.einsum("i,ijk->jk", form.x, PAULI), In)
    rho += (n / 2) * np.kron(I2, np.einsum("j,jab->ab", form.y, beta))
    rho += (n / 2) * np.einsum("ij,ipq,jab->paqb", form.T, PAULI, beta).reshape(2 * n, 2 * n)
    return rho / (2 * n)


def gd2_closed_form(rho: DensityMatrix) -> float:
    """Exact (unnormalized) Hilbert-Schmidt geometric discord of a 2 x n state.

    With ``G = x x^T / (2n) + T T^T / 4`` the minimum over measurements on the
    qubit is ``tr(G) - lambda_max(G)``. For two qubits this reduces to
    ``(|x|^2 + |T|_F^2 - lambda_max(x x^T + T T^T)) / 4``.
    """
    if rho.m != 2:
        raise NotQubitA(f"closed-form discord needs a qubit on A, got dims {rho.dims}")
    b = decompose_2xn(rho)
    n = rho.n
    G = np.outer(b.x, b.x) / (2 * n) + b.T @ b.T.T / 4
    lam_max = eig_hermitian(G).eigenvalues[0]
    return max(float(np.trace(G) - lam_max), 0.0)
