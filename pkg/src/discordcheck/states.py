"""Constructors for the state families used in the hierarchy checks."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import BadProbabilities, BadRank, BlockDimensionMismatch, InvalidDim, InvalidZ
from .linalg import DensityMatrix, tensor


@dataclass(frozen=True)
class WernerParams:
    m: int
    z: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise InvalidDim(f"Werner local dimension must be an integer >= 2, got {self.m}")
        if not -1.0 <= self.z <= 1.0:
            raise InvalidZ(f"Werner parameter z must lie in [-1, 1], got {self.z}")


def swap_operator(m: int) -> np.ndarray:
    """``F = sum_kl |k l><l k|`` on ``C^m (x) C^m``."""
    F = np.zeros((m * m, m * m))
    k, l = np.divmod(np.arange(m * m), m)
    F[k * m + l, l * m + k] = 1.0
    return F


def werner(m: int, z: float) -> DensityMatrix:
    """``((m - z) I + (m z - 1) F) / (m^3 - m)``; `z` is the expectation of the swap."""
    p = WernerParams(m, z)
    d = p.m * p.m
    rho = ((p.m - p.z) * np.eye(d) + (p.m * p.z - 1) * swap_operator(p.m)) / (p.m**3 - p.m)
    return DensityMatrix(rho, (p.m, p.m))


def max_entangled(m: int) -> DensityMatrix:
    """``|Phi><Phi|`` with ``|Phi> = sum_k |k k> / sqrt(m)``."""
    if int(m) != m or m < 2:
        raise InvalidDim(f"dimension must be an integer >= 2, got {m}")
    phi = np.zeros(m * m)
    phi[np.arange(m) * (m + 1)] = 1 / np.sqrt(m)
    return DensityMatrix(np.outer(phi, phi), (m, m))


def cq_state(probs, blocks) -> DensityMatrix:
    """Classical-quantum state ``sum_i p_i |i><i| (x) rho_i``."""
    probs = np.asarray(probs, dtype=float)
    if probs.ndim != 1 or np.any(probs < 0) or abs(probs.sum() - 1) > 1e-12:
        raise BadProbabilities(f"probabilities must be non-negative and sum to 1, got {probs}")
    if len(blocks) != len(probs):
        raise BlockDimensionMismatch(f"{len(probs)} probabilities but {len(blocks)} blocks")
    blocks = [np.asarray(b, dtype=complex) for b in blocks]
    n = blocks[0].shape[0]
    m = len(probs)
    out = np.zeros((m * n, m * n), dtype=complex)
    for i, (p, b) in enumerate(zip(probs, blocks)):
        if b.shape != (n, n):
            raise BlockDimensionMismatch(f"block {i} has shape {b.shape}, expected {(n, n)}")
        DensityMatrix(b, (1, n))  # validates each conditional state
        proj = np.zeros((m, m))
        proj[i, i] = 1.0
        out += p * tensor(proj, b)
    return DensityMatrix(out, (m, n))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def random_density(dim: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Induced (Hilbert-Schmidt) random state ``G G^dagger / tr(G G^dagger)``.

    `G` is ``dim x rank`` with i.i.d. standard complex Gaussian entries drawn
    from ``numpy.random.default_rng(seed)`` (PCG64). `seed` may also be an
    existing ``Generator``, which is then advanced.
    """
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise BadRank(f"rank must lie in [1, {dim}], got {rank}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    G = _ginibre(rng, dim, rank)
    rho = G @ G.conj().T
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real


def random_state(dims, rank: int | None = None, seed=None) -> DensityMatrix:
    """:func:`random_density` wrapped with a bipartition."""
    m, n = dims
    return DensityMatrix(random_density(m * n, rank, seed), (m, n))


def random_pure_product(dims, seed=None) -> DensityMatrix:
    """Random ``|a><a| (x) |b><b|`` with Gaussian-normalized local vectors."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    m, n = dims
    a = _ginibre(rng, m, 1)[:, 0]
    b = _ginibre(rng, n, 1)[:, 0]
    psi = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
    return DensityMatrix(np.outer(psi, psi.conj()), (m, n))


def random_unitary(d: int, seed=None) -> np.ndarray:
    """Haar-random unitary (QR of a Ginibre matrix with phase correction)."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Q, R = np.linalg.qr(_ginibre(rng, d, d))
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph
